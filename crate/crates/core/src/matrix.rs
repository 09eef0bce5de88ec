//! Dense integer matrices over `BigInt` and the normal forms built on them.
//!
//! Vectors are columns throughout: a basis of a sublattice is stored as the
//! columns of an `n x k` matrix, and a Gram matrix transforms as `Bᵀ G B`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Ragged);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        IntMatrix {
            rows: rows.len(),
            cols: C,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Result<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Ragged);
        }
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn column_vector(v: &[BigInt]) -> Self {
        IntMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ M y` for a square matrix.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        x.iter().zip(self.mul_vec(y)).map(|(a, b)| a * b).sum()
    }

    /// Columns `range` as a new matrix.
    pub fn select_columns(&self, idx: impl IntoIterator<Item = usize>) -> Self {
        let cols: Vec<Vec<BigInt>> = idx.into_iter().map(|j| self.column(j)).collect();
        let mut m = Self::from_columns(&cols).expect("columns share a length");
        if cols.is_empty() {
            m.rows = self.rows;
        }
        m
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> Self {
        let rows: Vec<Vec<BigInt>> = idx.into_iter().map(|i| self.row(i).to_vec()).collect();
        let n = rows.len();
        let mut m = Self::from_rows(rows).expect("rows share a length");
        if n == 0 {
            m.cols = self.cols;
        }
        m
    }

    pub fn block_diagonal(blocks: &[&IntMatrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// `Bᵀ M B`.
    pub fn congruence(&self, b: &IntMatrix) -> IntMatrix {
        &(&b.transpose() * self) * b
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * k;
            self[(dst, j)] += t;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * k;
            self[(i, dst)] += t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }

    /// Replaces rows `(a, b)` by `(x·a + y·b, u·a + v·b)`.
    fn combine_rows(&mut self, a: usize, b: usize, coeffs: [&BigInt; 4]) {
        let [x, y, u, v] = coeffs;
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = u * &ra + v * &rb;
        }
    }

    /// Replaces columns `(a, b)` by `(x·a + y·b, u·a + v·b)`.
    fn combine_cols(&mut self, a: usize, b: usize, coeffs: [&BigInt; 4]) {
        let [x, y, u, v] = coeffs;
        for i in 0..self.rows {
            let ca = self[(i, a)].clone();
            let cb = self[(i, b)].clone();
            self[(i, a)] = x * &ca + y * &cb;
            self[(i, b)] = u * &ca + v * &cb;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut m = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Extended gcd returning `(g, x, y)` with `x·a + y·b = g >= 0`.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// Zero rows are dropped; pivots are positive and entries above each pivot lie
/// in `[0, pivot)`, so the result is a canonical basis of the row lattice.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (k, n) = (a.rows, a.cols);
    let mut r = 0;
    for col in 0..n {
        if r == k {
            break;
        }
        for i in r + 1..k {
            if a[(i, col)].is_zero() {
                continue;
            }
            let p = a[(r, col)].clone();
            let q = a[(i, col)].clone();
            let (g, x, y) = xgcd(&p, &q);
            let u = -(&q / &g);
            let v = &p / &g;
            a.combine_rows(r, i, [&x, &y, &u, &v]);
        }
        if a[(r, col)].is_zero() {
            continue;
        }
        if a[(r, col)].is_negative() {
            a.negate_row(r);
        }
        let pivot = a[(r, col)].clone();
        for i in 0..r {
            let q = a[(i, col)].div_floor(&pivot);
            a.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    a.select_rows(0..r)
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `m`.
pub fn hermite_columns(m: &IntMatrix) -> IntMatrix {
    let h = hermite_rows(&m.transpose()).transpose();
    if h.ncols() == 0 {
        IntMatrix::zeros(m.nrows(), 0)
    } else {
        h
    }
}

/// Basis (as columns) of `{x ∈ Zⁿ : A x = 0}`, canonicalized by Hermite form.
///
/// The kernel of an integer matrix is always saturated, so the returned basis
/// spans a primitive sublattice of `Zⁿ`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut v = IntMatrix::identity(n);
    let mut p = 0;
    for i in 0..m {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let ap = h[(i, p)].clone();
            let aj = h[(i, j)].clone();
            let (g, x, y) = xgcd(&ap, &aj);
            let u = -(&aj / &g);
            let w = &ap / &g;
            h.combine_cols(p, j, [&x, &y, &u, &w]);
            v.combine_cols(p, j, [&x, &y, &u, &w]);
        }
        if !h[(i, p)].is_zero() {
            p += 1;
        }
    }
    hermite_columns(&v.select_columns(p..n))
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₀, d₁, …` including trailing zeros and leading ones.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

struct SmithState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithState {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Moves the smallest nonzero entry of row `t` / column `t` to `(t, t)`.
    fn repivot(&mut self, t: usize) {
        let (r, c) = (self.a.rows, self.a.cols);
        let mut best: Option<(BigInt, usize, bool)> = None;
        for i in t..r {
            let x = self.a[(i, t)].abs();
            if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.0) {
                best = Some((x, i, true));
            }
        }
        for j in t + 1..c {
            let x = self.a[(t, j)].abs();
            if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.0) {
                best = Some((x, j, false));
            }
        }
        if let Some((_, idx, is_row)) = best {
            if is_row {
                self.swap_rows(t, idx);
            } else {
                self.swap_cols(t, idx);
            }
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut s = SmithState {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    for t in 0..r.min(c) {
        let mut pivot: Option<(BigInt, usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = s.a[(i, j)].abs();
                if !x.is_zero() && pivot.as_ref().is_none_or(|p| x < p.0) {
                    pivot = Some((x, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if s.a[(i, t)].is_zero() {
                    continue;
                }
                let q = s.a[(i, t)].div_floor(&s.a[(t, t)]);
                s.row_add(i, t, &-q);
                clean &= s.a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if s.a[(t, j)].is_zero() {
                    continue;
                }
                let q = s.a[(t, j)].div_floor(&s.a[(t, t)]);
                s.col_add(j, t, &-q);
                clean &= s.a[(t, j)].is_zero();
            }
            if !clean {
                s.repivot(t);
                continue;
            }
            let p = s.a[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => s.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if s.a[(t, t)].is_negative() {
            s.negate_row(t);
        }
    }
    SmithForm {
        u: s.u,
        u_inv: s.u_inv,
        d: s.a,
        v: s.v,
        v_inv: s.v_inv,
    }
}

/// Integer left inverse `L` (`L · B = I`) of a primitive `n x k` basis matrix.
pub fn primitive_left_inverse(b: &IntMatrix) -> Result<IntMatrix> {
    let k = b.ncols();
    let snf = smith_normal_form(b);
    if snf.diagonal().iter().any(|x| !x.is_one()) || snf.diagonal().len() < k {
        return Err(Error::NotPrimitive);
    }
    Ok(&snf.v * &snf.u.select_rows(0..k))
}

/// Solves `B c = x` for integer `c`, given a left inverse of `B`.
pub fn solve_with_left_inverse(b: &IntMatrix, left: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = left.mul_vec(x);
    (b.mul_vec(&c) == x).then_some(c)
}

/// How a primitive vector is completed to a unimodular basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Completion {
    /// Pairwise extended-gcd reduction of the vector to `e₁`.
    #[default]
    Hermite,
    /// Smith normal form of the vector viewed as a column.
    Smith,
}

/// Unimodular matrix whose first column is the primitive vector `c`.
pub fn complete_to_basis(c: &[BigInt], strategy: Completion) -> Result<IntMatrix> {
    let n = c.len();
    if n == 0 {
        return Err(Error::NotPrimitive);
    }
    match strategy {
        Completion::Hermite => {
            // Row operations W with W c = e₁; W⁻¹ is tracked alongside.
            let mut x = IntMatrix::column_vector(c);
            let mut w_inv = IntMatrix::identity(n);
            for i in 1..n {
                if x[(i, 0)].is_zero() {
                    continue;
                }
                let p = x[(0, 0)].clone();
                let q = x[(i, 0)].clone();
                let (g, a, b) = xgcd(&p, &q);
                let u = -(&q / &g);
                let v = &p / &g;
                x.combine_rows(0, i, [&a, &b, &u, &v]);
                // inverse of [[a, b], [u, v]] (det 1) is [[v, -b], [-u, a]]
                let (nb, nu) = (-&b, -&u);
                w_inv.combine_cols(0, i, [&v, &nu, &nb, &a]);
            }
            if x[(0, 0)].is_negative() {
                x.negate_row(0);
                w_inv.negate_col(0);
            }
            if !x[(0, 0)].is_one() {
                return Err(Error::NotPrimitive);
            }
            Ok(w_inv)
        }
        Completion::Smith => {
            let snf = smith_normal_form(&IntMatrix::column_vector(c));
            if !snf.d[(0, 0)].is_one() {
                return Err(Error::NotPrimitive);
            }
            let mut basis = snf.u_inv;
            if snf.v[(0, 0)].is_negative() {
                basis.negate_col(0);
            }
            Ok(basis)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m<const C: usize>(rows: &[[i64; C]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_smith(a: &IntMatrix) -> Vec<BigInt> {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.nrows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.ncols()));
        for i in 0..s.d.nrows() {
            for j in 0..s.d.ncols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        diag
    }

    #[test]
    fn smith_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(check_smith(&m(&[[2, 0], [0, 2]])), vec![b(2), b(2)]);
        assert_eq!(check_smith(&m(&[[2, 3], [3, 0]])), vec![b(1), b(9)]);
        assert_eq!(check_smith(&m(&[[12]])), vec![b(12)]);
        assert_eq!(check_smith(&m(&[[4, 6], [6, 4]])), vec![b(2), b(10)]);
        assert_eq!(check_smith(&m(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]])), vec![b(2), b(6), b(12)]);
        check_smith(&m(&[[0, 0, 0], [0, 0, 0]]));
        check_smith(&m(&[[1, 2, 3], [4, 5, 6]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[[0, 1], [1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(m(&[[2, 3], [3, 0]]).determinant(), BigInt::from(-9));
        assert_eq!(m(&[[0, 1, 2], [1, 0, 3], [4, -3, 8]]).determinant(), BigInt::from(-2));
        assert_eq!(m(&[[1, 2], [2, 4]]).determinant(), BigInt::zero());
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = m(&[[2, 4, 6], [1, 1, 1]]);
        let b = m(&[[3, 5, 7], [1, 1, 1]]); // same row lattice: row0 + row1
        assert_eq!(hermite_rows(&a), hermite_rows(&b));
        let h = hermite_rows(&m(&[[4, 6], [2, 2], [6, 8]]));
        assert_eq!(h, m(&[[2, 0], [0, 2]]));
    }

    #[test]
    fn kernel_of_pairing() {
        let a = m(&[[1, 1, 0, 0], [0, 0, 0, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.ncols(), 2);
        assert!((&a * &k).columns().iter().flatten().all(Zero::is_zero));
        let k2 = integer_kernel(&m(&[[2, 4]]));
        assert_eq!(k2, m(&[[2], [-1]]));
    }

    #[test]
    fn completion_strategies() {
        let c: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        for s in [Completion::Hermite, Completion::Smith] {
            let w = complete_to_basis(&c, s).unwrap();
            assert_eq!(w.column(0), c);
            assert!(w.determinant().abs().is_one());
        }
        let bad: Vec<BigInt> = [2, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert!(complete_to_basis(&bad, Completion::Hermite).is_err());
        assert!(complete_to_basis(&bad, Completion::Smith).is_err());
    }

    #[test]
    fn left_inverse() {
        let b = m(&[[1, 0], [3, 5], [0, 1], [0, 0]]);
        let l = primitive_left_inverse(&b).unwrap();
        assert_eq!(&l * &b, IntMatrix::identity(2));
        assert!(primitive_left_inverse(&m(&[[2], [0]])).is_err());
    }
}
