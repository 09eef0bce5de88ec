//! Integral lattices given by exact symmetric Gram matrices, and sublattices
//! embedded in them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::matrix::{
    complete_to_basis, hermite_columns, integer_kernel, primitive_left_inverse, smith_normal_form,
    solve_with_left_inverse, Completion, IntMatrix,
};

/// Counts of positive and negative eigenvalues of the real form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize) -> Self {
        Signature { plus, minus }
    }

    pub fn swapped(self) -> Self {
        Signature::new(self.minus, self.plus)
    }

    pub fn is_indefinite(self) -> bool {
        self.plus > 0 && self.minus > 0
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::new(self.plus + o.plus, self.minus + o.minus)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

/// A non-degenerate integral lattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: IntMatrix,
}

impl Lattice {
    /// Validates a Gram matrix: square, symmetric and non-degenerate.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.nrows(),
                cols: gram.ncols(),
            });
        }
        if gram.nrows() == 0 {
            return Err(Error::InvalidArgument("lattice of rank 0".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.determinant().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64_rows<const C: usize>(rows: &[[i64; C]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows))
    }

    /// The rank-one lattice `⟨n⟩`.
    pub fn rank_one(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(IntMatrix::from_rows(vec![vec![n.into()]])?)
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Lattice {
            gram: IntMatrix::from_i64_rows(&[[0, 1], [1, 0]]),
        }
    }

    /// The positive definite `E8` root lattice (Cartan matrix, Bourbaki labelling).
    pub fn e8() -> Self {
        let mut g = [[0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        Lattice {
            gram: IntMatrix::from_i64_rows(&g),
        }
    }

    /// The K3 lattice `U³ ⊕ E8(−1)²`, even unimodular of signature (3,19).
    pub fn k3() -> Self {
        let u = Self::hyperbolic_plane();
        let e = Self::e8().rescale(-1).expect("nonzero scale");
        Self::direct_sum_all(&[&u, &u, &u, &e, &e])
    }

    /// `U ⊕ U ⊕ U`, the second cohomology lattice of an abelian surface.
    pub fn abelian() -> Self {
        let u = Self::hyperbolic_plane();
        Self::direct_sum_all(&[&u, &u, &u])
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Every diagonal entry even; for integral forms this is equivalent to
    /// every vector having even square.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.pair(x, x)
    }

    /// Sylvester signature by exact symmetric elimination over `Q`.
    ///
    /// A nonzero diagonal pivot contributes its sign. When the remaining
    /// diagonal vanishes, a nonzero off-diagonal entry `c` spans a hyperbolic
    /// block `[[0,c],[c,0]]` which contributes (1,1) and is eliminated as a
    /// 2×2 pivot.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(self.gram[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut plus, mut minus) = (0, 0);
        while !active.is_empty() {
            if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
                let i = active.remove(pos);
                let p = a[i][i].clone();
                if p.is_positive() {
                    plus += 1;
                } else {
                    minus += 1;
                }
                for &k in &active {
                    let f = &a[k][i] / &p;
                    for &l in &active {
                        let t = &f * &a[i][l];
                        a[k][l] -= t;
                    }
                }
                continue;
            }
            let pair = active.iter().enumerate().find_map(|(x, &i)| {
                active[x + 1..]
                    .iter()
                    .find(|&&j| !a[i][j].is_zero())
                    .map(|&j| (i, j))
            });
            let Some((i, j)) = pair else {
                break; // zero block: only reachable for degenerate forms
            };
            plus += 1;
            minus += 1;
            active.retain(|&x| x != i && x != j);
            let c = a[i][j].clone();
            for &k in &active {
                for &l in &active {
                    let t = (&a[k][i] * &a[j][l] + &a[k][j] * &a[i][l]) / &c;
                    a[k][l] -= t;
                }
            }
        }
        Signature::new(plus, minus)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            gram: IntMatrix::block_diagonal(&[&self.gram, &other.gram]),
        }
    }

    pub fn direct_sum_all(parts: &[&Lattice]) -> Lattice {
        let blocks: Vec<&IntMatrix> = parts.iter().map(|l| &l.gram).collect();
        Lattice {
            gram: IntMatrix::block_diagonal(&blocks),
        }
    }

    /// `L(k)`: the same group with form multiplied by `k`.
    pub fn rescale(&self, k: impl Into<BigInt>) -> Result<Lattice> {
        let k = k.into();
        if k.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Lattice {
            gram: self.gram.scaled(&k),
        })
    }

    /// The sublattice spanned by the given ambient-coordinate vectors.
    pub fn sublattice(&self, basis: &[Vec<BigInt>]) -> Result<SublatticeEmbedding> {
        SublatticeEmbedding::new(self.clone(), IntMatrix::from_columns(basis)?)
    }

    /// Self-embedding with the standard basis.
    pub fn whole(&self) -> SublatticeEmbedding {
        SublatticeEmbedding {
            ambient: self.clone(),
            basis: IntMatrix::identity(self.rank()),
        }
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({})", self.gram)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

/// A sublattice given by a basis of ambient-coordinate column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeEmbedding {
    ambient: Lattice,
    basis: IntMatrix,
}

impl SublatticeEmbedding {
    pub fn new(ambient: Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.nrows() != ambient.rank() {
            return Err(Error::DimensionMismatch {
                expected: ambient.rank(),
                found: basis.nrows(),
            });
        }
        if hermite_columns(&basis).ncols() != basis.ncols() {
            return Err(Error::InvalidArgument(
                "sublattice basis vectors are linearly dependent".into(),
            ));
        }
        Ok(SublatticeEmbedding { ambient, basis })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    /// Basis vectors as columns, in ambient coordinates.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn induced_gram(&self) -> IntMatrix {
        self.ambient.gram.congruence(&self.basis)
    }

    /// The sublattice as a lattice in its own right.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.induced_gram())
    }

    /// True iff `ambient / V` is torsion-free.
    pub fn is_primitive(&self) -> bool {
        smith_normal_form(&self.basis)
            .diagonal()
            .iter()
            .all(|d| d.is_one())
    }

    /// `V^⊥ = {x : b(x, v) = 0 ∀ v ∈ V}` with a Hermite-canonical basis.
    pub fn orthogonal_complement(&self) -> SublatticeEmbedding {
        let pairing = &self.basis.transpose() * &self.ambient.gram;
        SublatticeEmbedding {
            ambient: self.ambient.clone(),
            basis: integer_kernel(&pairing),
        }
    }

    /// Hermite-canonical basis of the same sublattice.
    pub fn canonical_basis(&self) -> IntMatrix {
        hermite_columns(&self.basis)
    }

    pub fn same_sublattice(&self, other: &SublatticeEmbedding) -> bool {
        self.ambient == other.ambient && self.canonical_basis() == other.canonical_basis()
    }

    /// Coordinates of an ambient vector in this basis, if it lies in `V`.
    pub fn coordinates_of(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let saturated = self.saturation();
        let left = primitive_left_inverse(&saturated.basis)?;
        let Some(c) = solve_with_left_inverse(&saturated.basis, &left, x) else {
            return Ok(None);
        };
        // x ∈ sat(V); express in our basis over Q and check integrality.
        let to_sat = &left * &self.basis; // k x k, columns = our basis in sat coords
        let snf = smith_normal_form(&to_sat);
        let y = snf.u.mul_vec(&c);
        let mut z = Vec::with_capacity(y.len());
        for (i, yi) in y.iter().enumerate() {
            let (q, r) = yi.div_rem(&snf.d[(i, i)]);
            if !r.is_zero() {
                return Ok(None);
            }
            z.push(q);
        }
        Ok(Some(snf.v.mul_vec(&z)))
    }

    /// `(V ⊗ Q) ∩ ambient`.
    pub fn saturation(&self) -> SublatticeEmbedding {
        // Saturation = kernel of the kernel of Bᵀ viewed as linear forms.
        let forms = integer_kernel(&self.basis.transpose()).transpose();
        let basis = if forms.nrows() == 0 {
            IntMatrix::identity(self.ambient.rank())
        } else {
            integer_kernel(&forms)
        };
        SublatticeEmbedding {
            ambient: self.ambient.clone(),
            basis,
        }
    }
}

/// `v^⊥ / Zv` for a primitive isotropic `v`, with the data needed to map
/// elements of `v^⊥` into it.
#[derive(Clone, Debug)]
pub struct IsotropicQuotient {
    pub lattice: Lattice,
    /// Ambient-coordinate lifts of the quotient basis, as columns.
    pub lifts: IntMatrix,
    pub isotropic: Vec<BigInt>,
    sub: IntMatrix,
    left: IntMatrix,
    // rows: quotient coordinates as functionals of V-coordinates
    projector: IntMatrix,
}

impl IsotropicQuotient {
    /// Quotient coordinates of an ambient vector of `v^⊥`.
    pub fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = solve_with_left_inverse(&self.sub, &self.left, x).ok_or(Error::NotInSublattice)?;
        Ok(self.projector.mul_vec(&c))
    }

    /// Image of a sublattice of `v^⊥` as a sublattice of the quotient.
    pub fn project_all(&self, vectors: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
        vectors.iter().map(|x| self.project(x)).collect()
    }
}

/// Forms `V / Zv` where `V = v^⊥` and `v` is primitive isotropic.
pub fn quotient_by_isotropic(
    v_perp: &SublatticeEmbedding,
    v: &[BigInt],
    strategy: Completion,
) -> Result<IsotropicQuotient> {
    let ambient = v_perp.ambient();
    if v.len() != ambient.rank() {
        return Err(Error::DimensionMismatch {
            expected: ambient.rank(),
            found: v.len(),
        });
    }
    let square = ambient.norm(v);
    if !square.is_zero() {
        return Err(Error::NotIsotropic {
            square: square.to_string(),
        });
    }
    let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !content.is_one() {
        return Err(Error::NotPrimitive);
    }
    let b = v_perp.basis();
    if b.columns().iter().any(|col| !ambient.pair(col, v).is_zero()) {
        return Err(Error::InvalidArgument(
            "sublattice is not orthogonal to the isotropic vector".into(),
        ));
    }
    let left = primitive_left_inverse(b)?;
    let c = solve_with_left_inverse(b, &left, v).ok_or(Error::NotInSublattice)?;
    let w = complete_to_basis(&c, strategy)?;
    let w_inv = primitive_left_inverse(&w)?;
    let k = b.ncols();
    let q = w.select_columns(1..k);
    let lifts = b * &q;
    let lattice = Lattice::new(ambient.gram().congruence(&lifts))?;
    Ok(IsotropicQuotient {
        lattice,
        lifts,
        isotropic: v.to_vec(),
        sub: b.clone(),
        left,
        projector: w_inv.select_rows(1..k),
    })
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Lattice::from_i64_rows(&[[1, 1], [2, 1]]), Err(Error::NotSymmetric));
        assert_eq!(Lattice::from_i64_rows(&[[1, 2], [2, 4]]), Err(Error::Degenerate));
        let ragged = IntMatrix::from_i64_rows(&[[1, 2, 3]]);
        assert!(matches!(Lattice::new(ragged), Err(Error::NotSquare { .. })));
        assert_eq!(Lattice::hyperbolic_plane().rescale(0), Err(Error::ZeroScale));
    }

    #[test]
    fn basic_invariants() {
        let u = Lattice::hyperbolic_plane();
        assert_eq!(u.determinant(), b(-1));
        assert!(u.is_even());
        assert_eq!(u.signature(), Signature::new(1, 1));
        let l13 = Lattice::from_i64_rows(&[[2, 3], [3, 0]]).unwrap();
        assert_eq!(l13.determinant(), b(-9));
        assert!(l13.is_even());
        assert_eq!(l13.signature(), Signature::new(1, 1));
        assert!(!Lattice::rank_one(1).unwrap().is_even());
        assert_eq!(Lattice::rank_one(12).unwrap().determinant(), b(12));
        let e8 = Lattice::e8();
        assert_eq!(e8.determinant(), b(1));
        assert_eq!(e8.signature(), Signature::new(8, 0));
        assert_eq!(e8.rescale(-1).unwrap().signature(), Signature::new(0, 8));
    }

    #[test]
    fn k3_lattice() {
        let k3 = Lattice::k3();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.determinant(), b(-1));
        assert!(k3.is_even());
        assert_eq!(k3.signature(), Signature::new(3, 19));
        let uu = Lattice::hyperbolic_plane().direct_sum(&Lattice::hyperbolic_plane());
        assert_eq!(uu.determinant(), b(1));
        let pm = Lattice::rank_one(2).unwrap().direct_sum(&Lattice::rank_one(-2).unwrap());
        assert_eq!(pm.determinant(), b(-4));
    }

    #[test]
    fn rescaling() {
        let u = Lattice::hyperbolic_plane().rescale(-1).unwrap();
        assert_eq!(u.gram(), &IntMatrix::from_i64_rows(&[[0, -1], [-1, 0]]));
        let r = Lattice::rank_one(2).unwrap().rescale(3).unwrap();
        assert_eq!(r.gram(), &IntMatrix::from_i64_rows(&[[6]]));
    }

    #[test]
    fn complements_and_primitivity() {
        let u = Lattice::hyperbolic_plane();
        let uu = u.direct_sum(&u);
        let first = uu.sublattice(&[ints(&[1, 0, 0, 0]), ints(&[0, 1, 0, 0])]).unwrap();
        let comp = first.orthogonal_complement();
        assert_eq!(comp.basis(), &IntMatrix::from_columns(&[ints(&[0, 0, 1, 0]), ints(&[0, 0, 0, 1])]).unwrap());
        assert!(comp.is_primitive());

        let s = uu.sublattice(&[ints(&[1, 2, 0, 0]), ints(&[0, 5, 1, 0])]).unwrap();
        assert!(s.is_primitive());
        assert_eq!(s.induced_gram(), IntMatrix::from_i64_rows(&[[4, 5], [5, 0]]));
        let t = s.orthogonal_complement();
        assert_eq!(t.rank(), 2);
        let tl = t.lattice().unwrap();
        assert_eq!(tl.signature(), Signature::new(1, 1));
        assert_eq!(tl.determinant().abs(), s.lattice().unwrap().determinant().abs());

        let not_prim = u.sublattice(&[ints(&[2, 0])]).unwrap();
        assert!(!not_prim.is_primitive());
        assert_eq!(not_prim.saturation().basis(), &IntMatrix::from_columns(&[ints(&[1, 0])]).unwrap());
    }

    #[test]
    fn coordinates() {
        let u = Lattice::hyperbolic_plane();
        let uu = u.direct_sum(&u);
        let s = uu.sublattice(&[ints(&[2, 0, 0, 0]), ints(&[0, 1, 1, 0])]).unwrap();
        assert_eq!(s.coordinates_of(&ints(&[4, 3, 3, 0])).unwrap(), Some(ints(&[2, 3])));
        assert_eq!(s.coordinates_of(&ints(&[1, 0, 0, 0])).unwrap(), None);
        assert_eq!(s.coordinates_of(&ints(&[0, 0, 0, 1])).unwrap(), None);
    }

    #[test]
    fn isotropic_quotient() {
        let u = Lattice::hyperbolic_plane();
        let uu = u.direct_sum(&u);
        let v = ints(&[1, 0, 0, 0]);
        let vperp = uu.sublattice(&[v.clone()]).unwrap().orthogonal_complement();
        for s in [Completion::Hermite, Completion::Smith] {
            let q = quotient_by_isotropic(&vperp, &v, s).unwrap();
            assert_eq!(q.lattice.rank(), 2);
            assert!(q.lattice.is_unimodular());
            assert_eq!(q.lattice.signature(), Signature::new(1, 1));
        }
        let bad = ints(&[1, 1, 0, 0]);
        let bad_perp = uu.sublattice(&[bad.clone()]).unwrap().orthogonal_complement();
        assert!(matches!(
            quotient_by_isotropic(&bad_perp, &bad, Completion::Hermite),
            Err(Error::NotIsotropic { .. })
        ));
        let twice = ints(&[2, 0, 0, 0]);
        assert_eq!(
            quotient_by_isotropic(&vperp, &twice, Completion::Hermite).unwrap_err(),
            Error::NotPrimitive
        );
    }
}
