//! Brute-force ground truth: bounded lattice isometry search, the
//! q-preserving units of `Z/2d`, and double-coset counting in finite groups.
//!
//! None of this relies on closed forms; the rest of the crate is checked
//! against it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::arith::to_i128;
use crate::error::{Error, Result};
use crate::finite_form::{FiniteQuadraticModule, ModuleIsometry};
use crate::lattice::Lattice;
use crate::matrix::{smith_normal_form, IntMatrix};

/// Limits for [`find_isometry_bounded`]. The defaults are engineering
/// choices: no effective entry bound for rank-2 isometries is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SearchBudget {
    pub entry_bound: u64,
    pub node_limit: u64,
}

impl SearchBudget {
    pub fn new(entry_bound: u64, node_limit: u64) -> Result<Self> {
        if entry_bound == 0 || node_limit == 0 {
            return Err(Error::InvalidArgument("search budget values must be positive".into()));
        }
        Ok(SearchBudget {
            entry_bound,
            node_limit,
        })
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            entry_bound: 50,
            node_limit: 10_000_000,
        }
    }
}

/// An integer matrix `B` with `Bᵀ G₁ B = G₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryWitness {
    matrix: IntMatrix,
}

impl IsometryWitness {
    /// Accepts `matrix` only if it really is an isometry `l1 → l2`.
    pub fn new(matrix: IntMatrix, l1: &Lattice, l2: &Lattice) -> Option<Self> {
        let w = IsometryWitness { matrix };
        w.verify(l1, l2).then_some(w)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn verify(&self, l1: &Lattice, l2: &Lattice) -> bool {
        self.matrix.is_square()
            && self.matrix.nrows() == l1.rank()
            && l1.rank() == l2.rank()
            && self.matrix.determinant().abs() == BigInt::from(1)
            && &l1.gram().congruence(&self.matrix) == l2.gram()
    }
}

/// Which cheap invariant separated the two lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantMismatch {
    Rank,
    Determinant,
    Parity,
    Signature,
    DiscriminantGroup,
}

/// Outcome of a bounded search. `NotFoundWithinBounds` is not a proof of
/// non-isometry; only `NotIsometric` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometrySearch {
    Found(IsometryWitness),
    NotIsometric(InvariantMismatch),
    NotFoundWithinBounds,
}

impl IsometrySearch {
    pub fn witness(&self) -> Option<&IsometryWitness> {
        match self {
            IsometrySearch::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Compares rank, determinant, parity, signature and discriminant group
/// structure.
pub fn invariant_screen(l1: &Lattice, l2: &Lattice) -> Option<InvariantMismatch> {
    if l1.rank() != l2.rank() {
        return Some(InvariantMismatch::Rank);
    }
    if l1.determinant() != l2.determinant() {
        return Some(InvariantMismatch::Determinant);
    }
    if l1.is_even() != l2.is_even() {
        return Some(InvariantMismatch::Parity);
    }
    if l1.signature() != l2.signature() {
        return Some(InvariantMismatch::Signature);
    }
    let f1 = smith_normal_form(l1.gram()).diagonal();
    let f2 = smith_normal_form(l2.gram()).diagonal();
    if f1 != f2 {
        return Some(InvariantMismatch::DiscriminantGroup);
    }
    None
}

struct SmallGram {
    n: usize,
    g: Vec<i128>,
}

impl SmallGram {
    fn new(l: &Lattice) -> Result<Self> {
        let n = l.rank();
        let mut g = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                g.push(to_i128(&l.gram()[(i, j)], "Gram entry")?);
            }
        }
        Ok(SmallGram { n, g })
    }

    fn at(&self, i: usize, j: usize) -> i128 {
        self.g[i * self.n + j]
    }

    fn pair(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut acc = 0i128;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0i128;
            for j in 0..self.n {
                row += self.at(i, j) * y[j] as i128;
            }
            acc += x[i] as i128 * row;
        }
        acc
    }
}

/// Vectors of `[-E, E]ⁿ` in shells of increasing sup-norm, lexicographic
/// within a shell. Each visited box point costs one node.
struct ShellEnumerator {
    n: usize,
    bound: i64,
    radius: i64,
    current: Vec<i64>,
    fresh: bool,
}

impl ShellEnumerator {
    fn new(n: usize, bound: i64) -> Self {
        ShellEnumerator {
            n,
            bound,
            radius: 0,
            current: vec![0; n],
            fresh: true,
        }
    }

    fn next(&mut self, nodes: &mut u64, limit: u64) -> Result<Option<Vec<i64>>> {
        loop {
            if self.fresh {
                self.fresh = false;
            } else {
                let r = self.radius;
                let mut i = self.n;
                loop {
                    if i == 0 {
                        self.radius += 1;
                        if self.radius > self.bound {
                            return Ok(None);
                        }
                        self.current = vec![-self.radius; self.n];
                        break;
                    }
                    i -= 1;
                    if self.current[i] < r {
                        self.current[i] += 1;
                        for x in &mut self.current[i + 1..] {
                            *x = -r;
                        }
                        break;
                    }
                }
            }
            *nodes += 1;
            if *nodes > limit {
                return Err(Error::BudgetExhausted { nodes: *nodes - 1 });
            }
            if self.current.iter().map(|x| x.abs()).max().unwrap_or(0) == self.radius {
                return Ok(Some(self.current.clone()));
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    First,
    All,
}

fn search(l1: &Lattice, l2: &Lattice, budget: SearchBudget, mode: Mode) -> Result<Vec<IsometryWitness>> {
    let n = l1.rank();
    let g1 = SmallGram::new(l1)?;
    let g2 = SmallGram::new(l2)?;
    let bound = i64::try_from(budget.entry_bound)
        .map_err(|_| Error::Overflow("entry bound".into()))?;
    let mut nodes = 0u64;

    // candidate images for each basis vector, keyed by required norm
    let mut by_norm: HashMap<i128, Vec<Vec<i64>>> = HashMap::new();
    for j in 0..n {
        by_norm.entry(g2.at(j, j)).or_default();
    }
    let mut shells = ShellEnumerator::new(n, bound);
    while let Some(x) = shells.next(&mut nodes, budget.node_limit)? {
        let norm = g1.pair(&x, &x);
        if let Some(list) = by_norm.get_mut(&norm) {
            list.push(x);
        }
    }

    let mut found = Vec::new();
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(n);
    extend(&g1, &g2, &by_norm, &mut columns, &mut nodes, budget.node_limit, mode, &mut |cols| {
        let cols: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let m = IntMatrix::from_columns(&cols).expect("equal lengths");
        if let Some(w) = IsometryWitness::new(m, l1, l2) {
            found.push(w);
        }
    })?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &SmallGram,
    g2: &SmallGram,
    by_norm: &HashMap<i128, Vec<Vec<i64>>>,
    columns: &mut Vec<Vec<i64>>,
    nodes: &mut u64,
    limit: u64,
    mode: Mode,
    emit: &mut dyn FnMut(&[Vec<i64>]),
) -> Result<bool> {
    let j = columns.len();
    if j == g1.n {
        emit(columns);
        return Ok(mode == Mode::First);
    }
    for cand in &by_norm[&g2.at(j, j)] {
        *nodes += 1;
        if *nodes > limit {
            return Err(Error::BudgetExhausted { nodes: *nodes - 1 });
        }
        if (0..j).any(|i| g1.pair(&columns[i], cand) != g2.at(i, j)) {
            continue;
        }
        columns.push(cand.clone());
        let done = extend(g1, g2, by_norm, columns, nodes, limit, mode, emit)?;
        columns.pop();
        if done {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Bounded search for `B` with `Bᵀ G₁ B = G₂`.
///
/// Lattices separated by [`invariant_screen`] are reported as definitively
/// non-isometric. Equal Gram matrices return the identity at once.
/// Otherwise the first witness in shell order is returned, or
/// `NotFoundWithinBounds` when every candidate within the entry bound fails.
pub fn find_isometry_bounded(l1: &Lattice, l2: &Lattice, budget: SearchBudget) -> Result<IsometrySearch> {
    if let Some(m) = invariant_screen(l1, l2) {
        return Ok(IsometrySearch::NotIsometric(m));
    }
    if l1.gram() == l2.gram() {
        let id = IsometryWitness {
            matrix: IntMatrix::identity(l1.rank()),
        };
        return Ok(IsometrySearch::Found(id));
    }
    Ok(match search(l1, l2, budget, Mode::First)?.into_iter().next() {
        Some(w) => IsometrySearch::Found(w),
        None => IsometrySearch::NotFoundWithinBounds,
    })
}

/// Every isometry `l1 → l2` with entries bounded by the budget.
pub fn enumerate_isometries_bounded(
    l1: &Lattice,
    l2: &Lattice,
    budget: SearchBudget,
) -> Result<Vec<IsometryWitness>> {
    if invariant_screen(l1, l2).is_some() {
        return Ok(Vec::new());
    }
    search(l1, l2, budget, Mode::All)
}

/// Units `α mod m` (`m = 2d`) with `α² ≡ 1 mod 2m`: the automorphisms of
/// `Z/2d` preserving `q(g) = 1/2d mod 2Z`.
pub fn units_with_square_one(m: u64) -> Result<Vec<u64>> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidArgument(format!("modulus must be 2d with d >= 1, got {m}")));
    }
    let m2 = 2 * m as u128;
    Ok((1..m)
        .filter(|&a| a.gcd(&m) == 1 && (a as u128 * a as u128) % m2 == 1)
        .collect())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn check_subgroup(
    module: &FiniteQuadraticModule,
    name: &str,
    sub: &[ModuleIsometry],
    index: &HashMap<&ModuleIsometry, usize>,
) -> Result<()> {
    if sub.is_empty() {
        return Err(Error::NotSubgroup(format!("{name} is empty")));
    }
    if let Some(f) = sub.iter().find(|f| !index.contains_key(f)) {
        return Err(Error::NotSubgroup(format!("{name} contains {f:?}, which is not in the full group")));
    }
    for f in sub {
        for g in sub {
            if !sub.contains(&module.compose(f, g)) {
                return Err(Error::NotSubgroup(format!("{name} is not closed under composition")));
            }
        }
    }
    Ok(())
}

/// Number of double cosets `left \ full / right`, by union-find over `full`.
pub fn double_coset_count(
    module: &FiniteQuadraticModule,
    left: &[ModuleIsometry],
    full: &[ModuleIsometry],
    right: &[ModuleIsometry],
) -> Result<usize> {
    let index: HashMap<&ModuleIsometry, usize> = full.iter().enumerate().map(|(i, f)| (f, i)).collect();
    check_subgroup(module, "left", left, &index)?;
    check_subgroup(module, "right", right, &index)?;
    let mut uf = UnionFind::new(full.len());
    for (i, f) in full.iter().enumerate() {
        for l in left {
            let g = module.compose(l, f);
            let j = *index
                .get(&g)
                .ok_or_else(|| Error::NotSubgroup("full is not closed under composition".into()))?;
            uf.union(i, j);
        }
        for r in right {
            let g = module.compose(f, r);
            let j = *index
                .get(&g)
                .ok_or_else(|| Error::NotSubgroup("full is not closed under composition".into()))?;
            uf.union(i, j);
        }
    }
    Ok((0..full.len()).filter(|&i| uf.find(i) == i).count())
}

/// The subgroup generated by `gens` inside the automorphisms of `module`.
pub fn generated_subgroup(module: &FiniteQuadraticModule, gens: &[ModuleIsometry]) -> Vec<ModuleIsometry> {
    let mut group = vec![module.identity_map()];
    let mut frontier = group.clone();
    while let Some(f) = frontier.pop() {
        for g in gens {
            let h = module.compose(g, &f);
            if !group.contains(&h) {
                group.push(h.clone());
                frontier.push(h);
            }
        }
    }
    group.sort();
    group
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ints;

    fn lat<const C: usize>(rows: &[[i64; C]]) -> Lattice {
        Lattice::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_short_circuit() {
        let l = lat(&[[2, 3], [3, 0]]);
        let r = find_isometry_bounded(&l, &l, SearchBudget::default()).unwrap();
        assert_eq!(r.witness().unwrap().matrix(), &IntMatrix::identity(2));
    }

    #[test]
    fn l15_to_l65() {
        let a = lat(&[[2, 5], [5, 0]]);
        let b = lat(&[[12, 5], [5, 0]]);
        let r = find_isometry_bounded(&a, &b, SearchBudget::default()).unwrap();
        let w = r.witness().expect("isometric");
        assert!(w.verify(&a, &b));
        // relation d₂ = x² d₁ + x z n with x = ±1, z = ±1, y = 0
        let m = w.matrix();
        assert_eq!(m[(0, 1)], BigInt::from(0));
        assert_eq!(m[(0, 0)].abs(), BigInt::from(1));
    }

    #[test]
    fn determinant_screen() {
        let r = find_isometry_bounded(&Lattice::rank_one(2).unwrap(), &Lattice::rank_one(4).unwrap(), SearchBudget::default())
            .unwrap();
        assert_eq!(r, IsometrySearch::NotIsometric(InvariantMismatch::Determinant));
        let r = find_isometry_bounded(&Lattice::hyperbolic_plane(), &lat(&[[1, 0], [0, -1]]), SearchBudget::default()).unwrap();
        assert_eq!(r, IsometrySearch::NotIsometric(InvariantMismatch::Parity));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let a = lat(&[[2, 5], [5, 0]]);
        let b = lat(&[[12, 5], [5, 0]]);
        let tiny = SearchBudget::new(50, 10).unwrap();
        assert!(matches!(find_isometry_bounded(&a, &b, tiny), Err(Error::BudgetExhausted { .. })));
        assert!(SearchBudget::new(0, 1).is_err());
    }

    #[test]
    fn not_found_within_bounds() {
        // L_{1,5} and L_{2,5}: same determinant, neither 1 ≡ 2 nor 2 ≡ 1 (mod 5)
        let a = lat(&[[2, 5], [5, 0]]);
        let b = lat(&[[4, 5], [5, 0]]);
        let r = find_isometry_bounded(&a, &b, SearchBudget::new(10, 1_000_000).unwrap()).unwrap();
        assert_eq!(r, IsometrySearch::NotFoundWithinBounds);
    }

    #[test]
    fn automorphisms_of_u_and_definite_lattices() {
        let u = Lattice::hyperbolic_plane();
        let o = enumerate_isometries_bounded(&u, &u, SearchBudget::new(3, 1_000_000).unwrap()).unwrap();
        assert_eq!(o.len(), 4);
        let a2 = lat(&[[2, -1], [-1, 2]]);
        let o = enumerate_isometries_bounded(&a2, &a2, SearchBudget::new(3, 1_000_000).unwrap()).unwrap();
        assert_eq!(o.len(), 12);
    }

    #[test]
    fn units() {
        assert_eq!(units_with_square_one(12).unwrap(), vec![1, 5, 7, 11]);
        assert_eq!(units_with_square_one(2).unwrap(), vec![1]);
        assert_eq!(units_with_square_one(8).unwrap(), vec![1, 7]);
        assert!(units_with_square_one(7).is_err());
    }

    #[test]
    fn double_cosets() {
        let m = FiniteQuadraticModule::cyclic(12, crate::arith::rational(1, 12)).unwrap();
        let full: Vec<ModuleIsometry> = units_with_square_one(12)
            .unwrap()
            .into_iter()
            .map(|a| m.scalar_map(&BigInt::from(a)))
            .collect();
        let pm = vec![m.identity_map(), m.scalar_map(&BigInt::from(-1))];
        assert_eq!(double_coset_count(&m, &pm, &full, &pm).unwrap(), 2);
        assert_eq!(double_coset_count(&m, &full, &full, &full).unwrap(), 1);
        let id = vec![m.identity_map()];
        assert_eq!(double_coset_count(&m, &id, &full, &id).unwrap(), 4);
        let not_sub = vec![m.scalar_map(&BigInt::from(5))];
        assert!(matches!(double_coset_count(&m, &not_sub, &full, &id), Err(Error::NotSubgroup(_))));
        let trivial = FiniteQuadraticModule::trivial();
        let t = vec![trivial.identity_map()];
        assert_eq!(double_coset_count(&trivial, &t, &t, &t).unwrap(), 1);
    }

    #[test]
    fn subgroup_generation() {
        let m = FiniteQuadraticModule::cyclic(12, crate::arith::rational(1, 12)).unwrap();
        let g = generated_subgroup(&m, &[m.scalar_map(&BigInt::from(5))]);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].images(), &[ints(&[1])]);
    }
}
