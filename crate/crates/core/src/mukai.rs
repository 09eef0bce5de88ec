//! The extended Mukai lattice `H⁰ ⊕ Λ ⊕ H⁴`, the isotropic vectors
//! `(r, h, s)` with `rs = d`, and the lattice-level shadow of their moduli
//! spaces.
//!
//! Coordinates on the Mukai lattice are `(r, x₁..x₂₂, s)`: index 0 is `H⁰`,
//! indices 1..=22 are `Λ = U³ ⊕ E8(-1)²` and index 23 is `H⁴`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::prime_power_blocks;
use crate::error::{Error, Result};
use crate::fm_count::PolarizationDegree;
use crate::json::JsonInt;
use crate::lattice::{quotient_by_isotropic, IsotropicQuotient, Lattice, Signature, SublatticeEmbedding};
use crate::matrix::{hermite_rows, integer_kernel, Completion, IntMatrix};

pub const MUKAI_RANK: usize = 24;
const LAMBDA_RANK: usize = 22;

/// `(r, h_mult·h, s)` for the polarization `h` of a fixed degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MukaiVector {
    pub r: i64,
    pub h_mult: i64,
    pub s: i64,
    pub d: u64,
}

impl MukaiVector {
    pub fn new(r: i64, h_mult: i64, s: i64, degree: PolarizationDegree) -> Self {
        MukaiVector {
            r,
            h_mult,
            s,
            d: degree.d(),
        }
    }

    /// `v² = 2d·h_mult² − 2rs`.
    pub fn square(&self) -> i128 {
        let (r, m, s) = (self.r as i128, self.h_mult as i128, self.s as i128);
        2 * self.d as i128 * m * m - 2 * r * s
    }

    pub fn is_isotropic(&self) -> bool {
        self.square() == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.r.gcd(&self.h_mult).gcd(&self.s) == 1
    }

    /// The vector with `r` and `s` exchanged.
    pub fn swapped(&self) -> Self {
        MukaiVector {
            r: self.s,
            s: self.r,
            ..*self
        }
    }

    fn class_key(&self) -> (i64, i64, i64) {
        (self.r.min(self.s), self.h_mult, self.r.max(self.s))
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.h_mult {
            1 => write!(f, "({}, h, {})", self.r, self.s),
            m => write!(f, "({}, {}h, {})", self.r, m, self.s),
        }
    }
}

/// A split of the prime-power blocks of `d` into the blocks multiplied into
/// `r` (the set `I`) and those multiplied into `s` (the set `J`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionPair {
    pub blocks: Vec<u64>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

/// All partitions of the prime-power blocks of `d`, in bitmask order (bit
/// `k` set means block `k` goes into `r`), with their vectors.
pub fn mukai_partitions(d: PolarizationDegree) -> Vec<(PartitionPair, MukaiVector)> {
    let blocks = if d.d() == 1 { Vec::new() } else { prime_power_blocks(d.d()) };
    let m = blocks.len();
    (0u64..1 << m)
        .map(|mask| {
            let (i, j): (Vec<usize>, Vec<usize>) = (0..m).partition(|&k| mask >> k & 1 == 1);
            let r: u64 = i.iter().map(|&k| blocks[k]).product();
            let s: u64 = j.iter().map(|&k| blocks[k]).product();
            let v = MukaiVector::new(r as i64, 1, s as i64, d);
            (
                PartitionPair {
                    blocks: blocks.clone(),
                    i,
                    j,
                },
                v,
            )
        })
        .collect()
}

/// The vectors `(∏_I blocks, h, ∏_J blocks)`, one per partition.
pub fn enumerate_mukai_vectors(d: PolarizationDegree) -> Vec<MukaiVector> {
    mukai_partitions(d).into_iter().map(|(_, v)| v).collect()
}

/// An orbit of the swap `(r, h, s) ↦ (s, h, r)`; `representative` has `r ≤ s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapClass {
    pub representative: MukaiVector,
    pub members: Vec<MukaiVector>,
}

/// Swap classes sorted by representative.
pub fn distinct_classes(vs: &[MukaiVector]) -> Vec<SwapClass> {
    let mut classes: BTreeMap<(u64, (i64, i64, i64)), Vec<MukaiVector>> = BTreeMap::new();
    for v in vs {
        let members = classes.entry((v.d, v.class_key())).or_default();
        if !members.contains(v) {
            members.push(*v);
        }
    }
    classes
        .into_values()
        .map(|mut members| {
            members.sort();
            let v = members[0];
            let representative = if v.r <= v.s { v } else { v.swapped() };
            SwapClass {
                representative,
                members,
            }
        })
        .collect()
}

/// True iff the two vectors lie in different swap classes.
pub fn swap_distinctness_check(v1: &MukaiVector, v2: &MukaiVector) -> bool {
    (v1.d, v1.class_key()) != (v2.d, v2.class_key())
}

/// Gram matrix of the Mukai lattice `H⁰ ⊕ Λ ⊕ H⁴`.
pub fn mukai_gram() -> IntMatrix {
    let k3 = Lattice::k3();
    let mut g = IntMatrix::zeros(MUKAI_RANK, MUKAI_RANK);
    for i in 0..LAMBDA_RANK {
        for j in 0..LAMBDA_RANK {
            g[(i + 1, j + 1)] = k3.gram()[(i, j)].clone();
        }
    }
    g[(0, MUKAI_RANK - 1)] = BigInt::from(-1);
    g[(MUKAI_RANK - 1, 0)] = BigInt::from(-1);
    g
}

pub fn mukai_lattice() -> Lattice {
    Lattice::new(mukai_gram()).expect("the Mukai Gram matrix is non-degenerate")
}

/// `−r s' + x·x' − s r'` on rank-24 vectors.
pub fn mukai_pairing(a: &[BigInt], b: &[BigInt]) -> Result<BigInt> {
    for x in [a, b] {
        if x.len() != MUKAI_RANK {
            return Err(Error::DimensionMismatch {
                expected: MUKAI_RANK,
                found: x.len(),
            });
        }
    }
    let k3 = Lattice::k3();
    let last = MUKAI_RANK - 1;
    Ok(k3.pair(&a[1..last], &b[1..last]) - &a[0] * &b[last] - &a[last] * &b[0])
}

/// `Λ` with `h = e + d·f` in its first hyperbolic plane, and the Mukai
/// lattice around it.
#[derive(Clone, Debug)]
pub struct PolarizedK3 {
    degree: PolarizationDegree,
    lambda: Lattice,
    mukai: Lattice,
    h: Vec<BigInt>,
    transcendental: SublatticeEmbedding,
}

pub fn embed_polarized(d: PolarizationDegree) -> PolarizedK3 {
    let lambda = Lattice::k3();
    let mut h = vec![BigInt::from(0); LAMBDA_RANK];
    h[0] = BigInt::from(1);
    h[1] = BigInt::from(d.d());
    let transcendental = lambda
        .sublattice(std::slice::from_ref(&h))
        .expect("h is nonzero")
        .orthogonal_complement();
    PolarizedK3 {
        degree: d,
        lambda,
        mukai: mukai_lattice(),
        h,
        transcendental,
    }
}

impl PolarizedK3 {
    pub fn degree(&self) -> PolarizationDegree {
        self.degree
    }

    pub fn lambda(&self) -> &Lattice {
        &self.lambda
    }

    pub fn mukai(&self) -> &Lattice {
        &self.mukai
    }

    /// `h` in `Λ`-coordinates.
    pub fn h(&self) -> &[BigInt] {
        &self.h
    }

    pub fn h_sublattice(&self) -> SublatticeEmbedding {
        self.lambda.sublattice(std::slice::from_ref(&self.h)).expect("h is nonzero")
    }

    /// `h^⊥ ⊂ Λ`, the transcendental shadow for Picard number one.
    pub fn transcendental(&self) -> &SublatticeEmbedding {
        &self.transcendental
    }

    /// `(r, a, s)` as a rank-24 vector, for `a ∈ Λ`.
    pub fn mukai_vector(&self, r: impl Into<BigInt>, a: &[BigInt], s: impl Into<BigInt>) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(MUKAI_RANK);
        out.push(r.into());
        out.extend_from_slice(a);
        out.push(s.into());
        out
    }

    pub fn embed(&self, v: &MukaiVector) -> Result<Vec<BigInt>> {
        if v.d != self.degree.d() {
            return Err(Error::InvalidArgument(format!(
                "vector of degree 2·{} used with polarization of degree 2·{}",
                v.d,
                self.degree.d()
            )));
        }
        let m = BigInt::from(v.h_mult);
        let a: Vec<BigInt> = self.h.iter().map(|x| x * &m).collect();
        Ok(self.mukai_vector(v.r, &a, v.s))
    }

    /// The lattice shadow of the moduli space `M_h(v)`.
    pub fn shadow(&self, v: &MukaiVector) -> Result<ModuliShadow> {
        if !v.is_isotropic() {
            return Err(Error::NotIsotropic {
                square: v.square().to_string(),
            });
        }
        if !v.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let vv = self.embed(v)?;
        let v_perp = self.mukai.sublattice(std::slice::from_ref(&vv))?.orthogonal_complement();
        let quotient = quotient_by_isotropic(&v_perp, &vv, Completion::Hermite)?;

        // algebraic part: span of (1,0,0), (0,h,0), (0,0,1) meeting v^⊥
        let d = BigInt::from(self.degree.d());
        let functional = IntMatrix::from_rows(vec![vec![
            BigInt::from(-v.s),
            d * 2 * v.h_mult,
            BigInt::from(-v.r),
        ]])?;
        let kernel = integer_kernel(&functional);
        let images = kernel
            .columns()
            .iter()
            .map(|c| {
                let a: Vec<BigInt> = self.h.iter().map(|x| x * &c[1]).collect();
                quotient.project(&self.mukai_vector(c[0].clone(), &a, c[2].clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let hnf = hermite_rows(&IntMatrix::from_rows(images)?);
        let ns_generator = hnf.row(0).to_vec();
        if hnf.nrows() > 1 && hnf.row(1).iter().any(|x| x != &BigInt::from(0)) {
            return Err(Error::VerificationFailed("algebraic part of the quotient has rank above one".into()));
        }
        let ns_square = quotient.lattice.norm(&ns_generator);

        let t_images = self
            .transcendental
            .basis()
            .columns()
            .iter()
            .map(|n| quotient.project(&self.mukai_vector(0, n, 0)))
            .collect::<Result<Vec<_>>>()?;
        let transcendental = quotient.lattice.sublattice(&t_images)?;
        let ns = quotient.lattice.sublattice(std::slice::from_ref(&ns_generator))?;
        let complement_matches = transcendental.same_sublattice(&ns.orthogonal_complement());
        let gram_matches = transcendental.induced_gram() == self.transcendental.induced_gram();

        Ok(ModuliShadow {
            vector: *v,
            quotient,
            ns_generator,
            ns_square,
            transcendental,
            complement_matches,
            gram_matches,
        })
    }
}

/// `v^⊥/Zv` with its algebraic and transcendental parts.
#[derive(Clone, Debug)]
pub struct ModuliShadow {
    pub vector: MukaiVector,
    pub quotient: IsotropicQuotient,
    /// Generator of the algebraic part, in quotient coordinates.
    pub ns_generator: Vec<BigInt>,
    pub ns_square: BigInt,
    /// Image of `{(0, n, 0) : n ∈ h^⊥}`.
    pub transcendental: SublatticeEmbedding,
    /// The transcendental image equals the complement of `ns_generator`.
    pub complement_matches: bool,
    /// The transcendental image has the Gram matrix of `h^⊥ ⊂ Λ`.
    pub gram_matches: bool,
}

/// Summary invariants of a [`ModuliShadow`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowSummary {
    pub vector: MukaiVector,
    pub rank: usize,
    pub determinant: JsonInt,
    pub even: bool,
    pub signature: Signature,
    pub ns_square: JsonInt,
    pub complement_matches: bool,
    pub gram_matches: bool,
}

impl ModuliShadow {
    pub fn summary(&self) -> ShadowSummary {
        let l = &self.quotient.lattice;
        ShadowSummary {
            vector: self.vector,
            rank: l.rank(),
            determinant: JsonInt(l.determinant()),
            even: l.is_even(),
            signature: l.signature(),
            ns_square: JsonInt(self.ns_square.clone()),
            complement_matches: self.complement_matches,
            gram_matches: self.gram_matches,
        }
    }

    /// Same invariants as `Λ` and both identifications hold.
    pub fn is_consistent(&self) -> bool {
        let l = &self.quotient.lattice;
        let two_d = BigInt::from(2 * self.vector.d);
        l.rank() == LAMBDA_RANK
            && l.is_even()
            && l.is_unimodular()
            && l.signature() == Signature::new(3, 19)
            && self.ns_square == two_d
            && self.complement_matches
            && self.gram_matches
    }
}

pub fn moduli_lattice_shadow(v: &MukaiVector) -> Result<ModuliShadow> {
    embed_polarized(PolarizationDegree::new(v.d)?).shadow(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(d: u64) -> PolarizationDegree {
        PolarizationDegree::new(d).unwrap()
    }

    fn rs(vs: &[MukaiVector]) -> Vec<(i64, i64)> {
        vs.iter().map(|v| (v.r, v.s)).collect()
    }

    #[test]
    fn enumeration() {
        assert_eq!(rs(&enumerate_mukai_vectors(pd(15))), vec![(1, 15), (3, 5), (5, 3), (15, 1)]);
        assert_eq!(rs(&enumerate_mukai_vectors(pd(1))), vec![(1, 1)]);
        assert_eq!(rs(&enumerate_mukai_vectors(pd(49))), vec![(1, 49), (49, 1)]);
        assert_eq!(enumerate_mukai_vectors(pd(30)).len(), 8);
        for v in enumerate_mukai_vectors(pd(210)) {
            assert!(v.is_isotropic() && v.is_primitive());
        }
    }

    #[test]
    fn classes() {
        let c = distinct_classes(&enumerate_mukai_vectors(pd(15)));
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].representative.r, c[0].representative.s), (1, 15));
        assert_eq!((c[1].representative.r, c[1].representative.s), (3, 5));
        assert_eq!(distinct_classes(&enumerate_mukai_vectors(pd(1))).len(), 1);
        assert_eq!(distinct_classes(&enumerate_mukai_vectors(pd(30))).len(), 4);
        assert_eq!(distinct_classes(&enumerate_mukai_vectors(pd(8))).len(), 1);
    }

    #[test]
    fn swap_check() {
        let v = |r, s| MukaiVector::new(r, 1, s, pd(15));
        assert!(!swap_distinctness_check(&v(3, 5), &v(5, 3)));
        assert!(swap_distinctness_check(&v(1, 15), &v(3, 5)));
        assert!(!swap_distinctness_check(&v(1, 15), &v(1, 15)));
    }

    #[test]
    fn pairing() {
        let mut a = vec![BigInt::from(0); MUKAI_RANK];
        a[0] = BigInt::from(1);
        a[23] = BigInt::from(1);
        assert_eq!(mukai_pairing(&a, &a).unwrap(), BigInt::from(-2));
        let p = embed_polarized(pd(15));
        let h = p.mukai_vector(0, p.h(), 0);
        assert_eq!(mukai_pairing(&h, &h).unwrap(), BigInt::from(30));
        let v = p.embed(&MukaiVector::new(3, 1, 5, pd(15))).unwrap();
        assert_eq!(mukai_pairing(&v, &v).unwrap(), BigInt::from(0));
        assert_eq!(p.mukai().pair(&v, &h), mukai_pairing(&v, &h).unwrap());
        assert!(mukai_pairing(&a[..3], &a).is_err());
    }

    #[test]
    fn lattice_invariants() {
        let m = mukai_lattice();
        assert!(m.is_even() && m.is_unimodular());
        assert_eq!(m.determinant(), -Lattice::k3().determinant());
        assert_eq!(m.signature(), Signature::new(4, 20));
        let block = m.gram().select_rows([0, 23]).select_columns([0, 23]);
        assert_eq!(block, IntMatrix::from_i64_rows(&[[0, -1], [-1, 0]]));
    }

    #[test]
    fn polarization() {
        let p = embed_polarized(pd(3));
        assert_eq!(p.lambda().norm(p.h()), BigInt::from(6));
        assert!(p.h_sublattice().is_primitive());
        let t = p.transcendental().lattice().unwrap();
        assert_eq!(t.rank(), 21);
        assert_eq!(t.signature(), Signature::new(2, 19));
    }

    #[test]
    fn shadow_for_small_degrees() {
        for d in [1u64, 2, 6] {
            let p = embed_polarized(pd(d));
            for v in enumerate_mukai_vectors(pd(d)) {
                let sh = p.shadow(&v).unwrap();
                assert!(sh.is_consistent(), "{v}: {:?}", sh.summary());
            }
        }
    }

    #[test]
    fn ns_generator_is_class_of_0_h_2s() {
        let d = pd(6);
        let p = embed_polarized(d);
        let v = MukaiVector::new(2, 1, 3, d);
        let sh = p.shadow(&v).unwrap();
        let w = sh.quotient.project(&p.mukai_vector(0, p.h(), 2 * v.s)).unwrap();
        let neg: Vec<BigInt> = w.iter().map(|x| -x).collect();
        assert!(w == sh.ns_generator || neg == sh.ns_generator);
    }

    #[test]
    fn shadow_errors() {
        let d = pd(6);
        assert!(matches!(
            moduli_lattice_shadow(&MukaiVector::new(1, 1, 1, d)),
            Err(Error::NotIsotropic { .. })
        ));
        assert!(matches!(
            moduli_lattice_shadow(&MukaiVector::new(2, 2, 12, d)),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn ns_pairing_residue() {
        // on v^⊥: (a, b, c)·(0, h, 2s) ≡ −b·h (mod r)
        for d in [15u64, 30] {
            let p = embed_polarized(pd(d));
            for v in enumerate_mukai_vectors(pd(d)) {
                let vv = p.embed(&v).unwrap();
                let w = p.mukai_vector(0, p.h(), 2 * v.s);
                let r = BigInt::from(v.r);
                let perp = p.mukai().sublattice(&[vv]).unwrap().orthogonal_complement();
                for x in perp.basis().columns() {
                    let bh = p.lambda().pair(&x[1..23], p.h());
                    let lhs = mukai_pairing(&x, &w).unwrap();
                    assert_eq!((lhs + bh).mod_floor(&r), BigInt::from(0));
                }
            }
        }
    }
}
