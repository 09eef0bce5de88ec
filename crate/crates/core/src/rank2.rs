//! The rank-2 lattices `L_{d,n}` with Gram `[[2d, n], [n, 0]]`, their
//! discriminant forms, and families of pairwise non-isometric members that
//! share a discriminant form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{gcd_u64, inv_mod, is_prime, mod_two, next_prime_above, rational, sqrt_mod_prime_squared, Rational};
use crate::error::{Error, Result};
use crate::finite_form::{discriminant_module, is_isometric_modules, FiniteQuadraticModule, ModuleIsometry};
use crate::fm_count::PolarizationDegree;
use crate::json::{matrix_to_json, JsonInt};
use crate::lattice::{Lattice, Signature, SublatticeEmbedding};
use crate::matrix::IntMatrix;
use crate::oracle::{enumerate_isometries_bounded, SearchBudget};

fn u_plus_u() -> Lattice {
    Lattice::hyperbolic_plane().direct_sum(&Lattice::hyperbolic_plane())
}

/// `L_{d,n}` with its embedding into `U ⊕ U` (or a lattice containing it in
/// the first four coordinates) and its discriminant module in closed form.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    d: u64,
    n: u64,
    lattice: Lattice,
    embedding: SublatticeEmbedding,
    module: FiniteQuadraticModule,
}

impl FamilyMember {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Columns `(1, d, 0, 0)` and `(0, n, 1, 0)` in `U ⊕ U`.
    pub fn embedding(&self) -> &SublatticeEmbedding {
        &self.embedding
    }

    /// Cyclic of order `n²`, generated by `(1/n, −2d/n²)` with `q = −2d/n²`.
    pub fn module(&self) -> &FiniteQuadraticModule {
        &self.module
    }

    /// The same two columns padded with zeros into `ambient`, whose first
    /// four coordinates must span `U ⊕ U`.
    pub fn embed_into(&self, ambient: &Lattice) -> Result<SublatticeEmbedding> {
        let k = ambient.rank();
        if k < 4 || ambient.gram().select_rows(0..4).select_columns(0..4) != *u_plus_u().gram() {
            return Err(Error::InvalidArgument("ambient does not start with U ⊕ U".into()));
        }
        let cols: Vec<Vec<BigInt>> = self
            .embedding
            .basis()
            .columns()
            .into_iter()
            .map(|mut c| {
                c.resize(k, BigInt::zero());
                c
            })
            .collect();
        ambient.sublattice(&cols)
    }

    /// `(1, 0)`, of square `2d`.
    pub fn polarization_vector(&self) -> Vec<BigInt> {
        vec![BigInt::from(1), BigInt::from(0)]
    }

    /// `(0, 1)`, primitive of square 0.
    pub fn isotropic_vector(&self) -> Vec<BigInt> {
        vec![BigInt::from(0), BigInt::from(1)]
    }
}

impl Serialize for FamilyMember {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct MemberJson {
            d: u64,
            n: u64,
            gram: Vec<Vec<JsonInt>>,
            embedding: Vec<Vec<JsonInt>>,
        }
        MemberJson {
            d: self.d,
            n: self.n,
            gram: matrix_to_json(self.lattice.gram()),
            embedding: matrix_to_json(self.embedding.basis()),
        }
        .serialize(s)
    }
}

fn check_coprime(d: u64, n: u64) -> Result<()> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument("d and n must be positive".into()));
    }
    if gcd_u64(2 * d, n) != 1 {
        return Err(Error::NotCoprime { d, n });
    }
    Ok(())
}

/// Builds `L_{d,n}` and checks the closed-form discriminant data against the
/// Smith-form computation.
pub fn make_member(d: u64, n: u64) -> Result<FamilyMember> {
    check_coprime(d, n)?;
    let (bd, bn) = (BigInt::from(d), BigInt::from(n));
    let lattice = Lattice::new(IntMatrix::from_rows(vec![
        vec![&bd * 2, bn.clone()],
        vec![bn.clone(), BigInt::zero()],
    ])?)?;
    let ambient = u_plus_u();
    let embedding = ambient.sublattice(&[
        vec![BigInt::from(1), bd.clone(), BigInt::zero(), BigInt::zero()],
        vec![BigInt::zero(), bn.clone(), BigInt::from(1), BigInt::zero()],
    ])?;
    let n2 = &bn * &bn;
    let q = Rational::new(-&bd * 2, n2.clone());
    let module = if n == 1 {
        FiniteQuadraticModule::trivial()
    } else {
        FiniteQuadraticModule::cyclic(n2.clone(), q.clone())?.with_generators(vec![vec![
            Rational::new(BigInt::from(1), bn.clone()),
            q.clone(),
        ]])
    };

    // the generator lies in the dual and has the stated norm
    if let Some(g) = module.generators().first() {
        let m = lattice.gram();
        for i in 0..2 {
            let y = Rational::from(m[(i, 0)].clone()) * &g[0] + Rational::from(m[(i, 1)].clone()) * &g[1];
            if !y.is_integer() {
                return Err(Error::VerificationFailed(format!("generator of A_L_{{{d},{n}}} is not dual")));
            }
        }
        let norm = &g[0] * &g[0] * Rational::from(&bd * 2) + &g[0] * &g[1] * Rational::from(&bn * 2);
        if mod_two(&norm) != mod_two(&q) {
            return Err(Error::VerificationFailed(format!("q of the generator of L_{{{d},{n}}}")));
        }
    }
    let computed = discriminant_module(&lattice)?;
    if computed.order() != n2 || !computed.is_cyclic() || is_isometric_modules(&module, &computed)?.is_none() {
        return Err(Error::VerificationFailed(format!(
            "closed-form discriminant module of L_{{{d},{n}}} disagrees with the Smith form"
        )));
    }
    let embedded = embedding.induced_gram();
    if &embedded != lattice.gram() || !embedding.is_primitive() {
        return Err(Error::VerificationFailed(format!("embedding of L_{{{d},{n}}} into U ⊕ U")));
    }
    Ok(FamilyMember {
        d,
        n,
        lattice,
        embedding,
        module,
    })
}

/// `α` with `gcd(α, n) = 1` and `d₁α² ≡ d₂ (mod n²)`.
///
/// Multiplication by `α` sends the generator of `A_{L_{d₂,n}}` to `α` times
/// the generator of `A_{L_{d₁,n}}`, an isometry `A_{d₂} → A_{d₁}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscIsoWitness {
    pub d1: u64,
    pub d2: u64,
    pub n: u64,
    pub alpha: u64,
}

impl DiscIsoWitness {
    pub fn verify(&self) -> bool {
        let n2 = self.n as u128 * self.n as u128;
        let a = self.alpha as u128 % n2;
        gcd_u64(self.alpha, self.n) == 1 && (self.d1 as u128 % n2 * a % n2 * a) % n2 == self.d2 as u128 % n2
    }

    /// The isometry `A_{L_{d₂,n}} → A_{L_{d₁,n}}` as a module map.
    pub fn module_isometry(&self) -> ModuleIsometry {
        if self.n == 1 {
            return ModuleIsometry::from_images(Vec::new());
        }
        ModuleIsometry::from_images(vec![vec![BigInt::from(self.alpha)]])
    }
}

/// The least witness `α ∈ [1, n²)`, or `None` when `n₁ ≠ n₂` or no `α`
/// exists.
pub fn disc_groups_isomorphic(d1: u64, n1: u64, d2: u64, n2: u64) -> Result<Option<DiscIsoWitness>> {
    check_coprime(d1, n1)?;
    check_coprime(d2, n2)?;
    if n1 != n2 {
        return Ok(None);
    }
    let n = n1;
    if n == 1 {
        return Ok(Some(DiscIsoWitness { d1, d2, n, alpha: 1 }));
    }
    let nn = n
        .checked_mul(n)
        .ok_or_else(|| Error::Overflow(format!("{n}^2")))?;
    let alpha = if n > 2 && is_prime(n) {
        let c = (d2 as u128 % nn as u128 * inv_mod(d1 % nn, nn).expect("coprime") as u128 % nn as u128) as u64;
        sqrt_mod_prime_squared(c, n)?.into_iter().next()
    } else {
        (1..nn).find(|&a| {
            let w = DiscIsoWitness { d1, d2, n, alpha: a };
            w.verify()
        })
    };
    Ok(alpha.map(|alpha| DiscIsoWitness { d1, d2, n, alpha }))
}

/// Proof that `L_{d₁,n}` and `L_{d₂,n}` are not isometric: both
/// `d₁ ≡ d₂` and `d₁d₂ ≡ 1` fail modulo `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NonIsometryCertificate {
    pub d1: u64,
    pub d2: u64,
    pub n: u64,
}

impl NonIsometryCertificate {
    pub fn verify(&self) -> bool {
        let c = necessary_congruences(self.d1, self.d2, self.n);
        !c.0 && !c.1
    }
}

fn necessary_congruences(d1: u64, d2: u64, n: u64) -> (bool, bool) {
    let n = n as u128;
    let (a, b) = (d1 as u128, d2 as u128);
    (a % n == b % n, (a * b) % n == 1 % n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    /// `d₁ ≡ d₂ (mod n)`
    pub a2: bool,
    /// `d₁d₂ ≡ 1 (mod n)`
    pub b2: bool,
    pub certificate: Option<NonIsometryCertificate>,
}

/// At least one of `a2`, `b2` holds whenever `L_{d₁,n} ≅ L_{d₂,n}`.
pub fn isometry_necessary_conditions(d1: u64, d2: u64, n: u64) -> Result<NecessaryConditions> {
    check_coprime(d1, n)?;
    check_coprime(d2, n)?;
    let (a2, b2) = necessary_congruences(d1, d2, n);
    Ok(NecessaryConditions {
        a2,
        b2,
        certificate: (!a2 && !b2).then_some(NonIsometryCertificate { d1, d2, n }),
    })
}

/// Rank, signature and discriminant module: the data Nikulin's criterion
/// looks at.
#[derive(Clone, Debug)]
pub struct NikulinInput {
    pub rank: usize,
    pub signature: Signature,
    pub module: FiniteQuadraticModule,
}

impl NikulinInput {
    pub fn from_lattice(l: &Lattice) -> Result<Self> {
        Ok(NikulinInput {
            rank: l.rank(),
            signature: l.signature(),
            module: discriminant_module(l)?,
        })
    }
}

/// The hypotheses under which two lattices are isometric, all verified.
/// The isometry itself is not constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NikulinAttestation {
    pub rank: usize,
    pub signature: Signature,
    pub ell: usize,
    pub disc_iso: ModuleIsometry,
}

/// Equal signatures, indefinite, `rank ≥ 2 + ℓ(A)`, isometric discriminant
/// modules; fails with the first violated hypothesis.
pub fn check_nikulin_hypotheses(t1: &NikulinInput, t2: &NikulinInput) -> Result<NikulinAttestation> {
    if t1.signature != t2.signature || t1.rank != t2.rank {
        return Err(Error::HypothesisFailed("signature".into()));
    }
    if !t1.signature.is_indefinite() {
        return Err(Error::HypothesisFailed("indefinite".into()));
    }
    let ell = t1.module.ell();
    if t1.rank < 2 + ell {
        return Err(Error::HypothesisFailed("rank".into()));
    }
    let disc_iso =
        is_isometric_modules(&t1.module, &t2.module)?.ok_or_else(|| Error::HypothesisFailed("discriminant form".into()))?;
    Ok(NikulinAttestation {
        rank: t1.rank,
        signature: t1.signature,
        ell,
        disc_iso,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// `Λ = U³ ⊕ E8(-1)²`
    K3,
    /// `U³`
    Abelian,
}

impl Ambient {
    pub fn lattice(self) -> Lattice {
        match self {
            Ambient::K3 => Lattice::k3(),
            Ambient::Abelian => Lattice::abelian(),
        }
    }
}

impl std::str::FromStr for Ambient {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k3" => Ok(Ambient::K3),
            "abelian" => Ok(Ambient::Abelian),
            other => Err(Error::InvalidArgument(format!("unknown ambient {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub witness: DiscIsoWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCertificate {
    pub i: usize,
    pub j: usize,
    pub certificate: NonIsometryCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairAttestation {
    pub i: usize,
    pub j: usize,
    pub attestation: NikulinAttestation,
}

/// A vector of a member together with its square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentedValue {
    pub member: usize,
    pub vector: Vec<JsonInt>,
    pub square: JsonInt,
    pub primitive: bool,
}

/// `N` members `L_{d·i², n}`, `i = 1..N`, for the least prime `n > d²N⁴`.
/// Member indices in the pair lists are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyBundle {
    pub n: u64,
    pub ambient: Ambient,
    pub members: Vec<FamilyMember>,
    pub witnesses: Vec<PairWitness>,
    pub certificates: Vec<PairCertificate>,
    pub attestations: Vec<PairAttestation>,
    pub polarization: RepresentedValue,
    pub isotropic: Vec<RepresentedValue>,
}

/// The least prime above `max(d²N⁴, 2)`.
pub fn family_prime(count: u64, d: PolarizationDegree) -> Result<u64> {
    let dd = d.d() as u128;
    let bound = (count as u128)
        .checked_pow(4)
        .and_then(|x| x.checked_mul(dd * dd))
        .filter(|&x| x < u32::MAX as u128)
        .ok_or_else(|| Error::Overflow(format!("d²N⁴ for N = {count}, d = {}", d.d())))?;
    next_prime_above((bound as u64).max(2))
}

pub fn build_family(count: u64, d: PolarizationDegree, ambient: Ambient) -> Result<FamilyBundle> {
    if count == 0 {
        return Err(Error::InvalidArgument("family size must be positive".into()));
    }
    let n = family_prime(count, d)?;
    let members = (1..=count)
        .map(|i| make_member(d.d() * i * i, n))
        .collect::<Result<Vec<_>>>()?;
    let lattice = ambient.lattice();
    let complements = members
        .iter()
        .map(|m| NikulinInput::from_lattice(&m.embed_into(&lattice)?.orthogonal_complement().lattice()?))
        .collect::<Result<Vec<_>>>()?;

    let mut witnesses = Vec::new();
    let mut certificates = Vec::new();
    let mut attestations = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (di, dj) = (members[i].d, members[j].d);
            let witness = disc_groups_isomorphic(di, n, dj, n)?
                .ok_or_else(|| Error::VerificationFailed(format!("no discriminant isometry for d = {di}, {dj}")))?;
            let certificate = isometry_necessary_conditions(di, dj, n)?
                .certificate
                .ok_or_else(|| Error::VerificationFailed(format!("no non-isometry certificate for d = {di}, {dj}")))?;
            let attestation = check_nikulin_hypotheses(&complements[i], &complements[j])?;
            witnesses.push(PairWitness {
                i: i + 1,
                j: j + 1,
                witness,
            });
            certificates.push(PairCertificate {
                i: i + 1,
                j: j + 1,
                certificate,
            });
            attestations.push(PairAttestation {
                i: i + 1,
                j: j + 1,
                attestation,
            });
        }
    }
    let represented = |k: usize, v: Vec<BigInt>| {
        let square = members[k].lattice.norm(&v);
        let primitive = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)) == BigInt::from(1);
        RepresentedValue {
            member: k + 1,
            vector: v.into_iter().map(JsonInt).collect(),
            square: JsonInt(square),
            primitive,
        }
    };
    let polarization = represented(0, members[0].polarization_vector());
    let isotropic = (0..members.len())
        .map(|k| represented(k, members[k].isotropic_vector()))
        .collect();
    Ok(FamilyBundle {
        n,
        ambient,
        members,
        witnesses,
        certificates,
        attestations,
        polarization,
        isotropic,
    })
}

/// Primitive `(a, b) ∈ U` with `2ab = 2d`, grouped into `O(U)`-orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizationOrbits {
    pub d: u64,
    pub count: usize,
    /// Each orbit sorted, orbits sorted by representative `0 < a ≤ b`.
    pub orbits: Vec<Vec<(i64, i64)>>,
    pub representatives: Vec<(i64, i64)>,
}

/// Orbits of the degree-`2d` primitive vectors of `U` under `O(U)`, with
/// `O(U)` taken from the isometry oracle.
pub fn polarization_orbits_in_u(d: PolarizationDegree) -> Result<PolarizationOrbits> {
    let d = d.d();
    let di = i64::try_from(d).map_err(|_| Error::Overflow(format!("d = {d}")))?;
    let u = Lattice::hyperbolic_plane();
    let group = enumerate_isometries_bounded(&u, &u, SearchBudget::new(1, 1_000)?)?;
    if group.len() != 4 {
        return Err(Error::VerificationFailed(format!("O(U) has {} elements", group.len())));
    }
    let act: Vec<[[i64; 2]; 2]> = group
        .iter()
        .map(|w| {
            let m = w.matrix();
            let e = |i, j| i64::try_from(&m[(i, j)]).expect("entries are ±1 or 0");
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
        })
        .collect();

    let mut vectors = Vec::new();
    for a in 1..=di {
        if di % a == 0 && a.gcd(&(di / a)) == 1 {
            vectors.push((a, di / a));
            vectors.push((-a, -di / a));
        }
    }
    vectors.sort();
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = Vec::new();
    for &v in &vectors {
        if seen.contains(&v) {
            continue;
        }
        let mut orbit: Vec<(i64, i64)> = act
            .iter()
            .map(|m| (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1))
            .collect();
        orbit.sort();
        orbit.dedup();
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    let rep = |o: &Vec<(i64, i64)>| *o.iter().find(|&&(a, b)| 0 < a && a <= b).expect("orbit contains (a, b) with 0 < a ≤ b");
    orbits.sort_by_key(rep);
    let representatives = orbits.iter().map(rep).collect();
    Ok(PolarizationOrbits {
        d,
        count: orbits.len(),
        orbits,
        representatives,
    })
}

/// `q` of the closed-form generator of `A_{L_{d,n}}`, in `[0, 2)`.
pub fn closed_form_q(d: u64, n: u64) -> Rational {
    mod_two(&rational(-2 * d as i64, (n * n) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm_count::fm_count_rho1;

    fn pd(d: u64) -> PolarizationDegree {
        PolarizationDegree::new(d).unwrap()
    }

    #[test]
    fn members() {
        let m = make_member(1, 3).unwrap();
        assert_eq!(m.lattice().determinant(), BigInt::from(-9));
        assert_eq!(m.module().order(), BigInt::from(9));
        assert_eq!(m.module().q_values()[0], rational(16, 9));
        assert_eq!(closed_form_q(1, 3), rational(16, 9));
        assert!(matches!(make_member(2, 4), Err(Error::NotCoprime { d: 2, n: 4 })));
        assert_eq!(make_member(1, 17).unwrap().module().order(), BigInt::from(289));
        let one = make_member(5, 1).unwrap();
        assert!(one.module().is_trivial());
        assert_eq!(m.lattice().signature(), Signature::new(1, 1));
    }

    #[test]
    fn disc_isomorphism() {
        assert_eq!(disc_groups_isomorphic(1, 3, 4, 3).unwrap().unwrap().alpha, 2);
        assert_eq!(disc_groups_isomorphic(1, 3, 1, 5).unwrap(), None);
        assert_eq!(disc_groups_isomorphic(7, 9, 7, 9).unwrap().unwrap().alpha, 1);
        assert_eq!(disc_groups_isomorphic(1, 17, 4, 17).unwrap().unwrap().alpha, 2);
        // 2 is not a square mod 3
        assert_eq!(disc_groups_isomorphic(1, 3, 2, 3).unwrap(), None);
    }

    #[test]
    fn witness_direction() {
        let w = disc_groups_isomorphic(1, 5, 4, 5).unwrap().unwrap();
        assert!(w.verify());
        let (m1, m2) = (make_member(1, 5).unwrap(), make_member(4, 5).unwrap());
        assert!(m2.module().check_map(m1.module(), &w.module_isometry(), 1));
    }

    #[test]
    fn necessary_conditions() {
        let c = isometry_necessary_conditions(1, 6, 5).unwrap();
        assert!(c.a2 && c.certificate.is_none());
        let c = isometry_necessary_conditions(2, 3, 5).unwrap();
        assert!(c.b2 && !c.a2);
        let c = isometry_necessary_conditions(1, 4, 17).unwrap();
        assert!(!c.a2 && !c.b2);
        assert!(c.certificate.unwrap().verify());
    }

    #[test]
    fn family_of_two() {
        let f = build_family(2, pd(1), Ambient::K3).unwrap();
        assert_eq!(f.n, 17);
        assert_eq!(f.members.iter().map(|m| m.d()).collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(f.witnesses[0].witness.alpha, 2);
        assert_eq!(f.certificates.len(), 1);
        let a = &f.attestations[0].attestation;
        assert_eq!((a.rank, a.signature, a.ell), (20, Signature::new(2, 18), 1));
        assert_eq!(f.polarization.square, JsonInt(BigInt::from(2)));
        assert!(f.isotropic.iter().all(|r| r.primitive && r.square.0.is_zero()));
        let one = build_family(1, pd(5), Ambient::Abelian).unwrap();
        assert_eq!(one.members.len(), 1);
        assert!(one.witnesses.is_empty());
    }

    #[test]
    fn abelian_attestation() {
        let f = build_family(2, pd(1), Ambient::Abelian).unwrap();
        let a = &f.attestations[0].attestation;
        assert_eq!((a.rank, a.signature), (4, Signature::new(2, 2)));
    }

    #[test]
    fn nikulin_failures() {
        let a = NikulinInput::from_lattice(make_member(1, 3).unwrap().lattice()).unwrap();
        let b = NikulinInput::from_lattice(make_member(4, 3).unwrap().lattice()).unwrap();
        assert_eq!(check_nikulin_hypotheses(&a, &b), Err(Error::HypothesisFailed("rank".into())));
        let def = NikulinInput::from_lattice(&Lattice::e8()).unwrap();
        assert_eq!(check_nikulin_hypotheses(&def, &def), Err(Error::HypothesisFailed("indefinite".into())));
        assert_eq!(check_nikulin_hypotheses(&a, &def), Err(Error::HypothesisFailed("signature".into())));
    }

    #[test]
    fn orbits() {
        let o = polarization_orbits_in_u(pd(15)).unwrap();
        assert_eq!(o.representatives, vec![(1, 15), (3, 5)]);
        let o = polarization_orbits_in_u(pd(1)).unwrap();
        assert_eq!(o.orbits, vec![vec![(-1, -1), (1, 1)]]);
        for d in [30u64, 210, 64] {
            assert_eq!(polarization_orbits_in_u(pd(d)).unwrap().count as u64, fm_count_rho1(pd(d)));
        }
    }

    #[test]
    fn family_prime_selection() {
        assert_eq!(family_prime(1, pd(1)).unwrap(), 3);
        assert_eq!(family_prime(3, pd(1)).unwrap(), 83);
        assert!(family_prime(1 << 20, pd(1)).is_err());
    }
}
