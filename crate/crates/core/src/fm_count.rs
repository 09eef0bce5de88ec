//! Counting Fourier–Mukai partners: the closed form `2^{p(d)-1}` for Picard
//! number one, and the double-coset sum over a supplied genus.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::finite_form::{
    discriminant_module, orthogonal_group_of_module, DiscriminantGroup, FiniteQuadraticModule, ModuleIsometry,
};
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;
use crate::oracle::{
    double_coset_count, enumerate_isometries_bounded, generated_subgroup, units_with_square_one, SearchBudget,
};

/// `d` for a polarization with `h² = 2d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PolarizationDegree(u64);

impl PolarizationDegree {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("d must be positive".into()));
        }
        if d > u32::MAX as u64 {
            return Err(Error::Overflow(format!("d = {d} exceeds the supported range")));
        }
        Ok(PolarizationDegree(d))
    }

    /// From the geometric degree `h² = 2d`, which must be even and positive.
    pub fn from_degree(two_d: u64) -> Result<Self> {
        if two_d % 2 != 0 {
            return Err(Error::InvalidArgument(format!("degree {two_d} is odd; h² is always even")));
        }
        Self::new(two_d / 2)
    }

    pub fn d(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u64 {
        2 * self.0
    }
}

/// Number of distinct primes dividing `d`, with `p(1) = 1`.
pub fn distinct_prime_count(d: u64) -> u32 {
    if d <= 1 {
        return 1;
    }
    factorize(d).len() as u32
}

pub fn fm_count_rho1(d: PolarizationDegree) -> u64 {
    1u64 << (distinct_prime_count(d.d()) - 1)
}

/// The image in `O(A_T)` of the Hodge isometries of `T`. This is input
/// data; for Picard number one it is `{±id}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HodgeActionImage {
    Identity,
    PlusMinusIdentity,
    /// Explicit automorphisms. Each member module must accept them.
    Explicit(Vec<ModuleIsometry>),
}

impl HodgeActionImage {
    pub fn plus_minus_identity() -> Self {
        HodgeActionImage::PlusMinusIdentity
    }

    /// The subgroup on `module`, deduplicated and sorted.
    pub fn materialize(&self, module: &FiniteQuadraticModule) -> Result<Vec<ModuleIsometry>> {
        let mut out = match self {
            HodgeActionImage::Identity => vec![module.identity_map()],
            HodgeActionImage::PlusMinusIdentity => {
                vec![module.identity_map(), module.scalar_map(&BigInt::from(-1))]
            }
            HodgeActionImage::Explicit(maps) => {
                if let Some(f) = maps.iter().find(|f| !module.is_automorphism(f)) {
                    return Err(Error::NotSubgroup(format!("{f:?} is not an automorphism of the module")));
                }
                maps.clone()
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn scalar_group(module: &FiniteQuadraticModule, scalars: impl IntoIterator<Item = i64>) -> Vec<ModuleIsometry> {
    let mut out: Vec<ModuleIsometry> = scalars
        .into_iter()
        .map(|a| module.scalar_map(&BigInt::from(a)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The single-class term of the double-coset sum for `S = ⟨2d⟩`:
/// `|{±1} \ O(A_S) / {±id}|` with `O(A_S)` taken from the unit enumeration.
pub fn fm_count_rho1_via_cosets(d: PolarizationDegree) -> Result<u64> {
    let s = Lattice::rank_one(d.degree())?;
    let group = DiscriminantGroup::of(&s);
    let module = group.module()?;
    let mut full: Vec<ModuleIsometry> = units_with_square_one(d.degree())?
        .into_iter()
        .map(|a| module.scalar_map(&BigInt::from(a)))
        .collect();
    full.sort();
    full.dedup();
    let mut left: Vec<ModuleIsometry> = [1i64, -1]
        .iter()
        .map(|&e| group.induced_map(&IntMatrix::from_i64_rows(&[[e]])))
        .collect::<Result<_>>()?;
    left.sort();
    left.dedup();
    let right = HodgeActionImage::PlusMinusIdentity.materialize(&module)?;
    Ok(double_coset_count(&module, &left, &full, &right)? as u64)
}

/// Per-member detail of [`fm_count_genus_sum`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusTerm {
    pub module_order: String,
    pub automorphisms: usize,
    pub lattice_image: usize,
    pub double_cosets: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusCount {
    pub total: u64,
    pub terms: Vec<GenusTerm>,
    /// Bound used to generate the image of each `O(Sⱼ)`.
    pub budget: SearchBudget,
}

/// `Σⱼ |O(Sⱼ) \ O(A_{Sⱼ}) / G|` over a caller-supplied genus.
///
/// The image of `O(Sⱼ)` is the subgroup generated by the induced maps of
/// all self-isometries with entries inside `budget`. For indefinite members
/// this is a subgroup of the true image, so each term is an upper bound.
pub fn fm_count_genus_sum(members: &[Lattice], g: &HodgeActionImage, budget: SearchBudget) -> Result<GenusCount> {
    let mut terms = Vec::with_capacity(members.len());
    for member in members {
        if member.rank() > 2 {
            return Err(Error::RankUnsupported {
                rank: member.rank(),
                max: 2,
            });
        }
        let group = DiscriminantGroup::of(member);
        let module = discriminant_module(member)?;
        let full = orthogonal_group_of_module(&module)?;
        let gens: Vec<ModuleIsometry> = enumerate_isometries_bounded(member, member, budget)?
            .iter()
            .map(|w| group.induced_map(w.matrix()))
            .collect::<Result<_>>()?;
        let left = generated_subgroup(&module, &gens);
        let right = generated_subgroup(&module, &g.materialize(&module)?);
        let count = double_coset_count(&module, &left, &full, &right)? as u64;
        terms.push(GenusTerm {
            module_order: module.order().to_string(),
            automorphisms: full.len(),
            lattice_image: left.len(),
            double_cosets: count,
        });
    }
    Ok(GenusCount {
        total: terms.iter().map(|t| t.double_cosets).sum(),
        terms,
        budget,
    })
}

/// Scalar automorphisms of `Z/n` given by `scalars`, for callers building an
/// explicit [`HodgeActionImage`].
pub fn scalar_automorphisms(module: &FiniteQuadraticModule, scalars: &[i64]) -> Vec<ModuleIsometry> {
    scalar_group(module, scalars.iter().copied())
}
