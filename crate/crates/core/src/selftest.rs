//! The invariant suite run by `latfm selftest`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::finite_form::{discriminant_module, gamma_complement_map};
use crate::fm_count::{distinct_prime_count, fm_count_rho1, fm_count_rho1_via_cosets, PolarizationDegree};
use crate::lattice::{Lattice, Signature};
use crate::matrix::IntMatrix;
use crate::mukai::{distinct_classes, embed_polarized, enumerate_mukai_vectors};
use crate::oracle::{find_isometry_bounded, units_with_square_one, IsometrySearch, SearchBudget};
use crate::rank2::{
    build_family, closed_form_q, isometry_necessary_conditions, make_member, polarization_orbits_in_u, Ambient,
};

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Upper end of the `d` range for the counting checks.
    pub range_d: u64,
    /// Largest `d` for the moduli shadow check.
    pub shadow_d: u64,
    /// Entry bound for the rank-2 oracle grid.
    pub oracle_entries: u64,
    /// Replaces the built-in K3 Gram matrix with a corrupted one.
    pub corrupt_builtin: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            range_d: 200,
            shadow_d: 12,
            oracle_entries: 12,
            corrupt_builtin: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn pd(d: u64) -> PolarizationDegree {
    PolarizationDegree::new(d).expect("d >= 1")
}

/// First failing `d`, rendered, or `None`.
fn first_failure(range: std::ops::RangeInclusive<u64>, f: impl Fn(u64) -> Result<bool> + Sync) -> Option<String> {
    let failures: Vec<String> = range
        .into_par_iter()
        .filter_map(|d| match f(d) {
            Ok(true) => None,
            Ok(false) => Some(format!("fails at d = {d}")),
            Err(e) => Some(format!("error at d = {d}: {e}")),
        })
        .collect();
    failures.into_iter().next()
}

fn outcome(name: &'static str, claim: &'static str, failure: Option<String>, ok: String) -> CheckResult {
    CheckResult {
        name,
        claim,
        passed: failure.is_none(),
        detail: failure.unwrap_or(ok),
    }
}

fn k3_gram(corrupt: bool) -> IntMatrix {
    let mut g = Lattice::k3().gram().clone();
    if corrupt {
        g[(6, 6)] = BigInt::from(-3);
    }
    g
}

fn check_builtins(opts: &SelftestOptions) -> CheckResult {
    let claim = "K3 lattice is even, unimodular, of signature (3,19)";
    let failure = match Lattice::new(k3_gram(opts.corrupt_builtin)) {
        Ok(l) if l.is_even() && l.is_unimodular() && l.signature() == Signature::new(3, 19) => None,
        Ok(l) => Some(format!(
            "even = {}, det = {}, signature = {}",
            l.is_even(),
            l.determinant(),
            l.signature()
        )),
        Err(e) => Some(e.to_string()),
    };
    outcome("k3-lattice", claim, failure, "ok".into())
}

fn check_counts(opts: &SelftestOptions) -> CheckResult {
    let r = opts.range_d;
    let failure = first_failure(1..=r, |d| Ok(fm_count_rho1_via_cosets(pd(d))? == fm_count_rho1(pd(d))));
    outcome(
        "fm-count",
        "double-coset count equals 2^{p(d)-1}",
        failure,
        format!("1 <= d <= {r}"),
    )
}

fn check_units(opts: &SelftestOptions) -> CheckResult {
    let r = opts.range_d;
    let failure = first_failure(1..=r, |d| {
        let expected = if d == 1 { 1 } else { 1usize << distinct_prime_count(d) };
        Ok(units_with_square_one(2 * d)?.len() == expected)
    });
    outcome(
        "discriminant-automorphisms",
        "|O(A_<2d>)| = 2^{p(d)} for d >= 2, and 1 for d = 1",
        failure,
        format!("1 <= d <= {r}"),
    )
}

fn check_mukai(opts: &SelftestOptions) -> CheckResult {
    let r = opts.range_d;
    let failure = first_failure(1..=r, |d| {
        let vs = enumerate_mukai_vectors(pd(d));
        Ok(vs.iter().all(|v| v.is_isotropic() && v.is_primitive())
            && distinct_classes(&vs).len() as u64 == fm_count_rho1(pd(d)))
    });
    outcome(
        "mukai-classes",
        "vectors (r,h,s) with rs = d are isotropic, primitive, and form 2^{p(d)-1} swap classes",
        failure,
        format!("1 <= d <= {r}"),
    )
}

fn check_orbits(opts: &SelftestOptions) -> CheckResult {
    let r = opts.range_d;
    let failure = first_failure(1..=r, |d| {
        Ok(polarization_orbits_in_u(pd(d))?.count as u64 == fm_count_rho1(pd(d)))
    });
    outcome(
        "polarization-orbits",
        "primitive degree-2d vectors of U form 2^{p(d)-1} orbits under O(U)",
        failure,
        format!("1 <= d <= {r}"),
    )
}

fn check_shadow(opts: &SelftestOptions) -> CheckResult {
    let r = opts.shadow_d;
    let failure = first_failure(1..=r, |d| {
        let p = embed_polarized(pd(d));
        for v in enumerate_mukai_vectors(pd(d)) {
            if !p.shadow(&v)?.is_consistent() {
                return Ok(false);
            }
        }
        Ok(true)
    });
    outcome(
        "moduli-shadow",
        "v^perp/Zv is even unimodular of signature (3,19); NS and T identifications hold",
        failure,
        format!("1 <= d <= {r}"),
    )
}

fn check_closed_form() -> CheckResult {
    let failure = first_failure(1..=30, |d| {
        for n in 1..=30u64 {
            if num_integer::gcd(2 * d, n) != 1 {
                continue;
            }
            let m = make_member(d, n)?;
            let computed = discriminant_module(m.lattice())?;
            if computed.order() != BigInt::from(n * n) || (n > 1 && m.module().q_values()[0] != closed_form_q(d, n)) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    outcome(
        "rank2-closed-form",
        "A of L_{d,n} is cyclic of order n^2 with q = -2d/n^2",
        failure,
        "d, n <= 30".into(),
    )
}

fn check_necessity(opts: &SelftestOptions) -> CheckResult {
    let budget = SearchBudget::new(opts.oracle_entries, 10_000_000).expect("positive");
    let failure = first_failure(1..=6, |d1| {
        for n in [3u64, 5, 7] {
            for d2 in 1..=6u64 {
                if num_integer::gcd(2 * d1, n) != 1 || num_integer::gcd(2 * d2, n) != 1 {
                    continue;
                }
                let c = isometry_necessary_conditions(d1, d2, n)?;
                let found = matches!(
                    find_isometry_bounded(make_member(d1, n)?.lattice(), make_member(d2, n)?.lattice(), budget)?,
                    IsometrySearch::Found(_)
                );
                if found && !(c.a2 || c.b2) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    outcome(
        "isometry-necessity",
        "an isometry L_{d1,n} -> L_{d2,n} forces d1 = d2 or d1 d2 = 1 mod n",
        failure,
        format!("d1, d2 <= 6, n in {{3,5,7}}, entries <= {}", opts.oracle_entries),
    )
}

fn check_family() -> CheckResult {
    let run = || -> Result<Option<String>> {
        for ambient in [Ambient::K3, Ambient::Abelian] {
            let f = build_family(3, pd(1), ambient)?;
            let expected_rank = if ambient == Ambient::K3 { 20 } else { 4 };
            let ok = f.n == 83
                && f.witnesses.iter().all(|w| w.witness.verify())
                && f.certificates.iter().all(|c| c.certificate.verify())
                && f.attestations.len() == 3
                && f.attestations.iter().all(|a| a.attestation.rank == expected_rank)
                && f.polarization.square.0 == BigInt::from(2)
                && f.isotropic.iter().all(|z| z.primitive && z.square.0 == BigInt::from(0));
            if !ok {
                return Ok(Some(format!("{ambient:?} family is incomplete")));
            }
        }
        Ok(None)
    };
    let failure = run().unwrap_or_else(|e| Some(e.to_string()));
    outcome(
        "family",
        "3 members share a discriminant form, are pairwise non-isometric, and have isometric complements",
        failure,
        "N = 3, d = 1, n = 83".into(),
    )
}

fn check_gamma() -> CheckResult {
    let run = || -> Result<Option<String>> {
        for d in [2u64, 3, 6] {
            let p = embed_polarized(pd(d));
            gamma_complement_map(p.lambda(), &p.h_sublattice())?;
        }
        Ok(None)
    };
    let failure = run().unwrap_or_else(|e| Some(e.to_string()));
    outcome(
        "gamma",
        "A_V -> A_{V^perp} is an anti-isometry for <h> in the K3 lattice",
        failure,
        "d in {2,3,6}".into(),
    )
}

/// Runs every check; checks are independent and reported in a fixed order.
pub fn run_selftest(opts: &SelftestOptions) -> SelftestReport {
    let checks: Vec<Box<dyn Fn() -> CheckResult + Sync>> = vec![
        Box::new(|| check_builtins(opts)),
        Box::new(|| check_counts(opts)),
        Box::new(|| check_units(opts)),
        Box::new(|| check_mukai(opts)),
        Box::new(|| check_orbits(opts)),
        Box::new(|| check_shadow(opts)),
        Box::new(check_closed_form),
        Box::new(|| check_necessity(opts)),
        Box::new(check_family),
        Box::new(check_gamma),
    ];
    SelftestReport {
        checks: checks.par_iter().map(|c| c()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selftest_passes() {
        let opts = SelftestOptions {
            range_d: 20,
            shadow_d: 3,
            oracle_entries: 4,
            corrupt_builtin: false,
        };
        let r = run_selftest(&opts);
        assert!(r.passed(), "{:#?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }

    #[test]
    fn corrupted_builtin_is_reported() {
        let opts = SelftestOptions {
            corrupt_builtin: true,
            ..SelftestOptions::default()
        };
        let c = check_builtins(&opts);
        assert!(!c.passed);
        assert_eq!(c.name, "k3-lattice");
    }
}
