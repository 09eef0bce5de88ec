//! Acceptance suite: nine end-to-end criteria, each at its stated tolerance
//! and time limit. Prints one PASS/FAIL line per criterion.
//!
//! Expected values come from small independent oracles written here (trial
//! division, brute-force unit scans, hand-computed quadratic values), never
//! from the closed forms under test.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use latfm::finite_form::{discriminant_module, gamma_complement_map, FiniteQuadraticModule};
use latfm::fm_count::{fm_count_rho1, fm_count_rho1_via_cosets, PolarizationDegree};
use latfm::lattice::{Lattice, Signature};
use latfm::mukai::{distinct_classes, embed_polarized, enumerate_mukai_vectors};
use latfm::oracle::{find_isometry_bounded, units_with_square_one, IsometrySearch, SearchBudget};
use latfm::rank2::{build_family, isometry_necessary_conditions, make_member, polarization_orbits_in_u, Ambient};

type Outcome = Result<String, String>;

fn pd(d: u64) -> PolarizationDegree {
    PolarizationDegree::new(d).unwrap()
}

/// Distinct prime divisors by trial division, with the convention p(1) = 1.
fn p_oracle(d: u64) -> u32 {
    if d == 1 {
        return 1;
    }
    let (mut n, mut k, mut count) = (d, 2, 0);
    while k * k <= n {
        if n % k == 0 {
            count += 1;
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    count + u32::from(n > 1)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mod2(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    x - (x / &two).floor() * two
}

fn mod1(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn criterion_1() -> Outcome {
    for d in 1..=200u64 {
        let expected = 1u64 << (p_oracle(d) - 1);
        let closed = fm_count_rho1(pd(d));
        let cosets = fm_count_rho1_via_cosets(pd(d)).map_err(|e| e.to_string())?;
        ensure(closed == expected && cosets == expected, || {
            format!("d = {d}: closed {closed}, cosets {cosets}, expected {expected}")
        })?;
    }
    Ok("1 <= d <= 200".into())
}

fn criterion_2() -> Outcome {
    for d in 1..=200u64 {
        let m = 2 * d;
        let brute: Vec<u64> = (0..m)
            .filter(|&a| a.gcd(&m) == 1 && (a * a) % (4 * d) == 1 % (4 * d))
            .collect();
        let expected = if d == 1 { 1 } else { 1usize << p_oracle(d) };
        let units = units_with_square_one(m).map_err(|e| e.to_string())?;
        ensure(brute.len() == expected && units == brute, || {
            format!("d = {d}: library {units:?}, brute force {brute:?}, expected size {expected}")
        })?;
    }
    Ok("1 <= d <= 200".into())
}

fn criterion_3() -> Outcome {
    let mut counts = Vec::new();
    for d in [1u64, 8, 15, 30, 210] {
        let vs = enumerate_mukai_vectors(pd(d));
        for v in &vs {
            let square = 2 * d as i128 * (v.h_mult as i128).pow(2) - 2 * v.r as i128 * v.s as i128;
            let content = v.r.gcd(&v.h_mult).gcd(&v.s);
            ensure(square == 0 && content == 1, || format!("d = {d}: {v} has square {square}, content {content}"))?;
        }
        counts.push(distinct_classes(&vs).len());
    }
    ensure(counts == [1, 1, 2, 4, 8], || format!("class counts {counts:?}"))?;
    Ok(format!("class counts {counts:?}"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for d in 1..=30u64 {
        let p = embed_polarized(pd(d));
        for v in enumerate_mukai_vectors(pd(d)) {
            let sh = p.shadow(&v).map_err(|e| format!("{v}: {e}"))?;
            let l = &sh.quotient.lattice;
            ensure(
                l.rank() == 22
                    && l.is_even()
                    && l.determinant().magnitude().is_one()
                    && l.signature() == Signature::new(3, 19),
                || format!("d = {d}, {v}: quotient invariants {:?}", sh.summary()),
            )?;
            ensure(sh.ns_square == BigInt::from(2 * d), || format!("d = {d}, {v}: ns^2 = {}", sh.ns_square))?;
            // T is the complement of NS, and carries the Gram matrix of h^perp
            let ns = l.sublattice(std::slice::from_ref(&sh.ns_generator)).map_err(|e| e.to_string())?;
            ensure(sh.transcendental.same_sublattice(&ns.orthogonal_complement()), || {
                format!("d = {d}, {v}: T image is not NS^perp")
            })?;
            ensure(
                sh.transcendental.induced_gram() == p.transcendental().induced_gram(),
                || format!("d = {d}, {v}: T image Gram differs from h^perp"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} vectors, d <= 30"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for d in 1..=30u64 {
        for n in 1..=30u64 {
            if (2 * d).gcd(&n) != 1 {
                continue;
            }
            let member = make_member(d, n).map_err(|e| format!("({d},{n}): {e}"))?;
            let snf = discriminant_module(member.lattice()).map_err(|e| e.to_string())?;
            let n2 = BigInt::from(n * n);
            ensure(snf.order() == n2 && (n == 1 || snf.is_cyclic()), || {
                format!("({d},{n}): Smith form gives factors {:?}", snf.factors())
            })?;
            if n == 1 {
                continue;
            }
            // q of the generator (1/n, -2d/n^2) evaluated directly on the Gram matrix
            let g0 = BigRational::new(BigInt::one(), BigInt::from(n));
            let g1 = BigRational::new(BigInt::from(-2 * d as i64), n2.clone());
            let direct = &g0 * &g0 * BigRational::from_integer(BigInt::from(2 * d))
                + &g0 * &g1 * BigRational::from_integer(BigInt::from(2 * n));
            let expected = mod2(&BigRational::new(BigInt::from(-2 * d as i64), n2.clone()));
            ensure(mod2(&direct) == expected && member.module().q_values()[0] == expected, || {
                format!("({d},{n}): q = {direct}, closed form {}", member.module().q_values()[0])
            })?;
            // the Smith-form generator has q = a^2 q(g) for a unit a
            let snf_q = snf.q_values()[0].clone();
            let nn = n * n;
            let hit = (1..nn).filter(|a| a.gcd(&n) == 1).any(|a| {
                let a2 = BigRational::from_integer(BigInt::from(a * a));
                mod2(&(a2 * &expected)) == snf_q
            });
            ensure(hit, || format!("({d},{n}): Smith q {snf_q} is not a unit square multiple of {expected}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs (d, n) with n > 1"))
}

fn criterion_6() -> Outcome {
    let budget = SearchBudget::new(50, 10_000_000).map_err(|e| e.to_string())?;
    let (mut found, mut certified) = (0, 0);
    for n in [3u64, 5, 7] {
        for d1 in 1..=6u64 {
            for d2 in 1..=6u64 {
                if (2 * d1).gcd(&n) != 1 || (2 * d2).gcd(&n) != 1 {
                    continue;
                }
                let l1 = make_member(d1, n).map_err(|e| e.to_string())?;
                let l2 = make_member(d2, n).map_err(|e| e.to_string())?;
                let search = find_isometry_bounded(l1.lattice(), l2.lattice(), budget).map_err(|e| e.to_string())?;
                let witness = matches!(search, IsometrySearch::Found(_));
                let a2 = d1 % n == d2 % n;
                let b2 = (d1 * d2) % n == 1;
                let c = isometry_necessary_conditions(d1, d2, n).map_err(|e| e.to_string())?;
                ensure(c.a2 == a2 && c.b2 == b2, || format!("({d1},{d2},{n}): congruences"))?;
                if witness {
                    found += 1;
                    ensure(a2 || b2, || format!("({d1},{d2},{n}): witness without a2 or b2"))?;
                }
                if let Some(cert) = c.certificate {
                    certified += 1;
                    ensure(cert.verify() && !witness, || format!("({d1},{d2},{n}): certified pair has a witness"))?;
                }
            }
        }
    }
    Ok(format!("{found} witnesses, {certified} certificates"))
}

fn criterion_7() -> Outcome {
    for (ambient, rank, sig) in [
        (Ambient::K3, 20, Signature::new(2, 18)),
        (Ambient::Abelian, 4, Signature::new(2, 2)),
    ] {
        let f = build_family(3, pd(1), ambient).map_err(|e| e.to_string())?;
        ensure(f.n == 83, || format!("n = {}", f.n))?;
        let ds: Vec<u64> = f.members.iter().map(|m| m.d()).collect();
        ensure(ds == [1, 4, 9], || format!("members {ds:?}"))?;
        ensure(f.witnesses.len() == 3 && f.certificates.len() == 3 && f.attestations.len() == 3, || {
            "expected three of each pairwise object".into()
        })?;
        for w in &f.witnesses {
            let (d1, d2, a) = (w.witness.d1, w.witness.d2, w.witness.alpha);
            ensure((d1 * a * a) % (83 * 83) == d2 % (83 * 83) && a % 83 != 0, || format!("alpha {a} for {d1}, {d2}"))?;
        }
        for c in &f.certificates {
            let (d1, d2) = (c.certificate.d1, c.certificate.d2);
            ensure(d1 % 83 != d2 % 83 && (d1 * d2) % 83 != 1, || format!("certificate {d1}, {d2}"))?;
        }
        for a in &f.attestations {
            let a = &a.attestation;
            ensure(a.rank == rank && a.signature == sig && a.rank >= 2 + a.ell, || format!("attestation {a:?}"))?;
        }
        ensure(f.polarization.member == 1 && f.polarization.square.0 == BigInt::from(2), || {
            "member 1 does not represent 2".into()
        })?;
        for (k, m) in f.members.iter().enumerate() {
            let z = m.isotropic_vector();
            let content = z.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            ensure(m.lattice().norm(&z).is_zero() && content.is_one(), || format!("member {} has no primitive zero", k + 1))?;
        }
    }
    Ok("n = 83, K3 and abelian ambients".into())
}

fn criterion_8() -> Outcome {
    for d in 1..=200u64 {
        // brute-force orbit count: unordered coprime factorizations d = ab
        let expected = (1..=d).filter(|&a| d % a == 0 && a <= d / a && a.gcd(&(d / a)) == 1).count();
        let o = polarization_orbits_in_u(pd(d)).map_err(|e| e.to_string())?;
        ensure(o.count == expected && expected as u64 == 1u64 << (p_oracle(d) - 1), || {
            format!("d = {d}: {} orbits, expected {expected}", o.count)
        })?;
        ensure(o.orbits.iter().all(|orb| orb.len() <= 4), || format!("d = {d}: orbit larger than |O(U)|"))?;
    }
    Ok("1 <= d <= 200".into())
}

fn check_gamma(lattice: &Lattice, v: &latfm::SublatticeEmbedding, what: &str) -> Result<(), String> {
    let g = gamma_complement_map(lattice, v).map_err(|e| format!("{what}: {e}"))?;
    let (src, dst): (&FiniteQuadraticModule, &FiniteQuadraticModule) = (&g.source, &g.target);
    let images = g.map.images();
    for i in 0..src.factors().len() {
        let sum = dst.q_of(&images[i]) + &src.q_values()[i];
        ensure(mod2(&sum).is_zero(), || format!("{what}: q(γ e{i}) + q(e{i}) = {sum}"))?;
        for j in 0..src.factors().len() {
            let sum = dst.b_of(&images[i], &images[j]) + &src.b_values()[i][j];
            ensure(mod1(&sum).is_zero(), || format!("{what}: b(γ e{i}, γ e{j}) + b(e{i}, e{j}) = {sum}"))?;
        }
    }
    ensure(src.order() == dst.order(), || format!("{what}: orders differ"))
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    for d in [2u64, 3, 6] {
        let p = embed_polarized(pd(d));
        check_gamma(p.lambda(), &p.h_sublattice(), &format!("<h> with d = {d}"))?;
        count += 1;
    }
    for d in 1..=4u64 {
        for n in [1u64, 3, 5, 7, 9] {
            if (2 * d).gcd(&n) != 1 {
                continue;
            }
            let m = make_member(d, n).map_err(|e| e.to_string())?;
            let e = m.embedding();
            check_gamma(e.ambient(), e, &format!("S_{{{d},{n}}}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} embeddings"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("1 FM count closed form vs double cosets", criterion_1, Some(Duration::from_secs(5))),
        ("2 |O(A_<2d>)| by unit enumeration", criterion_2, None),
        ("3 Mukai enumeration and swap classes", criterion_3, Some(Duration::from_secs(1))),
        ("4 moduli lattice shadow", criterion_4, Some(Duration::from_secs(30))),
        ("5 L_{d,n} closed form vs Smith form", criterion_5, Some(Duration::from_secs(5))),
        ("6 oracle never contradicts necessity", criterion_6, Some(Duration::from_secs(120))),
        ("7 family pipeline, N = 3, d = 1", criterion_7, Some(Duration::from_secs(10))),
        ("8 polarization orbits in U", criterion_8, Some(Duration::from_secs(5))),
        ("9 gamma is an anti-isometry", criterion_9, None),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match (&result, limit) {
            (Err(e), _) => Err(e.clone()),
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (Ok(s), _) => Ok(s.clone()),
        };
        match &verdict {
            Ok(s) => println!("PASS  criterion {name}  ({s}; {elapsed:.2?})"),
            Err(e) => {
                println!("FAIL  criterion {name}  ({e}; {elapsed:.2?})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
