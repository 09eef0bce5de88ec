//! Small-integer number theory and `Q/Z`, `Q/2Z` arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Representative of `x mod m·Z` in `[0, m)`.
pub fn rational_mod(x: &Rational, m: i64) -> Rational {
    let m = Rational::from_integer(BigInt::from(m));
    let k = (x / &m).floor();
    x - k * m
}

/// Canonical representative of `x` in `Q/Z`, in `[0, 1)`.
pub fn mod_one(x: &Rational) -> Rational {
    rational_mod(x, 1)
}

/// Canonical representative of `x` in `Q/2Z`, in `[0, 2)`.
pub fn mod_two(x: &Rational) -> Rational {
    rational_mod(x, 2)
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Overflow(format!("{what} = {x} does not fit in 64 bits")))
}

pub fn to_i128(x: &BigInt, what: &str) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::Overflow(format!("{what} = {x} does not fit in 128 bits")))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime-power blocks `p^e` of `n`, ascending by prime.
pub fn prime_power_blocks(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Least prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> Result<u64> {
    let mut c = n.checked_add(1).ok_or_else(|| Error::Overflow("prime search".into()))?;
    while !is_prime(c) {
        c = c.checked_add(1).ok_or_else(|| Error::Overflow("prime search".into()))?;
    }
    Ok(c)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&BigInt::from(m)).to_u64()
}

/// All square roots of `c` modulo the odd prime `p`, ascending.
fn sqrt_mod_prime(c: u64, p: u64) -> Vec<u64> {
    let c = c % p;
    if c == 0 {
        return vec![0];
    }
    if pow_mod(c, (p - 1) / 2, p) != 1 {
        return Vec::new();
    }
    // Tonelli–Shanks
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
    let (mut m, mut cc, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(c, q, p), pow_mod(c, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(cc, 1 << (m - i - 1), p);
        m = i;
        cc = mul_mod(b, b, p);
        t = mul_mod(t, cc, p);
        r = mul_mod(r, b, p);
    }
    let mut roots = vec![r, p - r];
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Square roots of the unit `c` modulo `p²` for an odd prime `p`, ascending.
pub fn sqrt_mod_prime_squared(c: u64, p: u64) -> Result<Vec<u64>> {
    let p2 = p
        .checked_mul(p)
        .ok_or_else(|| Error::Overflow(format!("{p}^2")))?;
    let c = c % p2;
    let mut out = Vec::new();
    for r in sqrt_mod_prime(c % p, p) {
        if r == 0 {
            continue;
        }
        // Hensel: (r + t p)² ≡ c  (mod p²)  ⇔  2 r t ≡ (c - r²)/p  (mod p)
        let r2 = mul_mod(r, r, p2);
        let diff = (c + p2 - r2) % p2;
        debug_assert_eq!(diff % p, 0);
        let rhs = (diff / p) % p;
        let t = mul_mod(rhs, inv_mod(2 * r % p, p).expect("2r is a unit"), p);
        out.push(r + t * p);
    }
    out.sort_unstable();
    Ok(out)
}
