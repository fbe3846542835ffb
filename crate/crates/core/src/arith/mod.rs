//! Elementary number theory plus the rooted-prime and `Δ_n` classifiers.
//!
//! All integer routines here are deterministic. Primality is trial division,
//! which is the intended regime: characteristics below 2^32 and group orders
//! in the hundreds.

mod delta;
mod rooted;

pub use delta::{
    classify_field_delta, classify_group_algebra_delta, classify_join_delta, DeltaCase,
    DeltaClassification, DeltaOptions, Verdict,
};
pub use rooted::{
    is_q_rooted, rooted_equivalence_report, trivial_unit_count_of_order_p,
    units_of_order_p_expected, RootedReport,
};

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization in increasing order of primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Sorted list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Writes `q = p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// `true` iff `n` is a (possibly zeroth) power of the prime `p`.
pub fn is_power_of(n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Multiplicative order of `q` modulo `d`: least `t >= 1` with `q^t ≡ 1 (mod d)`.
pub fn ord_mod(d: u64, q: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if d == 1 {
        return Ok(1);
    }
    if gcd(q % d, d) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({q}, {d}) != 1")));
    }
    let mut t = euler_phi(d);
    for (ell, _) in factorize(t) {
        while t % ell == 0 && pow_mod(q, t / ell, d) == 1 {
            t /= ell;
        }
    }
    Ok(t)
}

/// Exact `base^exp`.
pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n - q^i)`; equal to 1 for `n = 0`.
pub fn gl_order(n: u64, q: u64) -> BigUint {
    let qn = big_pow(q, n);
    (0..n).fold(BigUint::from(1u32), |acc, i| acc * (&qn - big_pow(q, i)))
}

/// Returns `a` when `p = 2^a - 1` is a Mersenne prime.
pub fn is_mersenne_prime(p: u64) -> Option<u32> {
    if !is_prime(p) {
        return None;
    }
    let m = p.checked_add(1)?;
    m.is_power_of_two().then(|| m.trailing_zeros())
}

/// Returns `n` when `q = 2^(2^n) + 1` is a Fermat prime.
pub fn is_fermat_prime(q: u64) -> Option<u32> {
    if !is_prime(q) || q < 3 {
        return None;
    }
    let m = q - 1;
    if !m.is_power_of_two() {
        return None;
    }
    let e = m.trailing_zeros();
    e.is_power_of_two().then(|| e.trailing_zeros())
}
