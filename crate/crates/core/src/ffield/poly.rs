//! Dense polynomials over a prime field `F_p`, coefficients low to high.
//!
//! Every function returns trimmed vectors: no trailing zeros, and the zero
//! polynomial is the empty vector.

use crate::arith::{mul_mod, pow_mod};

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn inv_scalar(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by the nonzero `b`.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = inv_scalar(b[db], p);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        let shift = dr - db;
        quo[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_scalar(a[d], p);
            a[..=d].iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `base^exp mod m` for a nonconstant modulus `m`.
pub fn pow_mod_poly(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm, if `gcd(a, m) = 1`.
pub fn inv_mod_poly(a: &[u64], m: &[u64], p: u64) -> Option<Poly> {
    let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, p));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quo, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&quo, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_scalar(r0[0], p);
    Some(rem(&s0.iter().map(|&x| mul_mod(x, c, p)).collect::<Vec<_>>(), m, p))
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg/2`. Returns `None` when that would exceed `limit` candidates.
pub fn irreducible_by_trial_division(f: &[u64], p: u64, limit: u64) -> Option<bool> {
    let k = degree(f)?;
    if k <= 1 {
        return Some(k == 1);
    }
    let mut total: u64 = 0;
    for d in 1..=k / 2 {
        total = total.checked_add(p.checked_pow(d as u32)?)?;
        if total > limit {
            return None;
        }
    }
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = digits(code, p, d);
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Ben-Or irreducibility test: `f` of degree `k` is irreducible iff
/// `gcd(x^(p^i) - x, f) = 1` for every `1 <= i <= k/2`.
pub fn irreducible_ben_or(f: &[u64], p: u64) -> bool {
    let Some(k) = degree(f) else { return false };
    if k <= 1 {
        return k == 1;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=k / 2 {
        h = pow_mod_poly(&h, p, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Base-`p` digits of `code`, exactly `len` of them, least significant first.
pub fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

pub fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}
