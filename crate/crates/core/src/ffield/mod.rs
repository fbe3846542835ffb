//! Exact arithmetic in finite fields `F_{p^k}`.
//!
//! An element is stored as its integer code `Σ c_i p^i`, where `c_i` are the
//! coefficients of the reduced polynomial representative. The code of an
//! integer `n` of the prime subfield is `n mod p`, so `0` and `1` are the
//! additive and multiplicative identities in every field.
//!
//! The ring modules work directly on codes through the raw methods of
//! [`FieldCtx`]; [`FieldElement`] is the checked, context-carrying wrapper.

pub mod poly;

use std::fmt;
use std::sync::Arc;

use crate::arith::{factorize, is_prime, mul_mod, pow_mod, prime_power};
use crate::error::{Error, Result};

/// Fields up to this size get log/exp tables.
pub const TABLE_LIMIT: u64 = 1 << 16;
/// Largest admissible characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 32;
/// Largest admissible field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 62;
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

#[derive(Debug)]
struct LogTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// The field `F_{p^k} = F_p[x]/(modulus)`.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    canonical: bool,
    unit_order_factors: Vec<(u64, u32)>,
    tables: Option<LogTables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds `F_{p^k}`; with no modulus the lexicographically smallest monic
/// irreducible polynomial of degree `k` is used.
pub fn field_make(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Arc<FieldCtx>> {
    FieldCtx::new(p, k, modulus).map(Arc::new)
}

impl FieldCtx {
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::FieldTooLarge(format!("characteristic {p} >= 2^32")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{k} exceeds 2^62")))?;
        let canonical_modulus = canonical_modulus(p, k as usize);
        let (modulus, canonical) = match modulus {
            None => (canonical_modulus, true),
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {k}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficient out of range mod {p}")));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::InvalidModulus(format!(
                        "{} is reducible over F_{p}",
                        format_poly(&m)
                    )));
                }
                let canonical = m == canonical_modulus;
                (m, canonical)
            }
        };
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            canonical,
            unit_order_factors: factorize(q - 1),
            tables: None,
        };
        if k > 1 && q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// Parses `F<q>`, optionally followed by `/(<polynomial>)` for an explicit modulus.
    pub fn parse_spec(spec: &str) -> Result<Arc<FieldCtx>> {
        let s = spec.trim();
        let body = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("field spec must look like F<q>: {s:?}")))?;
        let (size, modulus) = match body.split_once('/') {
            None => (body, None),
            Some((size, m)) => {
                let m = m.trim();
                let m = m.strip_prefix('(').and_then(|m| m.strip_suffix(')')).unwrap_or(m);
                (size, Some(m))
            }
        };
        let q: u64 = size
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field size in {s:?}")))?;
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = match modulus {
            None => None,
            Some(m) => {
                let coeffs = parse_poly(m, p)?;
                let mut padded = coeffs;
                padded.resize(padded.len().max(k as usize + 1), 0);
                Some(padded)
            }
        };
        field_make(p, k, modulus)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients of the defining polynomial, low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `F<q>`, or `F<q>/(<modulus>)` for a non-canonical model.
    pub fn label(&self) -> String {
        if self.canonical {
            format!("F{}", self.q)
        } else {
            format!("F{}/({})", self.q, format_poly(&self.modulus))
        }
    }

    fn build_tables(&self) -> LogTables {
        let n = self.q - 1;
        let generator = (2..self.q)
            .find(|&g| self.order_of_code(g) == n)
            .expect("a finite field has a primitive element");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u64;
        for i in 0..n {
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.poly_mul(x, generator);
        }
        LogTables { exp, log }
    }

    pub fn digits(&self, code: u64) -> Vec<u64> {
        poly::digits(code, self.p, self.k as usize)
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        poly::from_digits(d, self.p)
    }

    /// Code of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Image of a nonnegative integer, e.g. a group order.
    pub fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let (mut out, mut place) = (0u64, 1u64);
            while a > 0 || b > 0 {
                let d = (a % self.p + b % self.p) % self.p;
                out += d * place;
                place *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let mut a = a;
            let (mut out, mut place) = (0u64, 1u64);
            while a > 0 {
                out += ((self.p - a % self.p) % self.p) * place;
                place *= self.p;
                a /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return mul_mod(a, b, self.p);
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
                let n = self.q - 1;
                t.exp[(if s >= n { s - n } else { s }) as usize]
            }
            None => self.poly_mul(a, b),
        }
    }

    /// Multiplication through polynomial reduction, bypassing the tables.
    pub fn poly_mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return mul_mod(a, b, self.p);
        }
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        self.reduce(&prod)
    }

    /// Reduces an arbitrary polynomial modulo the defining polynomial.
    pub fn reduce(&self, f: &[u64]) -> u64 {
        let f: Vec<u64> = f.iter().map(|&c| c % self.p).collect();
        let r = if self.k == 1 {
            // F_p[x]/(x - c): evaluate at the root.
            let root = (self.p - self.modulus[0]) % self.p;
            vec![f.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, root, self.p) + c) % self.p)]
        } else {
            poly::rem(&f, &self.modulus, self.p)
        };
        poly::from_digits(&r, self.p)
    }

    /// Inverse of a nonzero code.
    #[inline]
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                let l = t.log[a as usize] as u64;
                Some(t.exp[((n - l) % n) as usize])
            }
            None => self.inv_euclid(a),
        }
    }

    /// Inverse by the extended Euclidean algorithm on representatives.
    pub fn inv_euclid(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            let (mut r0, mut r1) = (self.p as i128, a as i128);
            let (mut s0, mut s1) = (0i128, 1i128);
            while r1 != 0 {
                let quo = r0 / r1;
                (r0, r1) = (r1, r0 - quo * r1);
                (s0, s1) = (s1, s0 - quo * s1);
            }
            return Some(s0.rem_euclid(self.p as i128) as u64);
        }
        let inv = poly::inv_mod_poly(&poly::trim(self.digits(a)), &self.modulus, self.p)?;
        Some(poly::from_digits(&inv, self.p))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let n = (self.q - 1) as u128;
            let l = (t.log[a as usize] as u128 * e as u128) % n;
            return t.exp[l as usize];
        }
        if self.k == 1 {
            return pow_mod(a, e, self.p);
        }
        let (mut acc, mut base, mut e) = (1u64, a, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(acc, base);
            }
            base = self.poly_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn order_of_code(&self, a: u64) -> u64 {
        let mut t = self.q - 1;
        for &(ell, _) in &self.unit_order_factors {
            while t % ell == 0 && self.pow(a, t / ell) == 1 {
                t /= ell;
            }
        }
        t
    }

    /// Multiplicative order of a nonzero code.
    pub fn mult_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(self.order_of_code(a))
    }

    /// Canonical printing of a code as a polynomial in `x`.
    pub fn format(&self, code: u64) -> String {
        format_poly(&self.digits(code))
    }

    /// Parses a polynomial in `x` and reduces it into the field.
    pub fn parse_element(&self, s: &str) -> Result<u64> {
        let f = parse_poly(s, self.p)?;
        if self.k == 1 && f.len() > 1 {
            return Err(Error::Parse(format!(
                "{s:?}: prime-field elements are integers"
            )));
        }
        Ok(self.reduce(&f))
    }

    pub fn element(self: &Arc<Self>, code: u64) -> FieldElement {
        FieldElement { ctx: Arc::clone(self), code: code % self.q.max(1) }
    }
}

fn canonical_modulus(p: u64, k: usize) -> Vec<u64> {
    let count = p.saturating_pow(k as u32);
    for code in 0..count {
        let mut f = poly::digits(code, p, k);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Irreducibility over `F_p`: trial division at desk scale, Ben-Or beyond it.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    poly::irreducible_by_trial_division(f, p, TRIAL_DIVISION_LIMIT)
        .unwrap_or_else(|| poly::irreducible_ben_or(f, p))
}

/// Formats low-to-high coefficients as `2x^2+x+1`.
pub fn format_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (e, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (e, 1) => format!("x^{e}"),
            (e, c) => format!("{c}x^{e}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parses `x^2+x+1`, `2*x^3 - x + 4` and similar; coefficients reduced mod `p`.
pub fn parse_poly(s: &str, p: u64) -> Result<Vec<u64>> {
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<i128> = Vec::new();
    let mut chars = src.chars().peekable();
    let mut first = true;
    while chars.peek().is_some() {
        let mut sign = 1i128;
        match chars.peek() {
            Some('+') if !first => {
                chars.next();
            }
            Some('-') => {
                sign = -1;
                chars.next();
            }
            _ if !first => return Err(Error::Parse(format!("expected + or - in {s:?}"))),
            _ => {}
        }
        first = false;
        let mut num = String::new();
        while let Some(&c) = chars.peek() {
            if c.is_ascii_digit() {
                num.push(c);
                chars.next();
            } else {
                break;
            }
        }
        if chars.peek() == Some(&'*') {
            chars.next();
            if chars.peek() != Some(&'x') {
                return Err(Error::Parse(format!("expected x after * in {s:?}")));
            }
        }
        let coeff: i128 = if num.is_empty() {
            1
        } else {
            num.parse().map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?
        };
        let mut exp = 0usize;
        if chars.peek() == Some(&'x') {
            chars.next();
            exp = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut e = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        e.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                exp = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            }
        } else if num.is_empty() {
            return Err(Error::Parse(format!("unexpected character in {s:?}")));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coeff;
    }
    let out: Vec<u64> = coeffs
        .into_iter()
        .map(|c| c.rem_euclid(p as i128) as u64)
        .collect();
    Ok(out)
}

/// An element of a finite field together with its context.
#[derive(Clone, Debug)]
pub struct FieldElement {
    ctx: Arc<FieldCtx>,
    code: u64,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.ctx, &other.ctx) && self.code == other.code
    }
}

impl Eq for FieldElement {}

pub(crate) fn same_field(a: &Arc<FieldCtx>, b: &Arc<FieldCtx>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
}

/// Applies `op`; for `Pow(n)` the second operand is ignored.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Pow(n) => Ok(a.pow(n)),
    }
}

impl FieldElement {
    /// Builds an element from its polynomial coefficients (low to high),
    /// reducing modulo the defining polynomial if needed.
    pub fn new(ctx: &Arc<FieldCtx>, coeffs: &[u64]) -> Result<Self> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= ctx.p) {
            return Err(Error::InvalidArgument(format!("coefficient {c} out of range mod {}", ctx.p)));
        }
        Ok(ctx.element(ctx.reduce(coeffs)))
    }

    pub fn from_code(ctx: &Arc<FieldCtx>, code: u64) -> Result<Self> {
        if code >= ctx.q {
            return Err(Error::InvalidArgument(format!("code {code} out of range")));
        }
        Ok(ctx.element(code))
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> Self {
        ctx.element(ctx.from_int(n))
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        ctx.element(0)
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        ctx.element(1)
    }

    pub fn parse(ctx: &Arc<FieldCtx>, s: &str) -> Result<Self> {
        Ok(ctx.element(ctx.parse_element(s)?))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.ctx.digits(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ctx.element(self.ctx.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ctx.element(self.ctx.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ctx.element(self.ctx.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let inv = other.inverse()?;
        self.mul(&inv)
    }

    pub fn neg(&self) -> Self {
        self.ctx.element(self.ctx.neg(self.code))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.ctx.element(self.ctx.pow(self.code, e))
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.ctx.inv_euclid(self.code).ok_or(Error::DivisionByZero)?;
        Ok(self.ctx.element(inv))
    }

    pub fn mult_order(&self) -> Result<u64> {
        self.ctx.mult_order(self.code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.format(self.code))
    }
}
