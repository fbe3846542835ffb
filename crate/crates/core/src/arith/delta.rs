//! `Δ_{p^r}` classification: every unit `u` satisfies `u^{p^r} = 1`.
//!
//! Each classifier runs the case analysis and, independently, a first
//! principles check (raw divisibility, the abelian Wedderburn factors, or
//! exhaustive enumeration when the ring is small enough) and compares them.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{gcd, is_fermat_prime, is_mersenne_prime, is_prime, ord_mod, prime_power};
use crate::error::{Error, Result};
use crate::ffield::field_make;
use crate::groupring::wedderburn_abelian;
use crate::groups::FiniteGroup;
use crate::joinring::JoinShape;
use crate::oracle::{exp_u1, is_delta_n, DeltaCheck, EnumerableRing, GroupRingOracle, JoinOracle, DEFAULT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    /// Needed an enumeration beyond the cap.
    Unknown,
}

impl Verdict {
    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum DeltaCase {
    /// `p = 2`, `q = 2^{2^n} + 1`.
    Fermat { n: u32 },
    /// `p = 2^a − 1`, `q = p + 1`.
    Mersenne { a: u32 },
    /// `p = 2^a − 1`, `q = 2`, `G = (Z/p)^s`.
    MersenneOverTwo { a: u32 },
    /// `p = 2`, `q = 3`, `exp(G) ∈ {4, 8}`.
    Three,
    /// `p = 2`, `q = 9`.
    Nine,
    /// `q = 2` as a field.
    Two,
    /// `p = q = 2`, `2^r ≥ exp(U_1(F_2[G]))`.
    NormalizedUnits,
    /// `q = 2`, `G` trivial, `p` odd and not Mersenne.
    TrivialOverTwo,
    /// The four join-ring conditions.
    JoinConditions,
    NoCase,
}

impl fmt::Display for DeltaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaCase::Fermat { .. } => f.write_str("Fermat case"),
            DeltaCase::Mersenne { .. } => f.write_str("Mersenne case"),
            DeltaCase::MersenneOverTwo { .. } => f.write_str("Mersenne case over F2"),
            DeltaCase::Three => f.write_str("q = 3 case"),
            DeltaCase::Nine => f.write_str("q = 9 case"),
            DeltaCase::Two => f.write_str("q = 2 case"),
            DeltaCase::NormalizedUnits => f.write_str("p = q = 2 normalized-unit case"),
            DeltaCase::TrivialOverTwo => f.write_str("trivial group over F2"),
            DeltaCase::JoinConditions => f.write_str("join conditions"),
            DeltaCase::NoCase => f.write_str("no case"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaClassification {
    pub subject: String,
    pub n: String,
    pub verdict: Verdict,
    pub case: DeltaCase,
    /// `m` when the ring is asserted to be a strict `Δ_m`-ring.
    pub strict: Option<u64>,
    /// Why the verdict is no or unknown.
    pub reason: Option<String>,
    /// Independent checks that were run and agreed, e.g. `"divisibility"`.
    pub checks: Vec<String>,
    /// Exhaustive answer, when the ring was small enough.
    pub oracle: Option<bool>,
    /// A unit with `u^{p^r} ≠ 1` found by enumeration, and its order.
    pub witness: Option<String>,
    pub witness_order: Option<u64>,
    /// Join rings only: the case-analysis verdict, which may differ from the
    /// enumerated one (see `verdict`).
    pub conditions_verdict: Option<Verdict>,
}

impl fmt::Display for DeltaClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        if self.case != DeltaCase::NoCase {
            write!(f, ": {}", self.case)?;
        }
        if let Some(m) = self.strict {
            write!(f, ", strict Δ_{m}")?;
        }
        if let Some(r) = &self.reason {
            write!(f, " ({r})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaOptions {
    /// Cap on enumerations needed by the case analysis itself (`exp U_1`).
    pub cap: u64,
    /// Rings up to this size are also enumerated as a cross-check; 0 disables.
    pub oracle_limit: u64,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        DeltaOptions { cap: DEFAULT_CAP, oracle_limit: 4096 }
    }
}

fn classification(subject: String, p: u64, r: u32) -> DeltaClassification {
    DeltaClassification {
        subject,
        n: format!("{p}^{r}"),
        verdict: Verdict::No,
        case: DeltaCase::NoCase,
        strict: None,
        reason: None,
        checks: Vec::new(),
        oracle: None,
        witness: None,
        witness_order: None,
        conditions_verdict: None,
    }
}

impl DeltaClassification {
    fn matched(mut self, case: DeltaCase, strict: Option<u64>) -> Self {
        self.verdict = Verdict::Yes;
        self.case = case;
        self.strict = strict;
        self
    }

    fn rejected(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::No;
        self.case = DeltaCase::NoCase;
        self.reason = Some(reason.into());
        self
    }

    fn unknown(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Unknown;
        self.case = DeltaCase::NoCase;
        self.reason = Some(reason.into());
        self
    }

    fn agree(&mut self, check: &str, first_principles: bool) -> Result<()> {
        if self.verdict != Verdict::Unknown && (self.verdict == Verdict::Yes) != first_principles {
            return Err(Error::Internal(format!(
                "{}: case analysis says {} but {check} says {}",
                self.subject,
                self.verdict,
                Verdict::from_bool(first_principles)
            )));
        }
        self.checks.push(check.to_string());
        Ok(())
    }

    fn record_oracle(&mut self, check: DeltaCheck) {
        self.oracle = Some(check.holds);
        self.witness = check.witness;
        self.witness_order = check.witness_order;
    }
}

fn validate(q: u64, p: u64, r: u32) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    Ok(())
}

/// `m | p^r` without forming `p^r`.
fn divides_prime_power(m: u64, p: u64, r: u32) -> bool {
    let (mut m, mut e) = (m, 0u32);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    m == 1 && e <= r
}

/// `2^r ≥ e` for a power of two `e`.
fn two_power_covers(r: u32, e: u64) -> bool {
    r >= 64 || (1u64 << r) >= e
}

/// `F_q` is `Δ_{p^r}` iff `q − 1 | p^r`; the cases enumerate the solutions.
pub fn classify_field_delta(q: u64, p: u64, r: u32) -> Result<DeltaClassification> {
    validate(q, p, r)?;
    let c = classification(format!("F{q}"), p, r);
    let mut c = if q == 2 {
        c.matched(DeltaCase::Two, None)
    } else if let (2, Some(n)) = (p, is_fermat_prime(q)) {
        if u64::from(r) >= 1u64 << n {
            c.matched(DeltaCase::Fermat { n }, Some(q - 1))
        } else {
            c.rejected(format!("needs r ≥ {}", 1u64 << n))
        }
    } else if let Some(a) = is_mersenne_prime(p).filter(|_| q == p + 1) {
        c.matched(DeltaCase::Mersenne { a }, Some(p))
    } else if p == 2 && q == 9 {
        if r >= 3 {
            c.matched(DeltaCase::Nine, Some(8))
        } else {
            c.rejected("needs r ≥ 3")
        }
    } else {
        c.rejected(format!("{} does not divide {p}^{r}", q - 1))
    };
    c.agree("divisibility", divides_prime_power(q - 1, p, r))?;
    Ok(c)
}

/// `exp(U_1(F_2[G]))`, by enumeration when feasible and otherwise, for
/// abelian `G`, as `exp(G)`.
fn normalized_unit_exponent(g: &Arc<FiniteGroup>, cap: u64) -> Result<Option<u64>> {
    let f2 = field_make(2, 1, None)?;
    match exp_u1(g, &f2, cap) {
        Ok(e) => Ok(Some(e)),
        Err(Error::CapExceeded { .. }) if g.is_abelian() => Ok(Some(g.exponent())),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn group_algebra_cases(
    c: DeltaClassification,
    q: u64,
    g: &Arc<FiniteGroup>,
    p: u64,
    r: u32,
    opts: &DeltaOptions,
) -> Result<DeltaClassification> {
    if !g.is_p_group(p) {
        return Ok(c.rejected(format!("{} is not a {p}-group", g.label())));
    }
    let exp = g.exponent();
    let abelian = g.is_abelian();
    if p == 2 && q == 2 {
        return Ok(match normalized_unit_exponent(g, opts.cap)? {
            None => c.unknown(format!("exp U_1(F2[{}]) needs more than {} enumerations", g.label(), opts.cap)),
            Some(e) if two_power_covers(r, e) => {
                c.matched(DeltaCase::NormalizedUnits, abelian.then_some(exp))
            }
            Some(e) => c.rejected(format!("exp U_1 = {e} > 2^{r}")),
        });
    }
    if let (2, Some(n)) = (p, is_fermat_prime(q)) {
        let bound = 1u64 << (1u64 << n);
        if u64::from(r) >= 1u64 << n && abelian && bound % exp == 0 {
            return Ok(c.matched(DeltaCase::Fermat { n }, Some(bound)));
        }
    }
    if let Some(a) = is_mersenne_prime(p) {
        if g.is_trivial() || g.is_elementary_abelian(p) {
            if q == p + 1 {
                return Ok(c.matched(DeltaCase::Mersenne { a }, Some(p)));
            }
            if q == 2 {
                return Ok(c.matched(DeltaCase::MersenneOverTwo { a }, None));
            }
        }
    }
    if p == 2 && q == 3 && r >= 3 && abelian && (exp == 4 || exp == 8) {
        return Ok(c.matched(DeltaCase::Three, None));
    }
    if p == 2 && q == 9 && r >= 3 && abelian && exp <= 8 {
        return Ok(c.matched(DeltaCase::Nine, Some(8)));
    }
    if q == 2 && g.is_trivial() {
        return Ok(c.matched(DeltaCase::TrivialOverTwo, None));
    }
    Ok(c.rejected("no case applies"))
}

/// `F_q[G]` is `Δ_{p^r}`.
pub fn classify_group_algebra_delta(
    q: u64,
    g: &Arc<FiniteGroup>,
    p: u64,
    r: u32,
    opts: &DeltaOptions,
) -> Result<DeltaClassification> {
    validate(q, p, r)?;
    let (ch, k) = prime_power(q).expect("validated");
    let field = field_make(ch, k, None)?;
    let c = classification(format!("F{q}[{}]", g.label()), p, r);
    let mut c = group_algebra_cases(c, q, g, p, r, opts)?;

    // First principles where the unit group is known in closed form.
    if !g.is_p_group(p) {
        c.agree("element orders", false)?;
    } else if gcd(g.order() as u64, ch) == 1 && g.is_abelian() {
        // Units are ∏ F_{q^{ord_d(q)}}^×, so the exponent is an lcm of q^t − 1.
        let w = wedderburn_abelian(g, &field)?;
        let holds = w.entries.iter().all(|e| {
            let t = ord_mod(e.d, q).expect("coprime");
            let m = q.checked_pow(t as u32).map(|v| v - 1);
            m.is_some_and(|m| divides_prime_power(m, p, r))
        });
        c.agree("wedderburn", holds)?;
    } else if gcd(g.order() as u64, ch) != 1 && q != 2 {
        // F_q^× sits inside the units and q − 1 > 1 is prime to p = char.
        c.agree("scalar units", divides_prime_power(q - 1, p, r))?;
    }

    let oracle = GroupRingOracle::new(&field, g);
    if within(&oracle, opts.oracle_limit) {
        let check = is_delta_n(&oracle, p_power(p, r)?, opts.oracle_limit)?;
        c.agree("enumeration", check.holds)?;
        c.record_oracle(check);
    }
    Ok(c)
}

fn within<R: EnumerableRing>(ring: &R, limit: u64) -> bool {
    crate::oracle::ring_size(ring).is_some_and(|n| n <= limit)
}

fn p_power(p: u64, r: u32) -> Result<u64> {
    p.checked_pow(r).ok_or_else(|| Error::InvalidArgument(format!("{p}^{r} overflows")))
}

/// `J_{G_1..G_d}(F_q)` is `Δ_{p^r}`.
///
/// For `d = 1` the ring is `F_q[G_1]`. For `d ≥ 2` the case analysis is the
/// conjunction of `p = q = 2`, all `G_i` 2-groups, at most one trivial
/// block, and `2^r ≥ max exp U_1(F_2[G_i])`. When the ring is small enough it
/// is also enumerated; enumeration is authoritative, and
/// `conditions_verdict` keeps the case-analysis answer. With exactly one
/// trivial block the conditions can hold while a unit of order `2^{r+1}`
/// exists, e.g. in `J_{Z/2,{e}}(F_2)` for `r = 1`.
pub fn classify_join_delta(shape: &Arc<JoinShape>, p: u64, r: u32, opts: &DeltaOptions) -> Result<DeltaClassification> {
    let q = shape.field().order();
    validate(q, p, r)?;
    if shape.d() == 1 {
        let mut c = classify_group_algebra_delta(q, &shape.groups()[0], p, r, opts)?;
        c.subject = shape.label();
        return Ok(c);
    }
    let c = classification(shape.label(), p, r);
    let groups = shape.groups();
    let mut c = if !(p == 2 && q == 2) {
        c.rejected("needs p = q = 2")
    } else if let Some(g) = groups.iter().find(|g| !g.is_p_group(2)) {
        c.rejected(format!("{} is not a 2-group", g.label()))
    } else if groups.iter().filter(|g| g.is_trivial()).count() > 1 {
        c.rejected("more than one trivial block")
    } else {
        let mut max = Some(1u64);
        for g in groups {
            max = match (max, normalized_unit_exponent(g, opts.cap)?) {
                (Some(m), Some(e)) => Some(m.max(e)),
                _ => None,
            };
        }
        match max {
            None => c.unknown("a block's exp U_1 is beyond the cap"),
            Some(e) if two_power_covers(r, e) => c.matched(DeltaCase::JoinConditions, None),
            Some(e) => c.rejected(format!("max exp U_1 = {e} > 2^{r}")),
        }
    };
    c.conditions_verdict = Some(c.verdict);

    let oracle = JoinOracle::new(shape);
    if within(&oracle, opts.oracle_limit) {
        let check = is_delta_n(&oracle, p_power(p, r)?, opts.oracle_limit)?;
        if c.verdict == Verdict::No && check.holds {
            return Err(Error::Internal(format!("{}: conditions fail but every unit satisfies u^{p}^{r} = 1", c.subject)));
        }
        if c.verdict == Verdict::Yes && !check.holds {
            c = c.rejected(format!(
                "the join conditions hold, but a unit of order {} exists",
                check.witness_order.unwrap_or(0)
            ));
        }
        c.checks.push("enumeration".into());
        c.record_oracle(check);
    }
    Ok(c)
}
