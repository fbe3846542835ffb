//! Hasse–Weil zeta functions of finite `F_q`-algebras as finite formal
//! products `∏_n (1 − t^n)^{e_n}` in `t = q^{-s}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::arith::{gcd, ord_mod};
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::groupring::{same_group, wedderburn_abelian};
use crate::groups::{quotient, FiniteGroup, Subgroup};
use crate::joinring::JoinShape;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    q: u64,
    factors: BTreeMap<u32, i64>,
}

impl ZetaFunction {
    /// The empty product over base `q`.
    pub fn one(q: u64) -> ZetaFunction {
        ZetaFunction { q, factors: BTreeMap::new() }
    }

    /// `(1 − t^n)^e` with zero exponents dropped.
    pub fn from_factors(q: u64, factors: impl IntoIterator<Item = (u32, i64)>) -> Result<ZetaFunction> {
        let mut z = Self::one(q);
        for (n, e) in factors {
            if n == 0 {
                return Err(Error::InvalidArgument("factor degrees start at 1".into()));
            }
            z.bump(n, e);
        }
        Ok(z)
    }

    fn bump(&mut self, n: u32, e: i64) {
        let slot = self.factors.entry(n).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&n);
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn factors(&self) -> &BTreeMap<u32, i64> {
        &self.factors
    }

    pub fn exponent(&self, n: u32) -> i64 {
        self.factors.get(&n).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &ZetaFunction) -> Result<ZetaFunction> {
        if self.q != other.q {
            return Err(Error::BaseMismatch(self.q, other.q));
        }
        let mut z = self.clone();
        for (&n, &e) in &other.factors {
            z.bump(n, e);
        }
        Ok(z)
    }

    /// Order of the pole at `s = 0`: each factor contributes `−e_n`.
    pub fn pole_order_at_zero(&self) -> i64 {
        -self.factors.values().sum::<i64>()
    }

    /// `Σ n · (−e_n)`, the dimension of a semisimple commutative algebra with this zeta.
    pub fn weighted_degree(&self) -> i64 {
        self.factors.iter().map(|(&n, &e)| -(n as i64) * e).sum()
    }

    /// Factor form in `t`, e.g. `(1-t)^-1 (1-t^2)^-1`.
    pub fn t_form(&self) -> String {
        self.render(|n| if n == 1 { "t".to_string() } else { format!("t^{n}") })
    }

    fn render(&self, term: impl Fn(u32) -> String) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(&n, &e)| {
                let base = format!("(1-{})", term(n));
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> Value {
        let factors: Map<String, Value> = self.factors.iter().map(|(n, e)| (n.to_string(), json!(e))).collect();
        json!({ "q": self.q, "factors": factors })
    }

    pub fn from_json(v: &Value) -> Result<ZetaFunction> {
        let bad = |what: &str| Error::Parse(format!("zeta JSON: {what}"));
        let q = v.get("q").and_then(Value::as_u64).ok_or_else(|| bad("missing q"))?;
        let obj = v.get("factors").and_then(Value::as_object).ok_or_else(|| bad("missing factors"))?;
        let mut factors = Vec::new();
        for (k, e) in obj {
            let n: u32 = k.parse().map_err(|_| bad("bad degree"))?;
            let e = e.as_i64().ok_or_else(|| bad("bad exponent"))?;
            if e == 0 {
                return Err(bad("zero exponents are not stored"));
            }
            factors.push((n, e));
        }
        Self::from_factors(q, factors)
    }
}

impl fmt::Display for ZetaFunction {
    /// `(1-2^-s)^-1 (1-2^-2s)^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.q;
        f.write_str(&self.render(|n| if n == 1 { format!("{q}^-s") } else { format!("{q}^-{n}s") }))
    }
}

pub fn zeta_mul(a: &ZetaFunction, b: &ZetaFunction) -> Result<ZetaFunction> {
    a.mul(b)
}

/// `ζ_{M_n(F_q)} = (1 − t)^{-1}` for every `n ≥ 1`.
pub fn zeta_matrix_ring(n: u64, q: u64) -> Result<ZetaFunction> {
    if n < 1 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    ZetaFunction::from_factors(q, [(1, -1)])
}

/// `∏_{d | |G|} (1 − t^{ord_d(q)})^{-a_d}` for abelian `G` prime to the characteristic.
pub fn zeta_abelian_group_ring(g: &FiniteGroup, field: &FieldCtx) -> Result<ZetaFunction> {
    let w = wedderburn_abelian(g, field)?;
    ZetaFunction::from_factors(field.order(), w.entries.iter().map(|e| (e.degree as u32, -(e.count as i64))))
}

/// `ζ_{F_q[G]} = ζ_{F_q[G/H]}` for a normal Sylow `p`-subgroup `H`, `p` the characteristic.
pub fn zeta_with_normal_sylow(g: &Arc<FiniteGroup>, h: &Subgroup, field: &FieldCtx) -> Result<ZetaFunction> {
    let p = field.characteristic();
    if !same_group(h.parent(), g) {
        return Err(Error::InvalidSubgroup("not a subgroup of this group".into()));
    }
    let n = g.order() as u64;
    let mut p_part = 1u64;
    while n % (p_part * p) == 0 {
        p_part *= p;
    }
    if h.order() as u64 != p_part || !h.is_normal() {
        return Err(Error::InvalidSubgroup(format!("not a normal Sylow {p}-subgroup")));
    }
    let quo = quotient(g, h)?;
    if !quo.group.is_abelian() {
        return Err(Error::Unsupported("the quotient by the Sylow subgroup is not abelian".into()));
    }
    zeta_abelian_group_ring(&quo.group, field)
}

/// Zeta of `F_q[G]` in every supported case: semisimple abelian, or modular
/// with a normal Sylow subgroup and abelian quotient.
pub fn zeta_group_algebra(g: &Arc<FiniteGroup>, field: &FieldCtx) -> Result<ZetaFunction> {
    let p = field.characteristic();
    if gcd(g.order() as u64, p) == 1 {
        return match zeta_abelian_group_ring(g, field) {
            Err(Error::NonAbelian) => Err(Error::Unsupported(format!(
                "{} is non-abelian and prime to the characteristic",
                g.label()
            ))),
            other => other,
        };
    }
    let h = Subgroup::normal_sylow(g, p)
        .ok_or_else(|| Error::Unsupported(format!("{} has no normal Sylow {p}-subgroup", g.label())))?;
    zeta_with_normal_sylow(g, &h, field)
}

/// Zeta of the semimagic-square algebra `SM_n(F_q)`.
pub fn zeta_semimagic(n: u64, field: &FieldCtx) -> Result<ZetaFunction> {
    let e = match n {
        0 => return Err(Error::InvalidArgument("n must be at least 1".into())),
        1 => -1,
        2 if field.characteristic() == 2 => -1,
        _ => -2,
    };
    ZetaFunction::from_factors(field.order(), [(1, e)])
}

/// `ζ_J = (1 − t)^{r − 1} ∏ ζ_{F_q[G_i]}` with `r` the number of non-modular
/// blocks. When every block is modular the semisimplification is the plain
/// product of the blocks' semisimplifications and the prefactor is 1.
pub fn zeta_join(shape: &JoinShape) -> Result<ZetaFunction> {
    let q = shape.field().order();
    let r = shape.r() as i64;
    let mut z = ZetaFunction::from_factors(q, [(1, if r >= 1 { r - 1 } else { 0 })])?;
    for g in shape.groups() {
        z = z.mul(&zeta_group_algebra(g, shape.field())?)?;
    }
    Ok(z)
}

/// Pole order of `ζ_{F_q[Z/p]}` read off the factorization: `1 + (p − 1)/ord_p(q)`.
pub fn rooted_pole_order(p: u64, q: u64) -> Result<i64> {
    let n = ord_mod(p, q)?;
    Ok(1 + ((p - 1) / n) as i64)
}
