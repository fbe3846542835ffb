//! Rooted primes and the equivalent descriptions of the rooted case for
//! cyclic blocks of prime order.

use serde::Serialize;

use super::{is_prime, ord_mod};
use crate::error::{Error, Result};
use crate::ffield::field_make;
use crate::groups::FiniteGroup;
use crate::joinring::{join_unit_count, join_unit_count_rooted_formula, JoinShape};
use crate::zeta::zeta_join;

fn check_distinct_primes(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p == q {
        return Err(Error::InvalidArgument(format!("p and q must differ (both {p})")));
    }
    Ok(())
}

/// `p` is `q`-rooted when `q` generates `F_p^×`, i.e. `ord_p(q) = p − 1`.
pub fn is_q_rooted(p: u64, q: u64) -> Result<bool> {
    check_distinct_primes(p, q)?;
    Ok(ord_mod(p, q)? == p - 1)
}

/// Number of trivial units `αg` of `F_q[Z/p]` with `(αg)^p = 1`, `αg ≠ 1`.
pub fn trivial_unit_count_of_order_p(p: u64, q: u64) -> Result<u64> {
    check_distinct_primes(p, q)?;
    Ok(if (q - 1) % p == 0 { p * p - 1 } else { p - 1 })
}

/// Number of units of order `p` in `F_q[Z/p]`, read off
/// `F_q[Z/p]^× ≅ Z/(q−1) × (Z/(q^n − 1))^m` with `n = ord_p(q)` and
/// `m = (p − 1)/n`.
pub fn units_of_order_p_expected(p: u64, q: u64) -> Result<u64> {
    check_distinct_primes(p, q)?;
    let m = ((p - 1) / ord_mod(p, q)?) as u32;
    let e = if (q - 1) % p == 0 { m + 1 } else { m };
    p.checked_pow(e)
        .map(|v| v - 1)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} overflows")))
}

/// The three equivalent conditions for `J_{Z/p_1,…,Z/p_d}(F_q)`, each
/// evaluated by its own code path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedReport {
    pub primes: Vec<u64>,
    pub q: u64,
    /// `ord_{p_i}(q) = p_i − 1`, per prime.
    pub rooted: Vec<bool>,
    pub all_rooted: bool,
    pub pole_order: i64,
    pub expected_pole_order: i64,
    pub pole_condition: bool,
    /// Decimal strings; these overflow `u64` quickly.
    pub unit_count: String,
    pub formula_value: String,
    pub unit_condition: bool,
    pub agreement: bool,
}

/// Evaluates all three conditions and fails with an internal error if they
/// disagree.
pub fn rooted_equivalence_report(primes: &[u64], q: u64) -> Result<RootedReport> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("at least one prime is required".into()));
    }
    let rooted = primes.iter().map(|&p| is_q_rooted(p, q)).collect::<Result<Vec<bool>>>()?;
    let field = field_make(q, 1, None)?;
    let groups = primes.iter().map(|&p| FiniteGroup::cyclic(p)).collect::<Result<Vec<_>>>()?;
    let shape = JoinShape::new(&field, groups)?;
    let pole_order = zeta_join(&shape)?.pole_order_at_zero();
    let expected_pole_order = primes.len() as i64 + 1;
    let count = join_unit_count(primes, &field)?;
    let formula = join_unit_count_rooted_formula(primes, q);

    let all_rooted = rooted.iter().all(|&b| b);
    let pole_condition = pole_order == expected_pole_order;
    let unit_condition = count == formula;
    let agreement = all_rooted == pole_condition && pole_condition == unit_condition;
    if !agreement {
        return Err(Error::Internal(format!(
            "rooted conditions disagree for {primes:?} over F{q}: rooted {all_rooted}, pole {pole_condition}, units {unit_condition}"
        )));
    }
    Ok(RootedReport {
        primes: primes.to_vec(),
        q,
        rooted,
        all_rooted,
        pole_order,
        expected_pole_order,
        pole_condition,
        unit_count: count.to_string(),
        formula_value: formula.to_string(),
        unit_condition,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_examples() {
        assert!(is_q_rooted(3, 2).unwrap());
        assert!(!is_q_rooted(7, 2).unwrap());
        assert!(is_q_rooted(5, 2).unwrap());
        assert!(is_q_rooted(3, 3).is_err());
        assert_eq!(is_q_rooted(4, 3), Err(Error::NotPrime(4)));
    }

    #[test]
    fn trivial_and_expected_counts() {
        assert_eq!(trivial_unit_count_of_order_p(3, 2).unwrap(), 2);
        assert_eq!(units_of_order_p_expected(3, 2).unwrap(), 2);
        assert_eq!(trivial_unit_count_of_order_p(7, 2).unwrap(), 6);
        assert_eq!(units_of_order_p_expected(7, 2).unwrap(), 48);
        assert_eq!(trivial_unit_count_of_order_p(3, 7).unwrap(), 8);
        assert_eq!(units_of_order_p_expected(3, 7).unwrap(), 26);
    }

    #[test]
    fn reports() {
        let r = rooted_equivalence_report(&[3, 5], 2).unwrap();
        assert!(r.all_rooted && r.pole_condition && r.unit_condition);
        assert_eq!(r.pole_order, 3);
        assert_eq!(r.unit_count, "270");
        let r = rooted_equivalence_report(&[7], 2).unwrap();
        assert!(!r.all_rooted && !r.pole_condition && !r.unit_condition);
        assert_eq!((r.unit_count.as_str(), r.formula_value.as_str()), ("49", "63"));
        let r = rooted_equivalence_report(&[3], 2).unwrap();
        assert_eq!((r.unit_count.as_str(), r.pole_order), ("3", 2));
        assert!(rooted_equivalence_report(&[2], 2).is_err());
        assert!(rooted_equivalence_report(&[3, 3], 2).is_err());
    }
}
