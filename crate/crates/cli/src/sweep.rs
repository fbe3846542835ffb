//! Grid sweeps over the invariant suites.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use join_ring::arith::{
    big_pow, classify_field_delta, classify_group_algebra_delta, classify_join_delta, is_prime,
    prime_power, rooted_equivalence_report, DeltaOptions, Verdict,
};
use join_ring::ffield::{field_make, FieldCtx};
use join_ring::groups::FiniteGroup;
use join_ring::joinring::{JoinElem, JoinShape};
use join_ring::oracle::{self, GroupRingOracle};
use join_ring::Error;

use crate::report::Report;
use crate::{usage, CliResult};

pub fn run(name: &str, count: usize, seed: u64, cap: u64) -> CliResult<Report> {
    match name {
        "rooted" => rooted(cap),
        "field-delta" => field_delta(),
        "group-delta" => group_delta(cap),
        "join-delta" => join_delta(cap),
        "mul" => mul(count, seed),
        other => usage(format!("unknown sweep {other:?}")),
    }
}

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&p| is_prime(p)).collect()
}

/// Prime-order cyclic blocks over `q ∈ {2,3,5}`: rootedness, pole order and
/// unit count agree; for `q^p ≤ 4096` the invertible `p × p` circulants are
/// also counted and compared with `(q^{p−1} − 1)(q − 1)`.
fn rooted(cap: u64) -> CliResult<Report> {
    let (mut cases, mut enumerated, mut mismatches) = (0u64, 0u64, Vec::new());
    for q in [2u64, 3, 5] {
        let f = field_make(q, 1, None)?;
        for p in primes_below(30).into_iter().filter(|&p| p != q) {
            let rep = rooted_equivalence_report(&[p], q)?;
            cases += 1;
            if q.checked_pow(p as u32).is_some_and(|n| n <= 4096) {
                let ring = GroupRingOracle::new(&f, &FiniteGroup::cyclic(p)?);
                let count = oracle::enumerate_units(&ring, cap)?;
                let formula = (big_pow(q, p - 1) - 1u32) * (q - 1);
                if (formula == count.into()) != rep.all_rooted {
                    mismatches.push(json!({ "p": p, "q": q, "circulants": count }));
                }
                enumerated += 1;
            }
        }
    }
    let mut r = Report::new(format!("{cases} cases agree, {} circulant mismatches", mismatches.len()));
    r.field("cases", cases);
    r.field("enumerated", enumerated);
    r.field("mismatches", mismatches);
    Ok(r)
}

fn field_delta() -> CliResult<Report> {
    let (mut cases, mut yes) = (0u64, 0u64);
    for q in (2..=128u64).filter(|&q| prime_power(q).is_some()) {
        for p in primes_below(32) {
            for r in 1..=5 {
                let c = classify_field_delta(q, p, r)?;
                cases += 1;
                yes += u64::from(c.verdict == Verdict::Yes);
            }
        }
    }
    let mut rep = Report::new(format!("{cases} cases agree with divisibility"));
    rep.field("cases", cases);
    rep.field("yes", yes);
    Ok(rep)
}

/// Abelian groups of order at most 16, by invariants, plus S3 and Q8.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    let invariants: &[&[u64]] = &[
        &[], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2], &[9], &[3, 3], &[10],
        &[11], &[12], &[2, 6], &[13], &[14], &[15], &[16], &[2, 8], &[4, 4], &[2, 2, 4], &[2, 2, 2, 2],
    ];
    let mut gs: Vec<Arc<FiniteGroup>> =
        invariants.iter().map(|inv| FiniteGroup::abelian(inv).expect("valid invariants")).collect();
    gs.push(FiniteGroup::symmetric(3).expect("S3"));
    gs.push(FiniteGroup::quaternion());
    gs
}

fn group_delta(cap: u64) -> CliResult<Report> {
    let opts = DeltaOptions { cap, oracle_limit: 4096 };
    let (mut cases, mut yes, mut disagreements) = (0u64, 0u64, Vec::new());
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for g in small_groups() {
            if q.checked_pow(g.order() as u32).is_none_or(|n| n > 4096) {
                continue;
            }
            for p in [2u64, 3, 7] {
                for r in 1..=3 {
                    match classify_group_algebra_delta(q, &g, p, r, &opts) {
                        Ok(c) => {
                            cases += 1;
                            yes += u64::from(c.verdict == Verdict::Yes);
                        }
                        Err(Error::Internal(msg)) => disagreements.push(msg),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
    }
    let mut rep = Report::new(format!("{cases} cases, {} disagreements", disagreements.len()));
    rep.field("cases", cases);
    rep.field("yes", yes);
    rep.field("disagreements", disagreements);
    Ok(rep)
}

/// `d = 2`, blocks from `{trivial, C2, C4, C2xC2}`, `q ∈ {2, 3}`, `Δ_2`.
fn join_delta(cap: u64) -> CliResult<Report> {
    let opts = DeltaOptions { cap, oracle_limit: 4096 };
    let blocks = ["trivial", "C2", "C4", "C2xC2"];
    let mut rows = Vec::new();
    let (mut stated_matches, mut enumerated_mismatches) = (0u64, 0u64);
    for q in [2u64, 3] {
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i..] {
                let shape = JoinShape::parse(&format!("join({a},{b};F{q})"))?;
                let c = classify_join_delta(&shape, 2, 1, &opts)?;
                let elementary = |s: &str| s != "C4";
                let trivial = [a, b].iter().filter(|s| ***s == "trivial").count();
                let stated = q == 2 && elementary(a) && elementary(b) && trivial <= 1;
                let conditions = c.conditions_verdict == Some(Verdict::Yes);
                stated_matches += u64::from(conditions == stated);
                if c.oracle.is_some_and(|o| o != stated) {
                    enumerated_mismatches += 1;
                }
                rows.push(json!({
                    "shape": shape.label(),
                    "stated": stated,
                    "conditions": conditions,
                    "enumerated": c.oracle,
                    "witness_order": c.witness_order,
                }));
            }
        }
    }
    let mut rep = Report::new(format!(
        "{} shapes: conditions match the stated family in {stated_matches}; enumeration differs in {enumerated_mismatches}",
        rows.len()
    ));
    rep.field("shapes", rows.len());
    rep.field("stated_matches", stated_matches);
    rep.field("enumerated_mismatches", enumerated_mismatches);
    rep.field("rows", Value::Array(rows));
    Ok(rep)
}

fn random_elem(shape: &Arc<JoinShape>, rng: &mut ChaCha8Rng) -> JoinElem {
    let q = shape.field().order();
    let coords: Vec<u64> = (0..shape.dim()).map(|_| rng.gen_range(0..q)).collect();
    JoinElem::from_coords(shape, &coords)
}

/// Block-formula products against the matrix embedding.
fn mul(count: usize, seed: u64) -> CliResult<Report> {
    let shapes = [
        "join(C3,C5;F2)",
        "join(S3,trivial;F5)",
        "join(C2,C2,C3;F3)",
        "join(trivial,C4;F2)",
        "join(C2xC2,S3,trivial;F4)",
        "join(Q8,C3;F7)",
    ];
    let shapes: Vec<Arc<JoinShape>> = shapes.iter().map(|s| JoinShape::parse(s)).collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u64;
    for k in 0..count {
        let s = &shapes[k % shapes.len()];
        let (a, b) = (random_elem(s, &mut rng), random_elem(s, &mut rng));
        let f: &FieldCtx = s.field();
        if a.mul(&b)?.embed() != a.embed().mul(&b.embed(), f) {
            failures += 1;
        }
    }
    let mut rep = Report::new(format!("{count} products, {failures} failures"));
    rep.field("pairs", count);
    rep.field("shapes", shapes.len());
    rep.field("seed", seed);
    rep.field("failures", failures);
    Ok(rep)
}
