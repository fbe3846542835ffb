mod common;

use common::{group, shape};
use join_ring::arith::{classify_group_algebra_delta, classify_join_delta, DeltaCase, DeltaOptions, Verdict};
use join_ring::joinring::JoinElem;
use join_ring::oracle::{is_delta_n, JoinOracle, DEFAULT_CAP};

/// The stated family for `Δ_2` joins: `q = 2`, every block an elementary
/// abelian 2-group, and at most one trivial block.
fn stated(q: u64, blocks: &[&str]) -> bool {
    q == 2 && blocks.iter().all(|b| *b != "C4") && blocks.iter().filter(|b| **b == "trivial").count() <= 1
}

/// The four conditions reproduce the stated family on every two-block shape.
/// Enumeration agrees except where exactly one of two blocks is trivial over
/// `F_2`: those joins have units of order 4, so they are not `Δ_2`.
#[test]
fn two_block_delta_two_sweep() {
    let blocks = ["trivial", "C2", "C4", "C2xC2"];
    let opts = DeltaOptions::default();
    let mut exceptions = Vec::new();
    for q in [2u64, 3] {
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i..] {
                let s = shape(&format!("join({a},{b};F{q})"));
                let c = classify_join_delta(&s, 2, 1, &opts).unwrap();
                let expect = stated(q, &[a, b]);
                assert_eq!(c.conditions_verdict == Some(Verdict::Yes), expect, "{}", s.label());
                let truth = is_delta_n(&JoinOracle::new(&s), 2, DEFAULT_CAP).unwrap();
                assert_eq!(c.verdict == Verdict::Yes, truth.holds, "{}", s.label());
                if let Some(o) = c.oracle {
                    assert_eq!(o, truth.holds, "{}", s.label());
                }
                if truth.holds != expect {
                    assert_eq!(truth.witness_order, Some(4), "{}", s.label());
                    exceptions.push(s.label());
                }
            }
        }
    }
    assert_eq!(exceptions, ["join(trivial,C2;F2)", "join(trivial,C2xC2;F2)"]);
}

#[test]
fn one_trivial_block_has_a_unit_of_order_four() {
    let s = shape("join(C2,trivial;F2)");
    let u = JoinElem::parse(&s, "1; 1; a[1][2]=1; a[2][1]=1").unwrap();
    assert!(u.is_unit());
    assert_eq!(u.unit_order().unwrap(), 4);
    let c = classify_join_delta(&s, 2, 1, &DeltaOptions::default()).unwrap();
    assert_eq!((c.verdict, c.conditions_verdict), (Verdict::No, Some(Verdict::Yes)));
    assert_eq!(c.witness_order, Some(4));
}

#[test]
fn three_block_joins() {
    let opts = DeltaOptions::default();
    for (spec, holds) in [
        ("join(C2,C2,C2;F2)", true),
        ("join(C2,C2,trivial;F2)", false),
        ("join(trivial,trivial,trivial;F2)", false),
    ] {
        let s = shape(spec);
        let c = classify_join_delta(&s, 2, 1, &opts).unwrap();
        assert_eq!(c.verdict == Verdict::Yes, holds, "{spec}: {c}");
        assert_eq!(is_delta_n(&JoinOracle::new(&s), 2, DEFAULT_CAP).unwrap().holds, holds, "{spec}");
    }
}

#[test]
fn group_algebra_witnesses() {
    let opts = DeltaOptions::default();
    let c = classify_group_algebra_delta(4, &group("C3"), 3, 1, &opts).unwrap();
    assert_eq!((c.verdict, c.case, c.strict), (Verdict::Yes, DeltaCase::Mersenne { a: 2 }, Some(3)));
    let c = classify_group_algebra_delta(2, &group("C4"), 2, 1, &opts).unwrap();
    assert_eq!((c.verdict, c.witness.as_deref(), c.witness_order), (Verdict::No, Some("g1"), Some(4)));
    let c = classify_group_algebra_delta(5, &group("C4"), 2, 2, &opts).unwrap();
    assert_eq!((c.verdict, c.case), (Verdict::Yes, DeltaCase::Fermat { n: 1 }));
    // Beyond the enumeration limit the case analysis stands alone.
    let c = classify_group_algebra_delta(9, &group("C2xC8"), 2, 3, &opts).unwrap();
    assert_eq!(c.verdict, Verdict::Yes);
    assert_eq!(c.oracle, None);
}
