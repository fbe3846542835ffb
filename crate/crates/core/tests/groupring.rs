mod common;

use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{field, group, normal_subgroups, small_abelian, FIELDS};
use join_ring::groupring::{gr_decompose, gr_recompose, gr_unit_count, gr_unit_count_general, idempotent_eh, GroupRingElem};
use join_ring::groups::{quotient, FiniteGroup, Subgroup};
use join_ring::oracle::{self, coords_of_index, GroupRingOracle, DEFAULT_CAP};

/// (field order, group spec) pairs used for random sampling.
const RINGS: [(u64, &str); 8] =
    [(2, "C6"), (3, "S3"), (4, "C2xC2"), (5, "D8"), (7, "Q8"), (9, "C4"), (2, "C3xC3"), (3, "C2xC4")];

fn ring_and_elems(count: usize) -> impl Strategy<Value = (usize, Vec<Vec<u64>>)> {
    (0..RINGS.len()).prop_flat_map(move |i| {
        let (q, g) = RINGS[i];
        let n = group(g).order();
        (Just(i), prop::collection::vec(prop::collection::vec(0..q, n), count))
    })
}

fn elem(i: usize, c: &[u64]) -> GroupRingElem {
    let (q, g) = RINGS[i];
    GroupRingElem::from_coeffs(&field(q), &group(g), c.to_vec()).unwrap()
}

proptest! {
    #[test]
    fn circulant_map_is_a_ring_isomorphism((i, v) in ring_and_elems(2)) {
        let (a, b) = (elem(i, &v[0]), elem(i, &v[1]));
        let f = a.field().clone();
        prop_assert_eq!(a.mul(&b).unwrap().to_circulant(), a.to_circulant().mul(&b.to_circulant(), &f));
        prop_assert_eq!(a.add(&b).unwrap().to_circulant(), a.to_circulant().add(&b.to_circulant(), &f));
        prop_assert_eq!(GroupRingElem::from_circulant(&f, a.group(), &a.to_circulant()).unwrap(), a);
    }

    #[test]
    fn ring_axioms((i, v) in ring_and_elems(3)) {
        let (a, b, c) = (elem(i, &v[0]), elem(i, &v[1]), elem(i, &v[2]));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        let one = GroupRingElem::one(a.field(), a.group());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    }

    #[test]
    fn augmentation_is_multiplicative((i, v) in ring_and_elems(2), pick in any::<prop::sample::Index>()) {
        let (a, b) = (elem(i, &v[0]), elem(i, &v[1]));
        let hs = normal_subgroups(a.group());
        let q = quotient(a.group(), pick.get(&hs)).unwrap();
        let lhs = a.mul(&b).unwrap().augmentation(&q).unwrap();
        let rhs = a.augmentation(&q).unwrap().mul(&b.augmentation(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverses_are_two_sided((i, v) in ring_and_elems(1)) {
        let a = elem(i, &v[0]);
        match a.inverse() {
            Ok(b) => {
                let one = GroupRingElem::one(a.field(), a.group());
                prop_assert_eq!(a.mul(&b).unwrap(), one.clone());
                prop_assert_eq!(b.mul(&a).unwrap(), one);
            }
            Err(_) => prop_assert!(!a.is_unit()),
        }
    }

    /// The order of `ε(u)` divides the order of `u`.
    #[test]
    fn quotient_orders_divide((i, v) in ring_and_elems(1), pick in any::<prop::sample::Index>()) {
        let a = elem(i, &v[0]);
        prop_assume!(a.is_unit());
        let hs = normal_subgroups(a.group());
        let q = quotient(a.group(), pick.get(&hs)).unwrap();
        let image = a.augmentation(&q).unwrap();
        prop_assert_eq!(a.unit_order().unwrap() % image.unit_order().unwrap(), 0);
    }

    #[test]
    fn decomposition_round_trips((i, v) in ring_and_elems(1), pick in any::<prop::sample::Index>()) {
        let a = elem(i, &v[0]);
        let p = a.field().characteristic();
        let hs: Vec<Subgroup> =
            normal_subgroups(a.group()).into_iter().filter(|h| h.order() as u64 % p != 0).collect();
        let q = quotient(a.group(), pick.get(&hs)).unwrap();
        let (eps, delta) = gr_decompose(&a, &q).unwrap();
        prop_assert_eq!(gr_recompose(&q, &eps, &delta).unwrap(), a);
    }
}

#[test]
fn augmentation_is_multiplicative_exhaustively() {
    let f = field(2);
    for g in [group("C2"), group("C3")] {
        let n = g.order();
        let all: Vec<GroupRingElem> = (0..1u64 << n)
            .map(|i| GroupRingElem::from_coeffs(&f, &g, coords_of_index(i, 2, n)).unwrap())
            .collect();
        for h in normal_subgroups(&g) {
            let q = quotient(&g, &h).unwrap();
            for a in &all {
                for b in &all {
                    let lhs = a.mul(b).unwrap().augmentation(&q).unwrap();
                    let rhs = a.augmentation(&q).unwrap().mul(&b.augmentation(&q).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

/// `Z/8 ⊃ K = {0,2,4,6} ⊃ H = {0,4}` over `F_3`: augmenting by `H` and then by
/// `K/H` is augmenting by `K`.
#[test]
fn augmentations_compose() {
    let f = field(3);
    let g = group("C8");
    let h = Subgroup::new(&g, &[0, 4]).unwrap();
    let k = Subgroup::new(&g, &[0, 2, 4, 6]).unwrap();
    let qh = quotient(&g, &h).unwrap();
    let qk = quotient(&g, &k).unwrap();
    let k_mod_h = k.image(&qh).unwrap();
    let second = quotient(&qh.group, &k_mod_h).unwrap();
    for x in g.elements() {
        assert_eq!(second.projection[qh.projection[x as usize] as usize], qk.projection[x as usize]);
    }
    for i in 0..3u64.pow(8) {
        let a = GroupRingElem::from_coeffs(&f, &g, coords_of_index(i, 3, 8)).unwrap();
        let two_step = a.augmentation(&qh).unwrap().augmentation(&second).unwrap();
        assert_eq!(two_step.coeffs(), a.augmentation(&qk).unwrap().coeffs());
    }
}

#[test]
fn e_h_is_a_central_idempotent() {
    for (q, spec) in [(2u64, "C3xC3"), (3, "C2xC4"), (5, "S3"), (5, "D8"), (7, "Q8")] {
        let (f, g) = (field(q), group(spec));
        let basis: Vec<GroupRingElem> = g.elements().map(|x| GroupRingElem::basis(&f, &g, x)).collect();
        for h in normal_subgroups(&g).into_iter().filter(|h| h.order() as u64 % f.characteristic() != 0) {
            let e = idempotent_eh(&h, &f).unwrap();
            assert_eq!(e.mul(&e).unwrap(), e, "F{q}[{spec}], |H| = {}", h.order());
            for b in &basis {
                assert_eq!(e.mul(b).unwrap(), b.mul(&e).unwrap());
            }
        }
    }
}

#[test]
fn unit_counts_match_enumeration() {
    let mut checked = 0;
    for q in FIELDS {
        let f = field(q);
        let groups: Vec<Arc<FiniteGroup>> = small_abelian().into_iter().chain([group("S3"), group("Q8")]).collect();
        for g in groups.iter().filter(|g| q.checked_pow(g.order() as u32).is_some_and(|n| n <= 4096)) {
            let ring = GroupRingOracle::new(&f, g);
            let count = BigUint::from(oracle::enumerate_units(&ring, DEFAULT_CAP).unwrap());
            if g.is_abelian() && g.order() as u64 % f.characteristic() != 0 {
                assert_eq!(gr_unit_count(g, &f).unwrap(), count, "F{q}[{}]", g.label());
            }
            match gr_unit_count_general(g, &f) {
                Ok(n) => assert_eq!(n, count, "F{q}[{}]", g.label()),
                Err(join_ring::Error::Unsupported(_)) => assert!(!g.is_abelian()),
                Err(e) => panic!("F{q}[{}]: {e}", g.label()),
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 55);
}

#[test]
fn idempotent_is_not_a_unit() {
    let (f, g) = (field(2), group("C3"));
    let e = GroupRingElem::parse(&f, &g, "1+g1+g2").unwrap();
    assert_eq!(e.mul(&e).unwrap(), e);
    assert!(!e.is_unit());
    assert_eq!(e.inverse(), Err(join_ring::Error::NotAUnit));
}
