mod common;

use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{normal_subgroups, shape};
use join_ring::groups::{quotient, Subgroup};
use join_ring::joinring::{
    diagonal_unit_count, join_decompose, join_recompose, join_unit_count, join_unit_count_general,
    quotients_of, JoinElem, JoinShape,
};
use join_ring::oracle::{self, EnumerableRing, JoinOracle, DEFAULT_CAP};

const SHAPES: [&str; 7] = [
    "join(C3,C5;F2)",
    "join(S3,trivial;F5)",
    "join(C2,C2,C3;F3)",
    "join(trivial,C4;F2)",
    "join(C2xC2,S3,trivial;F4)",
    "join(Q8,C3;F7)",
    "join(D8,C4;F3)",
];

fn shape_and_elems(count: usize) -> impl Strategy<Value = (Arc<JoinShape>, Vec<JoinElem>)> {
    (0..SHAPES.len()).prop_flat_map(move |i| {
        let s = shape(SHAPES[i]);
        let q = s.field().order();
        let coords = prop::collection::vec(prop::collection::vec(0..q, s.dim()), count);
        (Just(s.clone()), coords.prop_map(move |cs| cs.iter().map(|c| JoinElem::from_coords(&s, c)).collect()))
    })
}

fn pick_subgroups(s: &JoinShape, picks: &[prop::sample::Index], coprime: bool) -> Vec<Subgroup> {
    let p = s.field().characteristic();
    s.groups()
        .iter()
        .zip(picks)
        .map(|(g, k)| {
            let hs: Vec<Subgroup> =
                normal_subgroups(g).into_iter().filter(|h| !coprime || h.order() as u64 % p != 0).collect();
            k.get(&hs).clone()
        })
        .collect()
}

proptest! {
    #[test]
    fn product_matches_embedding((s, v) in shape_and_elems(2)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!(a.mul(b).unwrap().embed(), a.embed().mul(&b.embed(), s.field()));
        prop_assert_eq!(JoinElem::from_matrix(&s, &a.embed()).unwrap(), a.clone());
    }

    #[test]
    fn multiplication_is_associative((_s, v) in shape_and_elems(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
    }

    #[test]
    fn generalized_augmentation_is_multiplicative(
        (s, v) in shape_and_elems(2),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        let hs = pick_subgroups(&s, &picks, false);
        let qs = quotients_of(&s, &hs).unwrap();
        let (a, b) = (&v[0], &v[1]);
        let lhs = a.mul(b).unwrap().gen_augmentation(&qs).unwrap();
        let rhs = a.gen_augmentation(&qs).unwrap().mul(&b.gen_augmentation(&qs).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Augmenting by `H_i` and then by `K_i/H_i` is augmenting by `K_i`.
    #[test]
    fn generalized_augmentations_compose(
        (s, v) in shape_and_elems(1),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 3),
    ) {
        let mut hs = Vec::new();
        let mut ks = Vec::new();
        for (g, (i, j)) in s.groups().iter().zip(&picks) {
            let normals = normal_subgroups(g);
            let k = i.get(&normals).clone();
            let inside: Vec<Subgroup> = normals.into_iter().filter(|h| h.is_subgroup_of(&k)).collect();
            hs.push(j.get(&inside).clone());
            ks.push(k);
        }
        let qh = quotients_of(&s, &hs).unwrap();
        let a = &v[0];
        let first = a.gen_augmentation(&qh).unwrap();
        let images: Vec<Subgroup> = ks.iter().zip(&qh).map(|(k, q)| k.image(q).unwrap()).collect();
        let second: Vec<_> = qh.iter().zip(&images).map(|(q, im)| quotient(&q.group, im).unwrap()).collect();
        let direct = a.gen_augmentation(&quotients_of(&s, &ks).unwrap()).unwrap();
        for ((q1, q2), qk) in qh.iter().zip(&second).zip(quotients_of(&s, &ks).unwrap()) {
            for (x, &c) in q1.projection.iter().enumerate() {
                prop_assert_eq!(q2.projection[c as usize], qk.projection[x]);
            }
        }
        prop_assert_eq!(first.gen_augmentation(&second).unwrap().to_coords(), direct.to_coords());
    }

    #[test]
    fn decomposition_round_trips(
        (s, v) in shape_and_elems(1),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        prop_assume!(s.is_semisimple());
        let hs = pick_subgroups(&s, &picks, true);
        let (eps, deltas) = join_decompose(&v[0], &hs).unwrap();
        prop_assert_eq!(join_recompose(&s, &hs, &eps, &deltas).unwrap(), v[0].clone());
    }

    #[test]
    fn inverses_are_two_sided((s, v) in shape_and_elems(1)) {
        let a = &v[0];
        let one = JoinElem::identity(&s);
        match a.inverse() {
            Ok(b) => {
                prop_assert_eq!(a.mul(&b).unwrap(), one.clone());
                prop_assert_eq!(b.mul(a).unwrap(), one);
            }
            Err(_) => prop_assert!(!a.embed().is_invertible(s.field())),
        }
    }
}

fn small_shapes() -> Vec<Arc<JoinShape>> {
    [
        "join(C2,C2;F2)",
        "join(trivial,trivial;F2)",
        "join(C2,trivial;F2)",
        "join(C3,C5;F2)",
        "join(C3,trivial;F3)",
        "join(C2,C2;F3)",
        "join(C4,trivial;F2)",
        "join(C2,C3;F2)",
        "join(C3,C3;F2)",
        "join(trivial,trivial,trivial;F2)",
        "join(C2,trivial,trivial;F2)",
        "join(C6,trivial;F2)",
        "join(C3,trivial;F2)",
        "join(C2,C2;F4)",
        "join(trivial,trivial;F5)",
    ]
    .iter()
    .map(|s| shape(s))
    .collect()
}

#[test]
fn unit_counts_match_enumeration() {
    for s in small_shapes() {
        let ring = JoinOracle::new(&s);
        assert!(oracle::ring_size(&ring).is_some_and(|n| n <= 1 << 12), "{}", s.label());
        let units = oracle::units(&ring, DEFAULT_CAP).unwrap();
        let count = BigUint::from(units.len());
        match join_unit_count_general(&s) {
            Ok(n) => assert_eq!(n, count, "{}", s.label()),
            Err(e) => panic!("{}: {e}", s.label()),
        }
        let diagonal = units.iter().filter(|u| JoinElem::from_coords(&s, u).is_diagonal()).count();
        assert_eq!(diagonal_unit_count(&s).unwrap(), BigUint::from(diagonal), "{}", s.label());
    }
}

#[test]
fn prime_block_count_matches_general_count() {
    for (primes, q) in [(&[3u64, 5][..], 2u64), (&[2, 5], 3), (&[3], 2), (&[2, 3], 5), (&[3, 7, 11], 2)] {
        let blocks: Vec<String> = primes.iter().map(|p| format!("C{p}")).collect();
        let s = shape(&format!("join({};F{q})", blocks.join(",")));
        assert_eq!(join_unit_count(primes, s.field()).unwrap(), join_unit_count_general(&s).unwrap());
    }
}

/// The decomposition idempotents, checked on every element of a small ring.
#[test]
fn idempotents_are_central_exhaustively() {
    let s = shape("join(C2,trivial;F3)");
    let ring = JoinOracle::new(&s);
    let n = oracle::ring_size(&ring).unwrap();
    for hs in [
        vec![Subgroup::whole(&s.groups()[0]), Subgroup::whole(&s.groups()[1])],
        vec![Subgroup::trivial(&s.groups()[0]), Subgroup::whole(&s.groups()[1])],
    ] {
        let fs = join_ring::joinring::join_idempotents(&s, &hs).unwrap();
        for i in 0..n {
            let x = JoinElem::from_coords(&s, &oracle::coords_of_index(i, 3, s.dim()));
            for e in &fs {
                assert_eq!(e.mul(&x).unwrap(), x.mul(e).unwrap());
            }
        }
    }
    assert_eq!(ring.dim(), s.dim());
}
