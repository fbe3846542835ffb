//! Exhaustive ground truth for small finite rings.
//!
//! Rings are enumerated as coordinate vectors over `F_q`: index `Σ c_i q^i`,
//! so coordinate 0 is least significant and index 0 is the zero element.
//! Work is split across threads with rayon; every reduction is
//! order-independent and witnesses are taken with `find_first`, so results
//! do not depend on scheduling.

mod semimagic;

pub use semimagic::{semimagic_ring, SemimagicElem, SemimagicRing};

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::{is_power_of, lcm};
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::groupring::{convolve, GroupRingElem};
use crate::groups::FiniteGroup;
use crate::joinring::{JoinElem, JoinShape};
use crate::matrix::{EchelonBasis, Matrix};

/// Default enumeration cap, in ring elements.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// A finite-dimensional `F_q`-algebra that can be walked element by element.
pub trait EnumerableRing: Sync {
    fn label(&self) -> String;
    fn field(&self) -> &Arc<FieldCtx>;
    fn dim(&self) -> usize;
    fn one(&self) -> Vec<u64>;
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64>;
    /// A faithful matrix representation (left multiplication or an embedding).
    fn matrix(&self, a: &[u64]) -> Matrix;
    /// Literal form of an element, for witnesses.
    fn format(&self, a: &[u64]) -> String;

    fn is_unit(&self, a: &[u64]) -> bool {
        self.matrix(a).is_invertible(self.field())
    }
}

/// `q^dim`, or `None` on overflow.
pub fn ring_size<R: EnumerableRing + ?Sized>(ring: &R) -> Option<u64> {
    ring.field().order().checked_pow(ring.dim() as u32)
}

fn feasible<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<u64> {
    match ring_size(ring) {
        Some(n) if n <= cap => Ok(n),
        Some(n) => Err(Error::CapExceeded { size: n.to_string(), cap }),
        None => Err(Error::CapExceeded {
            size: format!("{}^{}", ring.field().order(), ring.dim()),
            cap,
        }),
    }
}

pub fn coords_of_index(index: u64, q: u64, dim: usize) -> Vec<u64> {
    let mut out = vec![0u64; dim];
    let mut x = index;
    for slot in out.iter_mut() {
        *slot = x % q;
        x /= q;
    }
    out
}

pub fn index_of_coords(coords: &[u64], q: u64) -> u64 {
    coords.iter().rev().fold(0u64, |acc, &c| acc * q + c)
}

fn pow<R: EnumerableRing + ?Sized>(ring: &R, a: &[u64], mut e: u64) -> Vec<u64> {
    let mut acc = ring.one();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = ring.mul(&base, &base);
        }
    }
    acc
}

fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Multiplicative order of a unit by repeated multiplication.
pub fn element_order<R: EnumerableRing + ?Sized>(ring: &R, u: &[u64]) -> u64 {
    let one = ring.one();
    let mut x = u.to_vec();
    let mut k = 1;
    while x != one {
        x = ring.mul(&x, u);
        k += 1;
    }
    k
}

/// Indices of all units, increasing.
pub fn unit_indices<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<Vec<u64>> {
    let n = feasible(ring, cap)?;
    let (q, dim) = (ring.field().order(), ring.dim());
    Ok((0..n)
        .into_par_iter()
        .filter(|&i| ring.is_unit(&coords_of_index(i, q, dim)))
        .collect())
}

/// Exact unit count.
pub fn enumerate_units<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<u64> {
    Ok(unit_indices(ring, cap)?.len() as u64)
}

/// Units of `ring` as coordinate vectors.
pub fn units<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<Vec<Vec<u64>>> {
    let (q, dim) = (ring.field().order(), ring.dim());
    Ok(unit_indices(ring, cap)?.into_iter().map(|i| coords_of_index(i, q, dim)).collect())
}

/// Orders of all units, in enumeration order.
pub fn unit_orders<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<Vec<u64>> {
    Ok(units(ring, cap)?.par_iter().map(|u| element_order(ring, u)).collect())
}

/// `lcm` of all unit orders.
pub fn unit_group_exponent<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<u64> {
    Ok(unit_orders(ring, cap)?.into_iter().fold(1, lcm))
}

/// Number of units of order exactly `m`.
pub fn units_of_order<R: EnumerableRing + ?Sized>(ring: &R, m: u64, cap: u64) -> Result<u64> {
    Ok(unit_orders(ring, cap)?.into_iter().filter(|&o| o == m).count() as u64)
}

/// Outcome of a `Δ_n` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCheck {
    pub holds: bool,
    /// First unit (in enumeration order) with `u^n ≠ 1`, as a literal.
    pub witness: Option<String>,
    pub witness_order: Option<u64>,
    pub units: u64,
}

/// Whether every unit satisfies `u^n = 1`.
pub fn is_delta_n<R: EnumerableRing + ?Sized>(ring: &R, n: u64, cap: u64) -> Result<DeltaCheck> {
    let us = units(ring, cap)?;
    let one = ring.one();
    let bad = us.par_iter().find_first(|u| pow(ring, u, n) != one);
    Ok(match bad {
        None => DeltaCheck { holds: true, witness: None, witness_order: None, units: us.len() as u64 },
        Some(u) => DeltaCheck {
            holds: false,
            witness: Some(ring.format(u)),
            witness_order: Some(element_order(ring, u)),
            units: us.len() as u64,
        },
    })
}

/// The Jacobson radical, found by quasi-regularity and then verified.
#[derive(Clone, Debug)]
pub struct Radical {
    pub elements: Vec<Vec<u64>>,
    pub basis: EchelonBasis,
}

impl Radical {
    pub fn size(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// `{x : 1 − r x is a unit for every r}`. Every such `x` is nilpotent, so
/// only nilpotent candidates are tested. The result is checked to be a
/// subspace, a two-sided ideal, and nil; a failure is an internal error.
pub fn jacobson_radical<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<Radical> {
    let n = feasible(ring, cap)?;
    let f = ring.field();
    let (q, dim) = (f.order(), ring.dim());
    let unit_set: Vec<bool> = {
        let mut v = vec![false; n as usize];
        for i in unit_indices(ring, cap)? {
            v[i as usize] = true;
        }
        v
    };
    let one = ring.one();
    let nil_power = dim.max(1) as u64;
    let elements: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|i| coords_of_index(i, q, dim))
        .filter(|x| is_zero(&pow(ring, x, nil_power)))
        .filter(|x| {
            (0..n).all(|j| {
                let r = coords_of_index(j, q, dim);
                let rx = ring.mul(&r, x);
                let w: Vec<u64> = one.iter().zip(&rx).map(|(&a, &b)| f.sub(a, b)).collect();
                unit_set[index_of_coords(&w, q) as usize]
            })
        })
        .collect();

    let mut basis = EchelonBasis::new();
    for x in &elements {
        basis.insert(x, f);
    }
    let span_size = q.checked_pow(basis.dim() as u32);
    if span_size != Some(elements.len() as u64) {
        return Err(Error::Internal("quasi-regular elements do not form a subspace".into()));
    }
    let ring_basis: Vec<Vec<u64>> = (0..dim)
        .map(|k| {
            let mut e = vec![0u64; dim];
            e[k] = 1;
            e
        })
        .collect();
    let rad_set: HashSet<&Vec<u64>> = elements.iter().collect();
    for x in &elements {
        for e in &ring_basis {
            if !rad_set.contains(&ring.mul(e, x)) || !rad_set.contains(&ring.mul(x, e)) {
                return Err(Error::Internal("radical is not a two-sided ideal".into()));
            }
        }
    }
    Ok(Radical { elements, basis })
}

/// The unit group modulo `1 + Rad`, counted as distinct cosets `u + Rad`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitFactorization {
    pub units: u64,
    pub radical: u64,
    pub semisimple_units: u64,
}

impl UnitFactorization {
    pub fn holds(&self) -> bool {
        self.units == self.radical * self.semisimple_units
    }
}

/// Evaluates `|R^×| = |Rad R| · |(R/Rad R)^×|` by enumeration.
pub fn unit_factorization<R: EnumerableRing + ?Sized>(ring: &R, cap: u64) -> Result<UnitFactorization> {
    let rad = jacobson_radical(ring, cap)?;
    let us = units(ring, cap)?;
    let f = ring.field();
    let cosets: HashSet<Vec<u64>> = us.iter().map(|u| rad.basis.reduce(u, f)).collect();
    Ok(UnitFactorization { units: us.len() as u64, radical: rad.size(), semisimple_units: cosets.len() as u64 })
}

/// `F_q[G]` as an enumerable ring.
pub struct GroupRingOracle {
    pub field: Arc<FieldCtx>,
    pub group: Arc<FiniteGroup>,
}

impl GroupRingOracle {
    pub fn new(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>) -> Self {
        GroupRingOracle { field: Arc::clone(field), group: Arc::clone(group) }
    }

    fn elem(&self, a: &[u64]) -> GroupRingElem {
        GroupRingElem::from_coeffs(&self.field, &self.group, a.to_vec()).expect("coordinates in range")
    }
}

impl EnumerableRing for GroupRingOracle {
    fn label(&self) -> String {
        format!("{}[{}]", self.field.label(), self.group.label())
    }

    fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    fn dim(&self) -> usize {
        self.group.order()
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.group.order()];
        v[0] = 1;
        v
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        convolve(&self.field, &self.group, a, b)
    }

    fn matrix(&self, a: &[u64]) -> Matrix {
        self.elem(a).to_circulant()
    }

    fn format(&self, a: &[u64]) -> String {
        self.elem(a).to_string()
    }
}

/// `J_{G_1,…,G_d}(F_q)` as an enumerable ring; the unused diagonal
/// off-block slots are not coordinates.
pub struct JoinOracle {
    pub shape: Arc<JoinShape>,
}

impl JoinOracle {
    pub fn new(shape: &Arc<JoinShape>) -> Self {
        JoinOracle { shape: Arc::clone(shape) }
    }
}

impl EnumerableRing for JoinOracle {
    fn label(&self) -> String {
        self.shape.label()
    }

    fn field(&self) -> &Arc<FieldCtx> {
        self.shape.field()
    }

    fn dim(&self) -> usize {
        self.shape.dim()
    }

    fn one(&self) -> Vec<u64> {
        JoinElem::identity(&self.shape).to_coords()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let x = JoinElem::from_coords(&self.shape, a);
        let y = JoinElem::from_coords(&self.shape, b);
        x.mul(&y).expect("same shape").to_coords()
    }

    fn matrix(&self, a: &[u64]) -> Matrix {
        JoinElem::from_coords(&self.shape, a).embed()
    }

    fn format(&self, a: &[u64]) -> String {
        JoinElem::from_coords(&self.shape, a).to_string()
    }
}

/// `exp(U_1(F_p[G]))` for a `p`-group `G` over the prime field: the `lcm` of
/// the orders of the normalized units `1 + x`, `x` in the augmentation ideal.
pub fn exp_u1(group: &Arc<FiniteGroup>, field: &Arc<FieldCtx>, cap: u64) -> Result<u64> {
    let p = field.characteristic();
    if field.degree() != 1 {
        return Err(Error::InvalidArgument("normalized units are taken over the prime field".into()));
    }
    if !group.is_p_group(p) {
        return Err(Error::InvalidArgument(format!("{} is not a {p}-group", group.label())));
    }
    let ring = GroupRingOracle::new(field, group);
    let free = group.order() - 1;
    let total = p
        .checked_pow(free as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::CapExceeded { size: format!("{p}^{free}"), cap })?;
    let one = ring.one();
    let f = &**field;
    // Each normalized unit has p-power order dividing |G|; find it by p-th powering.
    let exponent = (0..total)
        .into_par_iter()
        .map(|i| {
            let tail = coords_of_index(i, p, free);
            let s = tail.iter().fold(0, |acc, &c| f.add(acc, c));
            let mut u = vec![f.sub(1, s)];
            u.extend(tail);
            let mut order = 1u64;
            while u != one {
                u = pow(&ring, &u, p);
                order *= p;
            }
            order
        })
        .reduce(|| 1, lcm);
    debug_assert!(is_power_of(exponent, p));
    Ok(exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Subgroup;

    fn gr(q: u64, g: &str) -> GroupRingOracle {
        GroupRingOracle::new(
            &FieldCtx::parse_spec(&format!("F{q}")).unwrap(),
            &FiniteGroup::parse_spec(g).unwrap(),
        )
    }

    #[test]
    fn index_coordinates_round_trip() {
        for i in 0..81 {
            let c = coords_of_index(i, 3, 4);
            assert_eq!(index_of_coords(&c, 3), i);
        }
        assert_eq!(coords_of_index(1, 2, 3), vec![1, 0, 0]);
    }

    #[test]
    fn unit_counts() {
        assert_eq!(enumerate_units(&gr(2, "C3"), DEFAULT_CAP).unwrap(), 3);
        assert_eq!(enumerate_units(&gr(2, "C7"), DEFAULT_CAP).unwrap(), 49);
        let j = JoinOracle::new(&JoinShape::parse("join(C3,C5;F2)").unwrap());
        assert_eq!(enumerate_units(&j, DEFAULT_CAP).unwrap(), 270);
        assert!(matches!(enumerate_units(&gr(2, "C7"), 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn exponents() {
        let f2 = FieldCtx::parse_spec("F2").unwrap();
        let g = |s: &str| FiniteGroup::parse_spec(s).unwrap();
        assert_eq!(exp_u1(&g("C2"), &f2, DEFAULT_CAP).unwrap(), 2);
        assert_eq!(exp_u1(&g("C4"), &f2, DEFAULT_CAP).unwrap(), 4);
        assert_eq!(exp_u1(&g("C2xC2"), &f2, DEFAULT_CAP).unwrap(), 2);
        assert_eq!(exp_u1(&g("trivial"), &f2, DEFAULT_CAP).unwrap(), 1);
        assert!(exp_u1(&g("C3"), &f2, DEFAULT_CAP).is_err());
        assert_eq!(unit_group_exponent(&gr(2, "C3"), DEFAULT_CAP).unwrap(), 3);
    }

    #[test]
    fn units_of_given_order() {
        assert_eq!(units_of_order(&gr(2, "C3"), 3, DEFAULT_CAP).unwrap(), 2);
        assert_eq!(units_of_order(&gr(2, "C7"), 7, DEFAULT_CAP).unwrap(), 48);
        assert_eq!(units_of_order(&gr(3, "C4"), 1, DEFAULT_CAP).unwrap(), 1);
        assert_eq!(units_of_order(&gr(7, "C3"), 3, DEFAULT_CAP).unwrap(), 26);
    }

    #[test]
    fn radicals() {
        assert_eq!(jacobson_radical(&gr(2, "C3"), DEFAULT_CAP).unwrap().size(), 1);
        let r = jacobson_radical(&gr(2, "C2"), DEFAULT_CAP).unwrap();
        assert_eq!(r.elements, vec![vec![0, 0], vec![1, 1]]);
        let ring = gr(2, "C4");
        let r = jacobson_radical(&ring, DEFAULT_CAP).unwrap();
        assert_eq!(r.size(), 8);
        let f2 = FieldCtx::parse_spec("F2").unwrap();
        let g = FiniteGroup::parse_spec("C4").unwrap();
        let aug_ideal: Vec<Vec<u64>> = (0..16)
            .map(|i| coords_of_index(i, 2, 4))
            .filter(|c| {
                GroupRingElem::from_coeffs(&f2, &g, c.clone())
                    .unwrap()
                    .augment_by(&Subgroup::whole(&g))
                    .unwrap()
                    .coeffs()
                    == [0]
            })
            .collect();
        assert_eq!(r.elements, aug_ideal);
    }

    #[test]
    fn delta_checks() {
        assert!(is_delta_n(&gr(3, "C2xC2"), 2, DEFAULT_CAP).unwrap().holds);
        let c = is_delta_n(&gr(2, "C4"), 2, DEFAULT_CAP).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.as_deref(), Some("g1"));
        assert_eq!(c.witness_order, Some(4));
        let j = JoinOracle::new(&JoinShape::parse("join(C2,C2;F2)").unwrap());
        assert!(is_delta_n(&j, 2, DEFAULT_CAP).unwrap().holds);
        // Δ_n implies Δ_m for n | m.
        assert!(is_delta_n(&gr(3, "C2xC2"), 4, DEFAULT_CAP).unwrap().holds);
    }

    #[test]
    fn unit_group_factorization() {
        for ring in [gr(2, "C4"), gr(2, "C6"), gr(3, "C3"), gr(3, "S3"), gr(4, "C2")] {
            let fac = unit_factorization(&ring, DEFAULT_CAP).unwrap();
            assert!(fac.holds(), "{}: {fac:?}", ring.label());
        }
    }

    #[test]
    fn modular_two_group_algebras_are_local() {
        for g in ["C2", "C4", "C2xC2", "C8", "C2xC4", "Q8", "D8"] {
            let ring = gr(2, g);
            let n = ring.dim() as u32;
            assert_eq!(enumerate_units(&ring, DEFAULT_CAP).unwrap(), 2u64.pow(n - 1), "{g}");
        }
    }
}
