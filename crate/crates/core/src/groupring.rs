//! The group ring `F_q[G]`.
//!
//! Coefficients are field codes indexed by group element. The regular
//! representation is the `G`-circulant matrix `M[i][j] = a(g_i⁻¹ g_j)`, whose
//! first row is the coefficient vector itself.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::arith::{big_pow, ord_mod};
use crate::error::{Error, Result};
use crate::ffield::{same_field, FieldCtx};
use crate::groups::{quotient, FiniteGroup, Quotient, Subgroup};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct GroupRingElem {
    field: Arc<FieldCtx>,
    group: Arc<FiniteGroup>,
    coeffs: Vec<u64>,
}

impl PartialEq for GroupRingElem {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field)
            && same_group(&self.group, &other.group)
            && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElem {}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Convolution `out[hk] += a_h b_k` on raw code vectors.
pub(crate) fn convolve(f: &FieldCtx, g: &FiniteGroup, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; g.order()];
    for (h, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let row = g.row(h as u32);
        for (k, &y) in b.iter().enumerate() {
            if y != 0 {
                let idx = row[k] as usize;
                out[idx] = f.add(out[idx], f.mul(x, y));
            }
        }
    }
    out
}

impl GroupRingElem {
    pub fn zero(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>) -> Self {
        GroupRingElem { field: Arc::clone(field), group: Arc::clone(group), coeffs: vec![0; group.order()] }
    }

    pub fn one(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>) -> Self {
        Self::basis(field, group, 0)
    }

    /// The group element `g` as a ring element.
    pub fn basis(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>, g: u32) -> Self {
        let mut e = Self::zero(field, group);
        e.coeffs[g as usize] = 1;
        e
    }

    /// `Σ_g g`.
    pub fn all_ones(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>) -> Self {
        GroupRingElem { field: Arc::clone(field), group: Arc::clone(group), coeffs: vec![1; group.order()] }
    }

    pub fn from_coeffs(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                group.order(),
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::InvalidArgument(format!("coefficient code {c} out of range")));
        }
        Ok(GroupRingElem { field: Arc::clone(field), group: Arc::clone(group), coeffs })
    }

    pub(crate) fn from_coeffs_unchecked(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), group.order());
        GroupRingElem { field: Arc::clone(field), group: Arc::clone(group), coeffs }
    }

    /// Parses literals such as `1+g1+2*g2` or `(x+1)*g3`; `g0` is the identity.
    pub fn parse(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>, s: &str) -> Result<Self> {
        let mut out = Self::zero(field, group);
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src == "0" {
            return Ok(out);
        }
        for (negative, term) in split_terms(&src)? {
            let (coeff_src, elem) = match term.rfind('g') {
                Some(pos) if term[pos + 1..].chars().all(|c| c.is_ascii_digit()) && pos + 1 < term.len() => {
                    let idx: u32 = term[pos + 1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad group element in {term:?}")))?;
                    let c = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    (c, idx)
                }
                _ => (term, 0),
            };
            if elem as usize >= group.order() {
                return Err(Error::Parse(format!("g{elem} is not an element of a group of order {}", group.order())));
            }
            let c = parse_coeff(field, coeff_src)?;
            let c = if negative { field.neg(c) } else { c };
            let slot = &mut out.coeffs[elem as usize];
            *slot = field.add(*slot, c);
        }
        Ok(out)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: u32) -> u64 {
        self.coeffs[g as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        GroupRingElem { field: Arc::clone(&self.field), group: Arc::clone(&self.group), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        Ok(self.with(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        Ok(self.with(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect()))
    }

    pub fn neg(&self) -> Self {
        self.with(self.coeffs.iter().map(|&a| self.field.neg(a)).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        self.with(self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(convolve(&self.field, &self.group, &self.coeffs, &other.coeffs)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field, &self.group);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// `Σ_g a_g`.
    pub fn coefficient_sum(&self) -> u64 {
        self.coeffs.iter().fold(0, |acc, &c| self.field.add(acc, c))
    }

    /// The `G`-circulant matrix `M[i][j] = a(g_i⁻¹ g_j)`.
    pub fn to_circulant(&self) -> Matrix {
        let n = self.group.order();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n as u32 {
            let gi_inv = self.group.inv(i);
            for j in 0..n as u32 {
                m.set(i as usize, j as usize, self.coeffs[self.group.mul(gi_inv, j) as usize]);
            }
        }
        m
    }

    /// Inverse of [`to_circulant`](Self::to_circulant).
    pub fn from_circulant(field: &Arc<FieldCtx>, group: &Arc<FiniteGroup>, m: &Matrix) -> Result<Self> {
        let n = group.order();
        if m.rows != n || m.cols != n {
            return Err(Error::NotInSubring(format!("a {n}×{n} circulant")));
        }
        for i in 0..n as u32 {
            let gi_inv = group.inv(i);
            for j in 0..n as u32 {
                if m.get(i as usize, j as usize) != m.get(0, group.mul(gi_inv, j) as usize) {
                    return Err(Error::NotInSubring(format!("{}-circulant", group.label())));
                }
            }
        }
        Self::from_coeffs(field, group, (0..n).map(|j| m.get(0, j)).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.to_circulant().is_invertible(&self.field)
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.to_circulant().inverse(&self.field).ok_or(Error::NotAUnit)?;
        Self::from_circulant(&self.field, &self.group, &inv)
            .map_err(|e| Error::Internal(format!("inverse of a circulant is not circulant: {e}")))
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self) -> Result<u64> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let one = Self::one(&self.field, &self.group);
        let mut x = self.clone();
        let mut k = 1u64;
        while x != one {
            x = x.mul(self)?;
            k += 1;
        }
        Ok(k)
    }

    /// Classical augmentation `R[G] → R[G/H]`, summing over cosets.
    pub fn augmentation(&self, q: &Quotient) -> Result<Self> {
        if !same_group(&self.group, q.subgroup.parent()) {
            return Err(Error::GroupMismatch);
        }
        let mut out = vec![0u64; q.group.order()];
        for (g, &c) in self.coeffs.iter().enumerate() {
            let slot = &mut out[q.projection[g] as usize];
            *slot = self.field.add(*slot, c);
        }
        Ok(GroupRingElem { field: Arc::clone(&self.field), group: Arc::clone(&q.group), coeffs: out })
    }

    /// Augmentation along a normal subgroup, building the quotient on the fly.
    pub fn augment_by(&self, h: &Subgroup) -> Result<Self> {
        self.augmentation(&quotient(&self.group, h)?)
    }
}

fn split_terms(src: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut negative = false;
    let bytes = src.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i > start {
                    out.push((negative, &src[start..i]));
                } else if i > 0 {
                    return Err(Error::Parse(format!("empty term in {src:?}")));
                }
                negative = b == b'-';
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {src:?}")));
        }
    }
    if depth != 0 || start >= src.len() {
        return Err(Error::Parse(format!("malformed literal {src:?}")));
    }
    out.push((negative, &src[start..]));
    Ok(out)
}

/// A coefficient: empty (meaning 1), an integer, or a parenthesized polynomial.
pub(crate) fn parse_coeff(field: &FieldCtx, s: &str) -> Result<u64> {
    if s.is_empty() {
        return Ok(1);
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        return field.parse_element(inner);
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(field.from_int(n));
    }
    field.parse_element(s)
}

/// Coefficient text, parenthesized when it is not a bare integer.
pub(crate) fn format_coeff(field: &FieldCtx, c: u64) -> String {
    let s = field.format(c);
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (g, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coeff = format_coeff(&self.field, c);
            terms.push(match (g, c) {
                (0, _) => coeff,
                (g, 1) => format!("g{g}"),
                (g, _) => format!("{coeff}*g{g}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

pub fn gr_mul(a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
    a.mul(b)
}

pub fn gr_is_unit(a: &GroupRingElem) -> bool {
    a.is_unit()
}

pub fn gr_inverse(a: &GroupRingElem) -> Result<GroupRingElem> {
    a.inverse()
}

/// `|H|⁻¹` in the field, or the typed error when the characteristic divides `|H|`.
pub(crate) fn inverse_of_order(field: &FieldCtx, order: usize) -> Result<u64> {
    field.inv(field.from_u64(order as u64)).ok_or(Error::NotInvertible {
        order: order as u64,
        characteristic: field.characteristic(),
    })
}

/// `e_H = |H|⁻¹ Σ_{h∈H} h`.
pub fn idempotent_eh(h: &Subgroup, field: &Arc<FieldCtx>) -> Result<GroupRingElem> {
    let c = inverse_of_order(field, h.order())?;
    let mut e = GroupRingElem::zero(field, h.parent());
    for &x in h.elements() {
        e.coeffs[x as usize] = c;
    }
    Ok(e)
}

/// `a ↦ (ε(a), a(1 − e_H))` for `R[G] ≅ R[G/H] × Δ(G, H)`.
pub fn gr_decompose(a: &GroupRingElem, q: &Quotient) -> Result<(GroupRingElem, GroupRingElem)> {
    let e = idempotent_eh(&q.subgroup, &a.field)?;
    let f = GroupRingElem::one(&a.field, &a.group).sub(&e)?;
    Ok((a.augmentation(q)?, a.mul(&f)?))
}

/// Rebuilds `a` from its two components: the first is lifted along
/// `c ↦ |H|⁻¹ Σ_{g∈c} g`, which is `R[G/H] ≅ R[G]e_H`.
pub fn gr_recompose(q: &Quotient, eps: &GroupRingElem, delta: &GroupRingElem) -> Result<GroupRingElem> {
    let field = &delta.field;
    let c = inverse_of_order(field, q.subgroup.order())?;
    if !same_group(&eps.group, &q.group) || !same_group(&delta.group, q.subgroup.parent()) {
        return Err(Error::GroupMismatch);
    }
    let mut lifted = GroupRingElem::zero(field, &delta.group);
    for (g, &coset) in q.projection.iter().enumerate() {
        lifted.coeffs[g] = field.mul(eps.coeffs[coset as usize], c);
    }
    lifted.add(delta)
}

/// One summand family of `F_q[G] ≅ ⊕_d a_d F_q(ζ_d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnEntry {
    /// Element order `d`.
    pub d: u64,
    /// Number of elements of order `d`.
    pub n_d: u64,
    /// Multiplicity `a_d = n_d / ord_d(q)`.
    pub count: u64,
    /// Degree `ord_d(q)` of each summand over `F_q`.
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnData {
    pub q: u64,
    pub group_order: u64,
    pub entries: Vec<WedderburnEntry>,
}

impl WedderburnData {
    /// `∏_d (q^{ord_d(q)} − 1)^{a_d}`.
    pub fn unit_count(&self) -> BigUint {
        self.entries.iter().fold(BigUint::from(1u32), |acc, e| {
            acc * num_traits::pow::pow(big_pow(self.q, e.degree) - 1u32, e.count as usize)
        })
    }

    /// Total `F_q`-dimension `Σ a_d ord_d(q)`.
    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|e| e.count * e.degree).sum()
    }
}

/// Decomposition data of a semisimple abelian group algebra.
pub fn wedderburn_abelian(g: &FiniteGroup, field: &FieldCtx) -> Result<WedderburnData> {
    if !g.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let p = field.characteristic();
    if g.order() as u64 % p == 0 {
        return Err(Error::ModularCase { order: g.order() as u64, characteristic: p });
    }
    let q = field.order();
    let mut entries = Vec::new();
    for (d, n_d) in g.order_counts() {
        let degree = ord_mod(d, q)?;
        if n_d % degree != 0 {
            return Err(Error::Internal(format!("ord_{d}({q}) = {degree} does not divide n_{d} = {n_d}")));
        }
        entries.push(WedderburnEntry { d, n_d, count: n_d / degree, degree });
    }
    let data = WedderburnData { q, group_order: g.order() as u64, entries };
    if data.dimension() != data.group_order {
        return Err(Error::Internal("Wedderburn dimensions do not add up".into()));
    }
    Ok(data)
}

/// `|F_q[G]^×|` for abelian `G` coprime to the characteristic.
pub fn gr_unit_count(g: &FiniteGroup, field: &FieldCtx) -> Result<BigUint> {
    Ok(wedderburn_abelian(g, field)?.unit_count())
}

/// `|F_q[G]^×|` whenever the Sylow `p`-subgroup `P` is normal with abelian
/// quotient: the radical is the kernel of `F_q[G] → F_q[G/P]`, so the count is
/// `q^{|G| − |G/P|} · |F_q[G/P]^×|`.
pub fn gr_unit_count_general(g: &Arc<FiniteGroup>, field: &FieldCtx) -> Result<BigUint> {
    let p = field.characteristic();
    let sylow = Subgroup::normal_sylow(g, p)
        .ok_or_else(|| Error::Unsupported(format!("{} has no normal Sylow {p}-subgroup", g.label())))?;
    let quo = quotient(g, &sylow)?;
    let semisimple = gr_unit_count(&quo.group, field)?;
    Ok(big_pow(field.order(), (g.order() - quo.group.order()) as u64) * semisimple)
}
