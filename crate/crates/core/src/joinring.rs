//! Join rings `J_{G_1,…,G_d}(F_q)`.
//!
//! An element is the block matrix with `G_i`-circulant diagonal blocks `C_i`
//! and constant off-diagonal blocks `a_ij · J_{k_i,k_j}`. It is stored as the
//! `d` coefficient vectors of the `C_i` plus the `d × d` scalars `a_ij` (the
//! diagonal of that array is unused and kept at zero). Products use the
//! closed block formula; [`JoinElem::embed`] gives the full matrix.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::arith::{big_pow, gl_order, is_prime, ord_mod};
use crate::error::{Error, Result};
use crate::ffield::{same_field, FieldCtx};
use crate::groupring::{
    convolve, format_coeff, gr_unit_count, gr_unit_count_general, idempotent_eh, inverse_of_order, parse_coeff,
    same_group, GroupRingElem,
};
use crate::groups::{coprime_to, quotient, FiniteGroup, Quotient, Subgroup};
use crate::matrix::Matrix;

#[derive(Debug)]
pub struct JoinShape {
    field: Arc<FieldCtx>,
    groups: Vec<Arc<FiniteGroup>>,
    offsets: Vec<usize>,
    n: usize,
    order: Vec<usize>,
    r: usize,
}

impl PartialEq for JoinShape {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field)
            && self.groups.len() == other.groups.len()
            && self.groups.iter().zip(&other.groups).all(|(a, b)| same_group(a, b))
    }
}

impl Eq for JoinShape {}

impl JoinShape {
    pub fn new(field: &Arc<FieldCtx>, groups: Vec<Arc<FiniteGroup>>) -> Result<Arc<JoinShape>> {
        if groups.is_empty() {
            return Err(Error::InvalidArgument("a join shape needs at least one group".into()));
        }
        let mut offsets = Vec::with_capacity(groups.len());
        let mut n = 0;
        for g in &groups {
            offsets.push(n);
            n += g.order();
        }
        let p = field.characteristic();
        let (mut order, modular): (Vec<usize>, Vec<usize>) =
            (0..groups.len()).partition(|&i| coprime_to(&groups[i], p));
        let r = order.len();
        order.extend(modular);
        Ok(Arc::new(JoinShape { field: Arc::clone(field), groups, offsets, n, order, r }))
    }

    /// Parses `join(C3,C5;F2)`.
    pub fn parse(spec: &str) -> Result<Arc<JoinShape>> {
        let s = spec.trim();
        let inner = s
            .strip_prefix("join(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("shape must look like join(G1,...,Gd;Fq): {s:?}")))?;
        let (groups, field) = inner
            .rsplit_once(';')
            .ok_or_else(|| Error::Parse(format!("missing ';F<q>' in {s:?}")))?;
        let field = FieldCtx::parse_spec(field)?;
        let groups = groups
            .split(',')
            .map(FiniteGroup::parse_spec)
            .collect::<Result<Vec<_>>>()?;
        Self::new(&field, groups)
    }

    pub fn label(&self) -> String {
        let gs: Vec<&str> = self.groups.iter().map(|g| g.label()).collect();
        format!("join({};{})", gs.join(","), self.field.label())
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn groups(&self) -> &[Arc<FiniteGroup>] {
        &self.groups
    }

    pub fn d(&self) -> usize {
        self.groups.len()
    }

    /// Matrix size `Σ k_i`.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn block_order(&self, i: usize) -> usize {
        self.groups[i].order()
    }

    /// Dimension over `F_q`: `Σ k_i + d(d − 1)`.
    pub fn dim(&self) -> usize {
        let d = self.d();
        self.n + d * (d - 1)
    }

    /// Number of blocks whose order is prime to the characteristic.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Block indices with the non-modular blocks first; the first `r` entries
    /// are the non-modular ones, each part in original order.
    pub fn nonmodular_first(&self) -> &[usize] {
        &self.order
    }

    pub fn is_semisimple(&self) -> bool {
        self.r == self.d()
    }

    /// The shape of the sub-join on the given blocks.
    pub fn restrict(&self, blocks: &[usize]) -> Result<Arc<JoinShape>> {
        Self::new(&self.field, blocks.iter().map(|&i| Arc::clone(&self.groups[i])).collect())
    }
}

#[derive(Clone, Debug)]
pub struct JoinElem {
    shape: Arc<JoinShape>,
    blocks: Vec<u64>,
    offdiag: Vec<u64>,
}

impl PartialEq for JoinElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.shape, &other.shape) || *self.shape == *other.shape)
            && self.blocks == other.blocks
            && self.offdiag == other.offdiag
    }
}

impl Eq for JoinElem {}

impl JoinElem {
    pub fn zero(shape: &Arc<JoinShape>) -> JoinElem {
        let d = shape.d();
        JoinElem { shape: Arc::clone(shape), blocks: vec![0; shape.n], offdiag: vec![0; d * d] }
    }

    pub fn identity(shape: &Arc<JoinShape>) -> JoinElem {
        let mut e = Self::zero(shape);
        for &o in &shape.offsets {
            e.blocks[o] = 1;
        }
        e
    }

    /// Builds an element from block coefficient vectors and a `d × d` array of
    /// off-diagonal codes (diagonal entries must be zero).
    pub fn from_parts(shape: &Arc<JoinShape>, blocks: &[Vec<u64>], offdiag: &[Vec<u64>]) -> Result<JoinElem> {
        let d = shape.d();
        let q = shape.field.order();
        if blocks.len() != d || offdiag.len() != d || offdiag.iter().any(|row| row.len() != d) {
            return Err(Error::ShapeMismatch);
        }
        let mut e = Self::zero(shape);
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != shape.block_order(i) {
                return Err(Error::ShapeMismatch);
            }
            if b.iter().any(|&c| c >= q) {
                return Err(Error::InvalidArgument("coefficient code out of range".into()));
            }
            e.block_mut(i).copy_from_slice(b);
        }
        for i in 0..d {
            for j in 0..d {
                let v = offdiag[i][j];
                if v >= q {
                    return Err(Error::InvalidArgument("coefficient code out of range".into()));
                }
                if i == j && v != 0 {
                    return Err(Error::InvalidArgument("diagonal off-block entries must be zero".into()));
                }
                e.offdiag[i * d + j] = v;
            }
        }
        Ok(e)
    }

    /// The block-diagonal element with the given group-ring blocks.
    pub fn diagonal(shape: &Arc<JoinShape>, blocks: &[GroupRingElem]) -> Result<JoinElem> {
        if blocks.len() != shape.d() {
            return Err(Error::ShapeMismatch);
        }
        let mut e = Self::zero(shape);
        for (i, b) in blocks.iter().enumerate() {
            if !same_group(b.group(), &shape.groups[i]) || !same_field(b.field(), &shape.field) {
                return Err(Error::ShapeMismatch);
            }
            e.block_mut(i).copy_from_slice(b.coeffs());
        }
        Ok(e)
    }

    pub fn shape(&self) -> &Arc<JoinShape> {
        &self.shape
    }

    pub fn block_coeffs(&self, i: usize) -> &[u64] {
        let o = self.shape.offsets[i];
        &self.blocks[o..o + self.shape.block_order(i)]
    }

    fn block_mut(&mut self, i: usize) -> &mut [u64] {
        let o = self.shape.offsets[i];
        let k = self.shape.block_order(i);
        &mut self.blocks[o..o + k]
    }

    pub fn block(&self, i: usize) -> GroupRingElem {
        GroupRingElem::from_coeffs_unchecked(&self.shape.field, &self.shape.groups[i], self.block_coeffs(i).to_vec())
    }

    pub fn offdiag(&self, i: usize, j: usize) -> u64 {
        self.offdiag[i * self.shape.d() + j]
    }

    pub fn set_offdiag(&mut self, i: usize, j: usize, v: u64) {
        assert!(i != j, "diagonal off-block entry");
        let d = self.shape.d();
        self.offdiag[i * d + j] = v;
    }

    pub fn offdiag_rows(&self) -> Vec<Vec<u64>> {
        self.offdiag.chunks(self.shape.d()).map(<[u64]>::to_vec).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<u64>> {
        (0..self.shape.d()).map(|i| self.block_coeffs(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().chain(&self.offdiag).all(|&c| c == 0)
    }

    /// `true` iff every off-diagonal scalar is zero.
    pub fn is_diagonal(&self) -> bool {
        self.offdiag.iter().all(|&c| c == 0)
    }

    /// Coordinates: block coefficients in order, then `a_ij` for `i ≠ j` row by row.
    pub fn to_coords(&self) -> Vec<u64> {
        let d = self.shape.d();
        let mut v = self.blocks.clone();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    v.push(self.offdiag[i * d + j]);
                }
            }
        }
        v
    }

    pub fn from_coords(shape: &Arc<JoinShape>, coords: &[u64]) -> JoinElem {
        debug_assert_eq!(coords.len(), shape.dim());
        let d = shape.d();
        let mut e = Self::zero(shape);
        e.blocks.copy_from_slice(&coords[..shape.n]);
        let mut it = coords[shape.n..].iter();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    e.offdiag[i * d + j] = *it.next().unwrap();
                }
            }
        }
        e
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.shape, &other.shape) || *self.shape == *other.shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch)
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> JoinElem {
        JoinElem {
            shape: Arc::clone(&self.shape),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(&a, &b)| op(a, b)).collect(),
            offdiag: self.offdiag.iter().zip(&other.offdiag).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<JoinElem> {
        self.check(other)?;
        let f = &self.shape.field;
        Ok(self.zip_with(other, |a, b| f.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<JoinElem> {
        self.check(other)?;
        let f = &self.shape.field;
        Ok(self.zip_with(other, |a, b| f.sub(a, b)))
    }

    pub fn scale(&self, c: u64) -> JoinElem {
        let f = &self.shape.field;
        self.zip_with(self, |a, _| f.mul(a, c))
    }

    /// Block-formula product.
    pub fn mul(&self, other: &Self) -> Result<JoinElem> {
        self.check(other)?;
        let shape = &self.shape;
        let f = &*shape.field;
        let d = shape.d();
        let sizes: Vec<u64> = (0..d).map(|k| f.from_u64(shape.block_order(k) as u64)).collect();
        let eps_a: Vec<u64> = (0..d).map(|i| sum(f, self.block_coeffs(i))).collect();
        let eps_b: Vec<u64> = (0..d).map(|i| sum(f, other.block_coeffs(i))).collect();
        let a = |i: usize, j: usize| self.offdiag[i * d + j];
        let b = |i: usize, j: usize| other.offdiag[i * d + j];
        let mut out = Self::zero(shape);
        for i in 0..d {
            let g = &shape.groups[i];
            let mut c = convolve(f, g, self.block_coeffs(i), other.block_coeffs(i));
            let mut s = 0u64;
            for k in (0..d).filter(|&k| k != i) {
                s = f.add(s, f.mul(f.mul(a(i, k), b(k, i)), sizes[k]));
            }
            if s != 0 {
                for x in c.iter_mut() {
                    *x = f.add(*x, s);
                }
            }
            out.block_mut(i).copy_from_slice(&c);
            for j in (0..d).filter(|&j| j != i) {
                let mut v = f.add(f.mul(eps_a[i], b(i, j)), f.mul(a(i, j), eps_b[j]));
                for k in (0..d).filter(|&k| k != i && k != j) {
                    v = f.add(v, f.mul(f.mul(a(i, k), b(k, j)), sizes[k]));
                }
                out.offdiag[i * d + j] = v;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> JoinElem {
        let mut acc = Self::identity(&self.shape);
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

    /// The full `n × n` block matrix.
    pub fn embed(&self) -> Matrix {
        let shape = &self.shape;
        let d = shape.d();
        let mut m = Matrix::zeros(shape.n, shape.n);
        for i in 0..d {
            let circ = self.block(i).to_circulant();
            let oi = shape.offsets[i];
            for (r, row) in circ.to_rows().into_iter().enumerate() {
                for (c, v) in row.into_iter().enumerate() {
                    m.set(oi + r, oi + c, v);
                }
            }
            for j in (0..d).filter(|&j| j != i) {
                let v = self.offdiag(i, j);
                let oj = shape.offsets[j];
                for r in 0..shape.block_order(i) {
                    for c in 0..shape.block_order(j) {
                        m.set(oi + r, oj + c, v);
                    }
                }
            }
        }
        m
    }

    /// Pulls a matrix back into the join subring.
    pub fn from_matrix(shape: &Arc<JoinShape>, m: &Matrix) -> Result<JoinElem> {
        if m.rows != shape.n || m.cols != shape.n {
            return Err(Error::NotInSubring("of the join size".into()));
        }
        let d = shape.d();
        let mut e = Self::zero(shape);
        for i in 0..d {
            let (oi, ki) = (shape.offsets[i], shape.block_order(i));
            let block = Matrix::from_rows(
                &(0..ki).map(|r| (0..ki).map(|c| m.get(oi + r, oi + c)).collect()).collect::<Vec<_>>(),
            );
            let c = GroupRingElem::from_circulant(&shape.field, &shape.groups[i], &block)?;
            e.block_mut(i).copy_from_slice(c.coeffs());
            for j in (0..d).filter(|&j| j != i) {
                let (oj, kj) = (shape.offsets[j], shape.block_order(j));
                let v = m.get(oi, oj);
                for r in 0..ki {
                    for c in 0..kj {
                        if m.get(oi + r, oj + c) != v {
                            return Err(Error::NotInSubring("constant off the diagonal blocks".into()));
                        }
                    }
                }
                e.offdiag[i * d + j] = v;
            }
        }
        Ok(e)
    }

    pub fn is_unit(&self) -> bool {
        self.embed().is_invertible(&self.shape.field)
    }

    /// Inverse through the embedding. An inverse matrix outside the join
    /// subring would contradict the ring structure and is reported as internal.
    pub fn inverse(&self) -> Result<JoinElem> {
        let inv = self.embed().inverse(&self.shape.field).ok_or(Error::NotAUnit)?;
        Self::from_matrix(&self.shape, &inv)
            .map_err(|e| Error::Internal(format!("inverse left the join subring: {e}")))
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self) -> Result<u64> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let one = Self::identity(&self.shape);
        let mut x = self.clone();
        let mut k = 1;
        while x != one {
            x = x.mul(self)?;
            k += 1;
        }
        Ok(k)
    }

    /// Generalized augmentation along quotients `G_i → G_i/H_i`: blocks map by
    /// the classical augmentation and `a_ij ↦ |H_j| a_ij`.
    pub fn gen_augmentation(&self, quotients: &[Quotient]) -> Result<JoinElem> {
        let shape = &self.shape;
        let d = shape.d();
        if quotients.len() != d {
            return Err(Error::ShapeMismatch);
        }
        for (q, g) in quotients.iter().zip(&shape.groups) {
            if !same_group(q.subgroup.parent(), g) {
                return Err(Error::GroupMismatch);
            }
        }
        let f = &shape.field;
        let target = JoinShape::new(f, quotients.iter().map(|q| Arc::clone(&q.group)).collect())?;
        let mut out = Self::zero(&target);
        for (i, q) in quotients.iter().enumerate() {
            let aug = self.block(i).augmentation(q)?;
            out.block_mut(i).copy_from_slice(aug.coeffs());
            for j in (0..d).filter(|&j| j != i) {
                let h = f.from_u64(quotients[j].subgroup.order() as u64);
                out.offdiag[i * d + j] = f.mul(h, self.offdiag(i, j));
            }
        }
        Ok(out)
    }

    /// Generalized augmentation from normal subgroups.
    pub fn augment_by(&self, subgroups: &[Subgroup]) -> Result<JoinElem> {
        let qs = quotients_of(&self.shape, subgroups)?;
        self.gen_augmentation(&qs)
    }

    /// The matrix-valued augmentation `J → M_d(F_q)`, i.e. all `H_i = G_i`.
    pub fn augmentation_matrix(&self) -> Matrix {
        let shape = &self.shape;
        let f = &*shape.field;
        let d = shape.d();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            m.set(i, i, sum(f, self.block_coeffs(i)));
            for j in (0..d).filter(|&j| j != i) {
                m.set(i, j, f.mul(f.from_u64(shape.block_order(j) as u64), self.offdiag(i, j)));
            }
        }
        m
    }

    /// Parses `1+g1; g2; a[1][2]=1`: `d` block literals in order, then
    /// 1-based off-diagonal assignments.
    pub fn parse(shape: &Arc<JoinShape>, s: &str) -> Result<JoinElem> {
        let d = shape.d();
        let mut e = Self::zero(shape);
        let mut block_idx = 0;
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some(rest) = part.strip_prefix("a[") {
                let (ij, value) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected a[i][j]=v, got {part:?}")))?;
                let ij = ij.trim().strip_suffix(']').unwrap_or(ij);
                let (i, j) = ij
                    .split_once("][")
                    .ok_or_else(|| Error::Parse(format!("expected a[i][j]=v, got {part:?}")))?;
                let parse_idx = |t: &str| -> Result<usize> {
                    let v: usize = t.trim().parse().map_err(|_| Error::Parse(format!("bad index in {part:?}")))?;
                    if v == 0 || v > d {
                        return Err(Error::Parse(format!("index out of range in {part:?}")));
                    }
                    Ok(v - 1)
                };
                let (i, j) = (parse_idx(i)?, parse_idx(j)?);
                if i == j {
                    return Err(Error::Parse(format!("a[{}][{}] is not off-diagonal", i + 1, j + 1)));
                }
                let v: String = value.chars().filter(|c| !c.is_whitespace()).collect();
                e.offdiag[i * d + j] = parse_coeff(&shape.field, &v)?;
            } else {
                if block_idx >= d {
                    return Err(Error::Parse(format!("more than {d} block literals")));
                }
                let b = GroupRingElem::parse(&shape.field, &shape.groups[block_idx], part)?;
                e.block_mut(block_idx).copy_from_slice(b.coeffs());
                block_idx += 1;
            }
        }
        if block_idx != d {
            return Err(Error::Parse(format!("expected {d} block literals, got {block_idx}")));
        }
        Ok(e)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape.label(),
            "blocks": self.blocks(),
            "offdiag": self.offdiag_rows(),
        })
    }

    pub fn from_json(v: &Value) -> Result<JoinElem> {
        let bad = |what: &str| Error::Parse(format!("join element JSON: {what}"));
        let shape = JoinShape::parse(v.get("shape").and_then(Value::as_str).ok_or_else(|| bad("missing shape"))?)?;
        let arr = |key: &str| -> Result<Vec<Vec<u64>>> {
            serde_json::from_value(v.get(key).cloned().ok_or_else(|| bad(key))?).map_err(|e| bad(&e.to_string()))
        };
        Self::from_parts(&shape, &arr("blocks")?, &arr("offdiag")?)
    }
}

impl fmt::Display for JoinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.shape.d();
        let mut parts: Vec<String> = (0..d).map(|i| self.block(i).to_string()).collect();
        for i in 0..d {
            for j in 0..d {
                let v = self.offdiag[i * d + j];
                if i != j && v != 0 {
                    parts.push(format!("a[{}][{}]={}", i + 1, j + 1, format_coeff(&self.shape.field, v)));
                }
            }
        }
        f.write_str(&parts.join("; "))
    }
}

fn sum(f: &FieldCtx, v: &[u64]) -> u64 {
    v.iter().fold(0, |acc, &c| f.add(acc, c))
}

pub fn quotients_of(shape: &JoinShape, subgroups: &[Subgroup]) -> Result<Vec<Quotient>> {
    if subgroups.len() != shape.d() {
        return Err(Error::ShapeMismatch);
    }
    shape.groups.iter().zip(subgroups).map(|(g, h)| quotient(g, h)).collect()
}

pub fn join_mul(a: &JoinElem, b: &JoinElem) -> Result<JoinElem> {
    a.mul(b)
}

pub fn join_embed(a: &JoinElem) -> Matrix {
    a.embed()
}

pub fn gen_augmentation(a: &JoinElem, subgroups: &[Subgroup]) -> Result<JoinElem> {
    a.augment_by(subgroups)
}

pub fn join_is_unit(a: &JoinElem) -> bool {
    a.is_unit()
}

pub fn join_inverse(a: &JoinElem) -> Result<JoinElem> {
    a.inverse()
}

/// `f̃_1, …, f̃_d, f̃_{d+1}`: `f̃_i` is block-diagonal with `1 − e_{H_i}` in
/// block `i`, and `f̃_{d+1}` is the identity minus their sum.
pub fn join_idempotents(shape: &Arc<JoinShape>, subgroups: &[Subgroup]) -> Result<Vec<JoinElem>> {
    let d = shape.d();
    if subgroups.len() != d {
        return Err(Error::ShapeMismatch);
    }
    let f = &shape.field;
    let mut out = Vec::with_capacity(d + 1);
    let mut rest = JoinElem::identity(shape);
    for (i, h) in subgroups.iter().enumerate() {
        if !same_group(h.parent(), &shape.groups[i]) {
            return Err(Error::GroupMismatch);
        }
        let e = idempotent_eh(h, f)?;
        let fi = GroupRingElem::one(f, &shape.groups[i]).sub(&e)?;
        let mut elem = JoinElem::zero(shape);
        elem.block_mut(i).copy_from_slice(fi.coeffs());
        rest = rest.sub(&elem)?;
        out.push(elem);
    }
    out.push(rest);
    Ok(out)
}

/// `A ↦ (ε(A), [C_i (1 − e_{H_i})])` for `J ≅ J_{G_i/H_i} × ∏ Δ(G_i, H_i)`.
pub fn join_decompose(a: &JoinElem, subgroups: &[Subgroup]) -> Result<(JoinElem, Vec<GroupRingElem>)> {
    let shape = &a.shape;
    let qs = quotients_of(shape, subgroups)?;
    let f = &shape.field;
    let mut deltas = Vec::with_capacity(shape.d());
    for (i, h) in subgroups.iter().enumerate() {
        let e = idempotent_eh(h, f)?;
        let fi = GroupRingElem::one(f, &shape.groups[i]).sub(&e)?;
        deltas.push(a.block(i).mul(&fi)?);
    }
    Ok((a.gen_augmentation(&qs)?, deltas))
}

/// Inverse of [`join_decompose`].
pub fn join_recompose(
    shape: &Arc<JoinShape>,
    subgroups: &[Subgroup],
    eps: &JoinElem,
    deltas: &[GroupRingElem],
) -> Result<JoinElem> {
    let qs = quotients_of(shape, subgroups)?;
    let f = &*shape.field;
    let d = shape.d();
    if deltas.len() != d || eps.shape.d() != d {
        return Err(Error::ShapeMismatch);
    }
    let mut out = JoinElem::zero(shape);
    for (i, q) in qs.iter().enumerate() {
        let c = inverse_of_order(f, q.subgroup.order())?;
        let eb = eps.block_coeffs(i);
        let lifted: Vec<u64> = (0..shape.block_order(i))
            .map(|g| f.add(f.mul(eb[q.projection[g] as usize], c), deltas[i].coeffs()[g]))
            .collect();
        out.block_mut(i).copy_from_slice(&lifted);
        for j in (0..d).filter(|&j| j != i) {
            let hj = inverse_of_order(f, qs[j].subgroup.order())?;
            out.offdiag[i * d + j] = f.mul(eps.offdiag(i, j), hj);
        }
    }
    Ok(out)
}

/// `|J_{Z/p_1,…,Z/p_d}(F_q)^×| = |GL_d(F_q)| · ∏ |Δ(Z/p_i)^×|` with
/// `|Δ(Z/p)^×| = (q^{ord_p(q)} − 1)^{(p−1)/ord_p(q)}`.
pub fn join_unit_count(primes: &[u64], field: &FieldCtx) -> Result<BigUint> {
    check_block_primes(primes, field.characteristic())?;
    let q = field.order();
    let mut total = gl_order(primes.len() as u64, q);
    for &p in primes {
        let n = ord_mod(p, q)?;
        total *= num_traits::pow::pow(big_pow(q, n) - 1u32, ((p - 1) / n) as usize);
    }
    Ok(total)
}

/// The rooted-case value `∏ (q^{p_i − 1} − 1) · ∏_{i<d} (q^d − q^i)`.
pub fn join_unit_count_rooted_formula(primes: &[u64], q: u64) -> BigUint {
    let d = primes.len() as u64;
    primes.iter().fold(gl_order(d, q), |acc, &p| acc * (big_pow(q, p - 1) - 1u32))
}

pub(crate) fn check_block_primes(primes: &[u64], characteristic: u64) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("at least one prime is required".into()));
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == characteristic {
            return Err(Error::InvalidArgument(format!("{p} equals the characteristic")));
        }
        if primes[..i].contains(&p) {
            return Err(Error::InvalidArgument(format!("prime {p} repeated")));
        }
    }
    Ok(())
}

/// `|J^×|` for any shape whose blocks are abelian when non-modular and have a
/// normal Sylow subgroup with abelian quotient when modular. With `r`
/// non-modular blocks, the radical is the kernel of
/// `J → J_{G_1..G_r} × ∏_{i>r} F_q[G_i]^ss`, and
/// `J_{G_1..G_r} ≅ M_r(F_q) × ∏_{i≤r} Δ(G_i)`.
pub fn join_unit_count_general(shape: &Arc<JoinShape>) -> Result<BigUint> {
    let f = &*shape.field;
    let q = f.order();
    let r = shape.r();
    let mut ss_dim = (r * r) as u64;
    let mut units = gl_order(r as u64, q);
    for &i in &shape.order[..r] {
        let g = &shape.groups[i];
        ss_dim += g.order() as u64 - 1;
        // |Δ(G)^×| = |F_q[G]^×| / (q − 1), since F_q[G] ≅ F_q × Δ(G).
        units = units * gr_unit_count(g, f)? / BigUint::from(q - 1);
    }
    for &i in &shape.order[r..] {
        let g = &shape.groups[i];
        let sylow = Subgroup::normal_sylow(g, f.characteristic()).ok_or_else(|| {
            Error::Unsupported(format!("{} has no normal Sylow {}-subgroup", g.label(), f.characteristic()))
        })?;
        let quo = quotient(g, &sylow)?;
        ss_dim += quo.group.order() as u64;
        units *= gr_unit_count(&quo.group, f)?;
    }
    let rad_dim = shape.dim() as u64 - ss_dim;
    Ok(big_pow(q, rad_dim) * units)
}

/// Number of diagonal units, `∏ |F_q[G_i]^×|`.
pub fn diagonal_unit_count(shape: &Arc<JoinShape>) -> Result<BigUint> {
    shape
        .groups
        .iter()
        .try_fold(BigUint::from(1u32), |acc, g| Ok(acc * gr_unit_count_general(g, &shape.field)?))
}
