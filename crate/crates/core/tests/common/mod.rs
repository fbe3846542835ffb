#![allow(dead_code)]

use std::sync::Arc;

use join_ring::ffield::FieldCtx;
use join_ring::groups::{FiniteGroup, Subgroup};
use join_ring::joinring::JoinShape;

pub fn field(q: u64) -> Arc<FieldCtx> {
    FieldCtx::parse_spec(&format!("F{q}")).unwrap()
}

pub fn group(s: &str) -> Arc<FiniteGroup> {
    FiniteGroup::parse_spec(s).unwrap()
}

pub fn shape(s: &str) -> Arc<JoinShape> {
    JoinShape::parse(s).unwrap()
}

pub fn normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    Subgroup::all_subgroups(g).into_iter().filter(Subgroup::is_normal).collect()
}

/// Abelian groups of order at most 16, by invariants.
pub fn small_abelian() -> Vec<Arc<FiniteGroup>> {
    let invariants: &[&[u64]] = &[
        &[], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2], &[9], &[3, 3], &[10], &[11],
        &[12], &[2, 6], &[13], &[14], &[15], &[16], &[2, 8], &[4, 4], &[2, 2, 4], &[2, 2, 2, 2],
    ];
    invariants.iter().map(|i| FiniteGroup::abelian(i).unwrap()).collect()
}

pub const FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
