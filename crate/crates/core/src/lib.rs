//! Join rings `J_{G_1,…,G_d}(F_q)` of group rings over finite fields.
//!
//! An element is a `d × d` block matrix whose diagonal blocks are
//! `G_i`-circulants and whose off-diagonal blocks are constant. The crate
//! provides finite fields, small groups, group rings, join rings, their zeta
//! functions and unit counts, `Δ_n` classification, and brute-force oracles
//! that check every closed form on small cases.

pub mod arith;
pub mod error;
pub mod ffield;
pub mod groupring;
pub mod groups;
pub mod joinring;
pub mod matrix;
pub mod oracle;
pub mod zeta;

pub use error::{Error, Result};
