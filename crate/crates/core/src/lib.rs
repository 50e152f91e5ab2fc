//! Tame ray class groups of quadratic fields and explicit capitulation.
//!
//! The crate computes ray class groups `Cl^m` of quadratic fields for
//! squarefree tame moduli, checks the ambiguous ray-class-number formula
//! for quadratic extensions, searches for a prime `p` whose cyclic
//! `p`-ramified extension `F` makes a chosen ray class principal in `K F`,
//! and verifies that principalization with an explicit generator when
//! `[F : Q] = 2`.

#![allow(clippy::needless_range_loop, clippy::large_enum_variant, clippy::wrong_self_convention)]

pub mod error;
pub mod bigstr;
pub mod abgroup;
pub mod exactmath;
pub mod nf;
pub mod quadfield;
pub mod kummerfrob;
pub mod capsearch;
pub mod biquad;
pub mod ambigcheck;
pub mod cli;

pub use error::{Error, Result};
