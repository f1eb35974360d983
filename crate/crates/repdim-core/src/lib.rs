//! Exact character tables and minimal faithful representation degrees for
//! finite groups of desk scale (order ≤ ~10,000).
//!
//! The pipeline: construct a group from a spec string ([`groupspec`]),
//! compute its conjugacy-class structure ([`group`]), build the exact
//! character table by the class-matrix eigenvector method over a finite
//! field lifted to cyclotomic integers ([`dixon`], [`cyclo`]), then read
//! off δ_irr and solve an exact set cover for the representation dimension
//! δ ([`faithful`]). Closed-form family values ([`formulas`]) serve as
//! independent oracles.
//!
//! Cyclotomic arithmetic is generic over its integer coefficient type; the
//! aliases below fix the instantiations used throughout: checked `i64` by
//! default, `BigInt` for unbounded headroom.

pub mod cyclo;
pub mod dixon;
pub mod faithful;
pub mod finfield;
pub mod group;
pub mod groupspec;
pub mod modp;
pub mod perm;
pub mod formulas;

/// Default cyclotomic integer: `i64` coefficients with checked overflow.
pub type Cyclo = cyclo::Cyclo<i64>;
/// Arbitrary-precision cyclotomic integer.
pub type BigCyclo = cyclo::Cyclo<num_bigint::BigInt>;
/// Character table over the default coefficient type (the JSON schema type).
pub type CharacterTable = dixon::CharacterTable<i64>;

pub use group::{build_group, Group, GroupError, DEFAULT_ORDER_BOUND};
pub use groupspec::GroupSpec;
