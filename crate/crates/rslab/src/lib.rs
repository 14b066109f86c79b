//! rslab: an exact workbench connecting Reed-Solomon decoding with discrete
//! logarithms over extension fields.
//!
//! The crate builds decoding instances from extension-field elements through
//! the map psi(A) = prod_{a in A} (x - a) mod h(x), runs index calculus with
//! the linear factor base {alpha - a}, using a list or bounded-distance
//! decoder as the relation oracle, and verifies the finite combinatorial
//! claims around the g-hat decoding threshold by exact big-integer search.
//!
//! Everything is exact or verified: decoders re-check distances, relations
//! re-check by exponentiation, rationals are never rounded, and randomized
//! runs replay deterministically from a seed.
//!
//! Start with the runnable examples (`cargo run --release --example ...`):
//! each major capability has one. The `rslab` binary exposes the same
//! operations as subcommands for scripted runs.

pub mod algebra;
pub mod arith;
pub mod cli;
pub mod dlog;
pub mod error;
pub mod products;
pub mod radius;
pub mod reduction;
pub mod rscodec;
pub mod selftest;

pub use error::{Error, ErrorCategory, Result};
