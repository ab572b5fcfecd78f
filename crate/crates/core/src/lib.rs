//! Exact element-order statistics for concrete finite groups.
//!
//! The crate enumerates small finite groups (permutation groups, 2×2 linear
//! groups over finite fields and direct products of these), computes the sum
//! of element orders ψ(G) and the average order o(G) = ψ(G)/|G| as exact
//! fractions, and checks a family of solvability thresholds on o(G) against
//! an independent derived-series test.

pub mod criterion;
pub mod error;
pub mod field;
pub mod group;
pub mod inversion;
pub mod rational;
pub mod stats;
pub mod structure;

pub use error::{Error, Result};
pub use group::{enumerate, enumerate_capped, enumerate_str, parse_spec, EnumeratedGroup, GroupSpec};
pub use rational::Rational;
pub use stats::OrderSpectrum;
pub use structure::ElementSet;
