//! Metric dendrite models of nonarchimedean curve spaces.
//!
//! The crate has three layers:
//!
//! - **Simplicial machinery** ([`complex`], [`embed`]): finite simplicial
//!   complexes with exact rational realizations, piecewise-linear maps, and
//!   a certified embedding of inverse systems of complexes of dimension
//!   <= d into R^(2d+1). Certificates carry per-level separation bounds
//!   (`alpha_n`), drift budgets (`epsilon_n`) and the checked pair sets,
//!   and are re-verified by an independent checker.
//! - **Graph and dendrite topology** ([`graph`], [`dendrite`]): finite
//!   metric multigraphs with exact rational lengths (core skeleton, first
//!   Betti number, homeomorphism canonical forms, planarity with Kuratowski
//!   witnesses), pointed metric trees, G-dendrites glued from fibers, the
//!   sprouting operator, and finite-depth approximants of the Wazewski
//!   universal dendrite and of universal G-dendrites.
//! - **Curve models** ([`berkovich`]): homeomorphism-type verdicts for
//!   curve parameter specs, construction of the matching approximant
//!   models, puncturing, and extraction of inverse systems of skeleta that
//!   feed the embedding engine.
//!
//! All coordinates, lengths and certificate bounds are exact rationals;
//! floating point appears only in quantitative rank tests (singular values
//! against a tolerance) and in exported coordinates.

pub mod berkovich;
pub mod complex;
pub mod dendrite;
pub mod embed;
pub mod geom;
pub mod graph;
pub mod json;
pub mod rat;

pub use rat::Rat;
