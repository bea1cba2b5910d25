//! Planar harmonic mappings on the unit disk, built by shearing analytic
//! targets, combined with complex weights, and verified two independent ways.
//!
//! A mapping is written `f = h + conj(g)` with `h`, `g` analytic and stored
//! as truncated power series. The crate provides:
//!
//! - [`series`]: fixed-order power-series arithmetic (the base layer);
//! - [`kernels`]: the two-parameter quadratic kernel family, its closed-form
//!   antiderivatives, and blended convex targets;
//! - [`shear`]: the shear construction, which solves for `h` and `g` from an
//!   analytic target `h + c g` and a prescribed dilatation `omega = g'/h'`;
//! - [`combine`]: weighted combinations of two (or many) mappings, the
//!   combined-dilatation formula, the weight bound that keeps such
//!   combinations univalent, and identities that certify convexity of
//!   conjugate-weight combinations;
//! - [`criteria`]: analytic verification — local univalence via the Jacobian,
//!   directional convexity via a positive-real-part search over a kernel
//!   candidate grid, and coefficient-scaling operators that upgrade
//!   starlikeness to convexity;
//! - [`geometry`]: independent brute-force verification on boundary polygons
//!   (injectivity, winding, directional and full convexity, starlikeness);
//! - [`grid`], [`report`], [`parallel`]: shared sampling, outcome, and
//!   fan-out plumbing.
//!
//! Everything is deterministic: grids are fixed, ties break on sample index,
//! and results do not depend on thread count (the `parallel` feature only
//! affects wall time).

pub mod combine;
pub mod criteria;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod kernels;
pub mod parallel;
pub mod report;
pub mod series;
pub mod shear;

pub use error::{Error, Result};
pub use grid::Grid;
pub use report::{CheckReport, Verdict};
pub use series::{PowerSeries, DEFAULT_ORDER, MAX_EVAL_RADIUS};
pub use shear::{HarmonicMapping, ShearSpec};
