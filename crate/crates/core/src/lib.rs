//! Symmetry-aware analysis of discrete planar dynamical systems.
//!
//! The crate covers four layers that feed into each other:
//!
//! * [`symmetry`] — the compact subgroups of O(2), their standard actions,
//!   fixed-point subspaces, group orbits and commutant classification;
//! * [`maps`] / [`polynomial`] / [`catalog`] — evaluatable planar maps with
//!   exact Jacobians, a catalog of equivariant examples, and exact
//!   coefficient-level equivariance tests for polynomial maps;
//! * [`dynamics`] / [`basin`] / [`certify`] — orbit iteration, omega-limit
//!   classification, periodic-orbit search, basin rasterization, and the
//!   empirical certifiers for the local-to-global attractor and saddle
//!   statements;
//! * [`circle`] — circle homeomorphisms through degree-one lifts, rotation
//!   numbers, equivariant Denjoy constructions, and the radial suspension
//!   that carries a circle map back into the plane.
//!
//! Every probe here is finite: passing reports are evidence consistent with
//! the corresponding statement, never a proof. Counterexample verdicts, by
//! contrast, always carry a concrete witness orbit.

pub mod basin;
pub mod catalog;
pub mod certify;
pub mod circle;
pub mod cli;
pub mod dynamics;
pub mod maps;
pub mod plane;
pub mod polynomial;
pub mod symmetry;

pub use catalog::{d2_cubic, linear_saddle, sector_extend, so2_radial, twist_zn, RadialProfile, SectorMode};
pub use maps::{
    check_equivariance, classify_origin, dmy_spectral_check, symmetry_group_estimate, LocalClass,
    MapError, PlanarMap,
};
pub use plane::{Mat2, Point, Rect};
pub use symmetry::{commutes_with_group, GroupElement, JacobianForm, Subspace, SymmetryGroup};
