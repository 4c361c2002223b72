//! χ_y-genera and refined tropicalizations of generic complete intersections
//! in algebraic tori, computed from Newton polytopes with exact arithmetic.
//!
//! The modules build on each other in order: [`exactmath`] (linear algebra
//! over Z and Q), [`polytope`] (lattice polytopes), [`tropcycle`] (weighted
//! balanced fans), [`polyalgebra`] (the ring of lattice polytopes),
//! [`chigenus`] (the genus formulas) and [`toddint`] (integration against
//! Todd measures).

pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
pub mod polytope;
pub mod tropcycle;
pub mod polyalgebra;
pub mod chigenus;
pub mod toddint;
