//! Numerical toolkit for the SWKB quantization condition.
//!
//! The crate evaluates `∫ sqrt(E - W(x)²) dx` between the turning points of a
//! superpotential `W` and checks it against `nπ` for
//!
//! * the conventional shape-invariant potentials ([`catalog`], [`swkb`]),
//! * their point canonical transformations ([`pct`]),
//! * Laguerre- and Jacobi-class Natanzon potentials ([`natanzon`]),
//! * position-dependent-mass (deformed) systems ([`pdm`]).
//!
//! Units are `ħ = 2m = 1` throughout unless a mass scale is given.

pub mod catalog;
pub mod error;
pub mod natanzon;
pub mod numerics;
pub mod orthopoly;
pub mod pct;
pub mod pdm;
pub mod swkb;

pub use error::{Error, Result};
