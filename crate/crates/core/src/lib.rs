//! Exact combinatorics of Del Pezzo surfaces of degree 2 and 3, spin
//! structures on stable curves, theta characteristics over `F_2`, and
//! symmetric determinantal representations of plane curves.

pub mod detrep;
pub mod error;
pub mod lattice;
pub mod nodal;
pub mod poly;
pub mod spin;
pub mod theta_f2;

pub use error::{Error, Result};
pub use lattice::{ClassKind, DivisorClass, PicardLattice};
pub use nodal::{MultiplicityScheme, NodalConfig};
pub use spin::{DualGraph, SpinSupport};
