//! Exact algebra on graded manifolds: supercommutative polynomials, NQ
//! structures, degree-n symplectic charts, twisted and extended structures,
//! A-path integration, symplectic cochain complexes, and a small checking
//! language on top.

#![allow(clippy::needless_range_loop)]

pub mod apath_integrator;
pub mod dsl;
pub mod error;
pub mod extensions;
pub mod graded_algebra;
pub mod linalg;
pub mod nq_core;
pub mod random;
pub mod sigma_structures;
pub mod symplectic_complexes;

pub use error::{Error, Result};
