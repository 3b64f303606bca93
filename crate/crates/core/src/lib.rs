//! Exact computation of the total index and nef complexity of smooth del
//! Pezzo surfaces and toric Fano varieties.
//!
//! Everything here is exact: integral classes are `i64` vectors with checked
//! arithmetic, every rational quantity is a reduced [`num_rational::BigRational`].
//! The crate is `no_std` and only needs `alloc`; file formats, the CLI and
//! the verification suites live in the `nefdex` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod delpezzo;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod nef;
pub mod rational;
pub mod simplex;
pub mod tau;
pub mod toric;

pub use delpezzo::{SurfaceKind, SurfaceModel, SurfaceReport};
pub use error::{Error, Result};
pub use lattice::{DivisorClass, IntersectionLattice, RationalClass};
pub use nef::NefContext;
pub use rational::Q;
pub use tau::{DecompositionCertificate, DualCertificate, Ring, TauConfig};
