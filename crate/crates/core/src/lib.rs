//! Finite free probability on real-rooted polynomials.
//!
//! The crate covers the algebra of monic real-rooted polynomials under
//! repeated differentiation: finite free cumulants, the finite R-transform,
//! finite free additive convolution, the classical Hermite/Laguerre/Appell
//! families, and a seeded Monte Carlo harness that checks the limit laws of
//! normalized derivatives of random polynomials with iid roots.
//!
//! Everything here is `no_std` + `alloc`. File formats, the command line and
//! multi-threaded trial execution live in the `finfree` companion crate.
//!
//! Most algebraic routines are generic over [`Scalar`], implemented for `f64`
//! (Monte Carlo) and [`Rational`] (exact identity checks).

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod experiments;
pub mod families;
pub mod linalg;
pub mod partitions;
pub mod poly;
pub mod quad;
pub mod randgen;
pub mod scalar;
pub mod series;
pub mod stats;
pub mod transforms;

pub use error::{Error, Result};
pub use poly::{MomentVector, Polynomial};
pub use scalar::{Rational, Scalar};
pub use series::TruncatedSeries;
pub use transforms::CumulantVector;
