//! Eigenvalue localization regions for matrix polynomials.
//!
//! The crate computes inclusion and exclusion regions for the eigenvalues of
//! `P(z) = A_0 + A_1 z + ... + A_m z^m` with dense complex `n x n`
//! coefficients, checks the hypotheses each region needs on a concrete
//! instance, and ships the machinery to verify the claims: a companion
//! linearization, a complex Hessenberg QR eigensolver and seeded instance
//! generators.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the `ek-cli` crate.
#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

pub mod bounds;
pub mod eigen;
mod error;
pub mod generators;
pub mod linalg;
pub mod matpoly;
pub mod pell;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use bounds::{BoundResult, Region, TheoremId, Witness};
pub use eigen::{EigenPair, Spectrum};
pub use linalg::{ComplexMatrix, NormKind};
pub use matpoly::MatrixPolynomial;
