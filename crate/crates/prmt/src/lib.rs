//! Numerical laboratory for patterned real-symmetric random matrices.
//!
//! Three ensembles with `(n+1)/2` independent Gaussian entries are supported:
//! reverse circulant with a zeroed tail, symmetric circulant, and palindromic
//! symmetric Toeplitz. The crate samples them reproducibly, computes
//! symmetry-reduced spectra (closed forms where they exist, a Jacobi
//! eigensolver otherwise), evaluates the exact 3x3 densities and spacing laws,
//! and runs Monte Carlo experiments that compare the two via histograms and
//! Kolmogorov-Smirnov distances.

pub mod analytic;
pub mod cli;
pub mod ensembles;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod spectra;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
