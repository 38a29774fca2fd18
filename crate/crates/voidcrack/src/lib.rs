//! Plane-strain crack mechanics for porous (void-bearing) elastic media.
//!
//! A pressurized straight crack in an elastic solid with voids reduces to a
//! one-dimensional hypersingular integral equation for the crack-opening
//! density. This crate builds that equation from material constants,
//! solves it two independent ways, and extracts stress-concentration
//! factors, including a thermal-flux variant.
//!
//! Modules, bottom to top:
//!
//! * [`material`] -- constants, dimensionless groups, stresses, residuals
//! * [`symbol`] -- Fourier symbol `L(s)` of the crack-plane operator
//! * [`kernel`] -- physical-space kernel: `1/x^2` part plus regular rest
//! * [`hsie`] -- finite-part collocation and Chebyshev spectral solvers
//! * [`crack`] -- crack problems, openings, exterior stress, SCF, sweeps
//! * [`thermo`] -- thermal-flux loading on the same machinery
//! * [`cli`] -- config parsing and run driver behind the `voidcrack` binary
//!
//! Each major capability has a runnable demo under `examples/`; start with
//! `cargo run --example classical_crack`.

pub mod cli;
pub mod crack;
pub mod error;
pub mod expint;
pub mod hsie;
pub mod kernel;
pub mod material;
pub mod quad;
pub mod symbol;
pub mod thermo;

pub use error::{Error, Result};
