//! Quench thermodynamics of coupled harmonic-oscillator chains.
//!
//! A chain of `N` identical oscillators is suddenly coupled by a
//! nearest-neighbour spring (or, for two modes, a rotating-wave exchange).
//! The crate computes the work characteristic function, average work,
//! free-energy change, nonequilibrium lag and Gaussian correlations from
//! closed forms and symplectic algebra, and checks them against a
//! brute-force truncated-Fock implementation.
//!
//! Conventions used throughout:
//! - quadratures `x = (a + a†)/2`, `p = (a − a†)/(2i)`, so `x² + p² = n + 1/2`;
//! - phase-space vectors are ordered `(x₁..x_N, p₁..p_N)`;
//! - covariance matrices are normalized so that the vacuum is the identity;
//! - `beta = f64::INFINITY` denotes the zero-temperature limit.

pub mod chain;
pub mod cli;
pub mod correlations;
pub mod error;
pub mod fock;
pub mod interferometer;
pub mod linalg;
pub mod symplectic;
pub mod work;

pub use chain::{ChainSpec, Model, NormalModeData, QuadraticForm};
pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
