//! Multi-well Arnold polynomial potentials, their low-lying bound-state
//! spectra, and the avoided level crossings at which the ground-state (or an
//! excited-state) density jumps between wells.
//!
//! Module map:
//! - [`polynomial`]: dense real polynomials and real-root isolation.
//! - [`arnold`]: symmetric potentials from well shapes, critical points,
//!   harmonic well data, and perturbative shifts of the extrema.
//! - [`spectrum`]: harmonic level estimates and a finite-difference
//!   eigensolver with per-well probability weights.
//! - [`catastrophe`]: crossing conditions, the maximal-degeneracy domain,
//!   the asymmetric locus, and relocalization scans.
//! - [`parallel`]: rayon-backed map with a sequential fallback.

pub mod arnold;
pub mod catastrophe;
pub mod error;
pub mod parallel;
pub mod polynomial;
pub mod spectrum;

pub use error::{Error, Result};
pub use polynomial::{Polynomial, RealRoot};
