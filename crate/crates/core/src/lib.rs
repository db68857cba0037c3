//! Spectral analysis of the linearized Landau and non-cutoff Boltzmann
//! collision operators for Maxwellian molecules in three velocity dimensions.
//!
//! Both operators are diagonal in the basis
//! `φ_{n,l,m}(v) ∝ |v|^l L_n^{(l+1/2)}(|v|²/2) e^{-|v|²/4} Y_l^m(v/|v|)`.
//! The crate evaluates both spectra, cross-validates the Landau spectrum
//! against an explicit Hermite-space construction of the operator, and
//! provides the functional calculus (fractional powers, relaxation
//! semigroups) built on the shared eigenbasis.
//!
//! Module map:
//!
//! - [`specfun`]: Legendre, Laguerre, Hermite functions, `J_0`, `Γ`, real
//!   spherical harmonics.
//! - [`quadrature`]: Gauss rules and adaptive Gauss–Kronrod integration.
//! - [`hermite_algebra`]: exact operator algebra on tensor-Hermite
//!   coefficients, including the linearized Landau operator.
//! - [`eigenbasis`]: the `φ_{n,l,m}` basis, quadrature grids, expansion and
//!   synthesis.
//! - [`spectra`]: Landau and Boltzmann eigenvalues, the three-way split of
//!   the Boltzmann eigenvalue, finite parts and the grazing constant.
//! - [`analysis`]: quantitative checks of the two-sided eigenvalue bounds.
//! - [`semigroup`]: fractional powers, the multiplier `α`, relaxation.

pub mod analysis;
pub mod eigenbasis;
mod error;
pub mod exec;
pub mod hermite_algebra;
pub mod io;
pub mod quadrature;
pub mod semigroup;
pub mod specfun;
pub mod spectra;

pub use eigenbasis::{ModeIndex, QuadratureGrid, SpectralCoefficients};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hermite_algebra::HermiteCoefficients;
pub use semigroup::OperatorSpec;
pub use spectra::{CrossSectionModel, EigenvalueRecord};
