//! Numerical laboratory for logarithmic spectral deformations of quantum
//! Hamiltonians.
//!
//! The generator H of a closed quantum system is replaced by the self-adjoint
//! spectral function
//!
//! ```text
//! F_beta(H) = H + beta H ln(H / E*)
//! ```
//!
//! acting level by level on the positive spectrum. The crate quantifies the
//! deterministic dephasing this produces:
//!
//! * [`deformation`] — the scalar functions F_beta, G, the oscillation phase
//!   and its derivative, stationary energies, and E* reparameterization;
//! * [`eigensolver`] — finite-difference discretization of -d^2/dx^2 + V(x)
//!   and a Sturm-bisection eigensolver for the resulting symmetric
//!   tridiagonal matrices;
//! * [`models`] — builders for the example systems (two-level qubit, quartic
//!   oscillator, FRW minisuperspace well, Schwarzschild-interior potential);
//! * [`evolution`] — exact unitary evolution in the energy eigenbasis and
//!   off-diagonal coherence samples;
//! * [`oscillatory`] — the interference integral I_beta(t) with adaptive
//!   phase-aware quadrature and the O(1/|beta|) suppression scan;
//! * [`decoherence`] — dephasing rates and timescales, coherence-envelope
//!   synthesis, and residual-envelope fitting that recovers beta;
//! * [`platforms`] — order-of-magnitude bounds on |beta| from laboratory
//!   coherence times.
//!
//! Units: energies are angular frequencies in s^-1 with hbar = 1; times are
//! seconds; beta is dimensionless. All logarithms are natural.

pub mod decoherence;
pub mod deformation;
pub mod eigensolver;
pub mod error;
pub mod evolution;
pub mod fitting;
pub mod models;
pub mod oscillatory;
pub mod platforms;

pub use error::{Error, Result};
