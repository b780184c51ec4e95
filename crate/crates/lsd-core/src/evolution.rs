//! Unitary evolution of superpositions under the deformed generator and the
//! coherence observables built from it.
//!
//! Evolution is exact in the energy eigenbasis: each amplitude picks up
//! exp(-i t F_beta(E_n)). No time stepping; a time series is a sweep of
//! independent evaluations. Off-diagonal density-matrix entries are computed
//! pairwise from the difference form
//!
//! ```text
//! rho_mn(t) = c_m c_n* exp{-i t [(E_m - E_n) + beta (G(E_m) - G(E_n))]}
//! ```
//!
//! which avoids the cancellation of forming F(E_m) - F(E_n) at large E.

use num_complex::Complex64;

use crate::deformation::{deformed_energy, g_function, DeformationParams, Spectrum};
use crate::error::{Error, Result};

/// Sum |c_n|^2 must equal 1 within this tolerance.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Phases larger than this are reduced modulo 2 pi before exponentiation to
/// limit rounding growth at large t.
const PHASE_REDUCTION_THRESHOLD: f64 = 1e8;

/// A superposition over a discrete spectrum: one complex amplitude per level.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    spectrum: Spectrum,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state, requiring unit norm within [`NORM_TOLERANCE`].
    pub fn new(spectrum: Spectrum, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != spectrum.len() {
            return Err(Error::AmplitudeCountMismatch {
                amplitudes: amplitudes.len(),
                levels: spectrum.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(Self {
            spectrum,
            amplitudes,
        })
    }

    /// Builds a state from arbitrary non-zero amplitudes, rescaling to unit
    /// norm.
    pub fn normalized(spectrum: Spectrum, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != spectrum.len() {
            return Err(Error::AmplitudeCountMismatch {
                amplitudes: amplitudes.len(),
                levels: spectrum.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sq.is_finite() || norm_sq == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let scale = 1.0 / norm_sq.sqrt();
        Ok(Self {
            spectrum,
            amplitudes: amplitudes.into_iter().map(|c| c * scale).collect(),
        })
    }

    /// Equal-weight superposition over all levels of the spectrum.
    pub fn equal_superposition(spectrum: Spectrum) -> Self {
        let n = spectrum.len();
        let c = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Self {
            spectrum,
            amplitudes: vec![c; n],
        }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // spectra are non-empty by construction
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// One sample of an off-diagonal density-matrix element.
///
/// `effective_frequency` is the fringe frequency
/// (E_m - E_n) + beta (G(E_m) - G(E_n)); the modulus |rho_mn| never exceeds
/// |c_m||c_n| (unitarity).
#[derive(Debug, Clone, Copy)]
pub struct CoherenceSample {
    pub t: f64,
    pub rho_mn: Complex64,
    pub effective_frequency: f64,
}

fn unit_phase(theta: f64) -> Complex64 {
    let reduced = if theta.abs() > PHASE_REDUCTION_THRESHOLD {
        theta.rem_euclid(std::f64::consts::TAU)
    } else {
        theta
    };
    Complex64::from_polar(1.0, -reduced)
}

/// Applies U(t) = exp(-i t F_beta(H)) to the state: each amplitude is
/// multiplied by exp(-i t F_beta(E_n)). The norm is preserved to rounding.
pub fn evolve(state: &StateVector, t: f64, params: &DeformationParams) -> Result<StateVector> {
    if !t.is_finite() {
        return Err(Error::NonFinite {
            name: "t",
            value: t,
        });
    }
    let mut amplitudes = Vec::with_capacity(state.len());
    for (level, c) in state.spectrum.levels().iter().zip(&state.amplitudes) {
        let f = deformed_energy(level.energy, params)?;
        amplitudes.push(c * unit_phase(t * f));
    }
    Ok(StateVector {
        spectrum: state.spectrum.clone(),
        amplitudes,
    })
}

/// The shift beta (G(E_m) - G(E_n)) added to the Bohr frequency E_m - E_n.
pub fn frequency_shift(e_m: f64, e_n: f64, params: &DeformationParams) -> Result<f64> {
    Ok(params.beta() * (g_function(e_m, params)? - g_function(e_n, params)?))
}

/// The off-diagonal element rho_mn(t) of |psi(t)><psi(t)| for the state
/// prepared as `state0` at t = 0, together with its effective frequency.
///
/// `m` and `n` are positions in the state's level list and must differ.
pub fn off_diagonal(
    state0: &StateVector,
    m: usize,
    n: usize,
    t: f64,
    params: &DeformationParams,
) -> Result<CoherenceSample> {
    if !t.is_finite() {
        return Err(Error::NonFinite {
            name: "t",
            value: t,
        });
    }
    let size = state0.len();
    for &index in &[m, n] {
        if index >= size {
            return Err(Error::LevelIndexOutOfRange { index, size });
        }
    }
    if m == n {
        return Err(Error::DiagonalPair);
    }
    let e_m = state0.spectrum.energy(m)?;
    let e_n = state0.spectrum.energy(n)?;
    let effective_frequency = (e_m - e_n) + frequency_shift(e_m, e_n, params)?;
    let rho_mn =
        state0.amplitudes[m] * state0.amplitudes[n].conj() * unit_phase(t * effective_frequency);
    Ok(CoherenceSample {
        t,
        rho_mn,
        effective_frequency,
    })
}
