//! Dephasing rates, timescales, coherence envelopes, and envelope fitting.
//!
//! Two distinct faces of the same mechanism live here and are never
//! conflated:
//!
//! * the exact single-pair dynamics is a pure phase (|rho_mn| constant; see
//!   the evolution module), observable only through averaged quantities such
//!   as [`windowed_coherence`];
//! * the operational fitting prescription models the measured signal as
//!   C_meas(t) = C_std(t) exp(-Gamma t) with Gamma_mn = |beta| |G(E_m) -
//!   G(E_n)|, and extracts Gamma (hence beta) from the log-residual slope.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::deformation::{g_function, DeformationParams};
use crate::error::{Error, Result};
use crate::evolution::{off_diagonal, StateVector};
use crate::fitting::linear_fit;

/// Calibrated environmental coherence envelope C_std(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    Exponential,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeModel {
    kind: EnvelopeKind,
    t2: f64,
}

impl EnvelopeModel {
    pub fn new(kind: EnvelopeKind, t2: f64) -> Result<Self> {
        if !t2.is_finite() || t2 <= 0.0 {
            return Err(Error::InvalidT2(t2));
        }
        Ok(Self { kind, t2 })
    }

    pub fn kind(&self) -> EnvelopeKind {
        self.kind
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    /// C_std(t): exp(-t/T2) or exp(-(t/T2)^2).
    pub fn c_std(&self, t: f64) -> f64 {
        let x = t / self.t2;
        match self.kind {
            EnvelopeKind::Exponential => (-x).exp(),
            EnvelopeKind::Gaussian => (-x * x).exp(),
        }
    }
}

/// Gamma_mn = |beta| |G(E_m) - G(E_n)|.
pub fn decoherence_rate(e_m: f64, e_n: f64, params: &DeformationParams) -> Result<f64> {
    let dg = g_function(e_m, params)? - g_function(e_n, params)?;
    Ok(params.beta().abs() * dg.abs())
}

/// tau_dec = 1/Gamma_mn, or the explicit infinite-timescale signal when the
/// rate vanishes. Serialization layers must not turn this into a numeric
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecoherenceTime {
    Finite(f64),
    Infinite,
}

impl DecoherenceTime {
    pub fn is_infinite(&self) -> bool {
        matches!(self, DecoherenceTime::Infinite)
    }

    pub fn seconds(&self) -> Option<f64> {
        match *self {
            DecoherenceTime::Finite(t) => Some(t),
            DecoherenceTime::Infinite => None,
        }
    }
}

pub fn decoherence_time(e_m: f64, e_n: f64, params: &DeformationParams) -> Result<DecoherenceTime> {
    let rate = decoherence_rate(e_m, e_n, params)?;
    if rate == 0.0 {
        Ok(DecoherenceTime::Infinite)
    } else {
        Ok(DecoherenceTime::Finite(1.0 / rate))
    }
}

/// A sampled coherence curve: strictly ascending positive times with
/// positive finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceTrace {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl CoherenceTrace {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        validate_time_grid(&times)?;
        if values.len() != times.len() {
            return Err(Error::TraceLengthMismatch {
                times: times.len(),
                values: values.len(),
            });
        }
        for (&t, &v) in times.iter().zip(&values) {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidTraceValue { t, value: v });
            }
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn validate_time_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidTimeGrid {
            index: 0,
            value: f64::NAN,
        });
    }
    for (i, &t) in times.iter().enumerate() {
        let bad = !t.is_finite() || t <= 0.0 || (i > 0 && t <= times[i - 1]);
        if bad {
            return Err(Error::InvalidTimeGrid { index: i, value: t });
        }
    }
    Ok(())
}

/// Synthesizes C_std(t) exp(-gamma t), optionally with seeded uniform
/// multiplicative noise of the given relative amplitude. Deterministic for a
/// fixed seed (ChaCha stream, platform independent).
pub fn synthesize_trace(
    env: &EnvelopeModel,
    gamma: f64,
    t_grid: &[f64],
    noise_amplitude: f64,
    seed: u64,
) -> Result<CoherenceTrace> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidGamma(gamma));
    }
    if !noise_amplitude.is_finite() || !(0.0..1.0).contains(&noise_amplitude) {
        return Err(Error::InvalidNoiseAmplitude(noise_amplitude));
    }
    validate_time_grid(t_grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = t_grid
        .iter()
        .map(|&t| {
            let clean = env.c_std(t) * (-gamma * t).exp();
            if noise_amplitude == 0.0 {
                clean
            } else {
                let u: f64 = rng.random_range(-1.0..1.0);
                clean * (1.0 + noise_amplitude * u)
            }
        })
        .collect();
    CoherenceTrace::new(t_grid.to_vec(), values)
}

/// Trace points below this fraction of the initial amplitude are excluded
/// from the residual fit.
pub const TRACE_FLOOR_FRACTION: f64 = 1e-3;

/// Result of fitting the residual envelope r(t) = ln(C_meas / C_std).
///
/// `gamma_fit` is non-negative; a negative raw slope fit is clamped to zero
/// with `clamped` set. `beta_inferred` = gamma_fit / |G(E_m) - G(E_n)|.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeFitResult {
    pub gamma_fit: f64,
    pub beta_inferred: f64,
    pub slope_stderr: f64,
    pub residual_norm: f64,
    pub clamped: bool,
    pub points_used: usize,
}

/// Fits Gamma from ln(C_meas / C_std) vs t by least squares and converts it
/// to a beta through the exact G difference of the level pair.
pub fn fit_residual_envelope(
    trace: &CoherenceTrace,
    env: &EnvelopeModel,
    e_m: f64,
    e_n: f64,
    params: &DeformationParams,
) -> Result<EnvelopeFitResult> {
    let floor = TRACE_FLOOR_FRACTION * trace.values[0];
    let mut ts = Vec::new();
    let mut residuals = Vec::new();
    for (&t, &v) in trace.times.iter().zip(&trace.values) {
        if v <= floor {
            continue;
        }
        let c_std = env.c_std(t);
        if c_std <= 0.0 {
            return Err(Error::InvalidCalibrationEnvelope { t });
        }
        ts.push(t);
        residuals.push((v / c_std).ln());
    }
    if ts.len() < 3 {
        return Err(Error::TooFewFitPoints(ts.len()));
    }

    let fit = linear_fit(&ts, &residuals)?;
    let raw_gamma = -fit.slope;
    let (gamma_fit, clamped) = if raw_gamma < 0.0 {
        (0.0, true)
    } else {
        (raw_gamma, false)
    };

    let dg = (g_function(e_m, params)? - g_function(e_n, params)?).abs();
    if dg == 0.0 {
        return Err(Error::DegenerateGPair);
    }

    Ok(EnvelopeFitResult {
        gamma_fit,
        beta_inferred: gamma_fit / dg,
        slope_stderr: fit.slope_stderr.expect("at least 3 points"),
        residual_norm: fit.residual_norm,
        clamped,
        points_used: ts.len(),
    })
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Mean of rho_mn over the boxcar window [t_center - w/2, t_center + w/2],
/// in closed form: rho_mn(t_center) * sinc(omega_eff w / 2).
pub fn windowed_coherence(
    state0: &StateVector,
    m: usize,
    n: usize,
    params: &DeformationParams,
    t_center: f64,
    window: f64,
) -> Result<Complex64> {
    if !window.is_finite() || window <= 0.0 {
        return Err(Error::InvalidAveragingWindow(window));
    }
    let sample = off_diagonal(state0, m, n, t_center, params)?;
    Ok(sample.rho_mn * sinc(sample.effective_frequency * window / 2.0))
}
