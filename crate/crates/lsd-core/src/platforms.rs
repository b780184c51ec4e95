//! Experimental bounds on the deformation strength across laboratory
//! platforms: the scaling law |beta|_max ~ 1/(T2 |Delta E| |ln(E/E*) + 1|),
//! the superconducting benchmark, and the Ramsey-protocol bound.

use crate::deformation::{g_function, DeformationParams};
use crate::error::{Error, Result};

/// Order-of-magnitude description of one experimental platform.
///
/// All energies are angular frequencies in s^-1. `log_factor_override`, when
/// set, replaces |ln(E/E*) + 1| in the splitting approximation; the
/// superconducting benchmark uses the rounded estimate 20.
#[derive(Debug, Clone, PartialEq)]
pub struct PlatformSpec {
    name: String,
    transition_energy: f64,
    level_splitting: f64,
    t2: f64,
    e_star: f64,
    log_factor_override: Option<f64>,
}

impl PlatformSpec {
    pub fn new(
        name: impl Into<String>,
        transition_energy: f64,
        level_splitting: f64,
        t2: f64,
        e_star: f64,
        log_factor_override: Option<f64>,
    ) -> Result<Self> {
        let name = name.into();
        let check = |what: &str, value: f64| -> Result<()> {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidPlatformSpec {
                    name: name.clone(),
                    message: format!("{what} must be positive and finite, got {value}"),
                });
            }
            Ok(())
        };
        check("transition energy E", transition_energy)?;
        check("level splitting delta_E", level_splitting)?;
        check("coherence time T2", t2)?;
        check("reference scale e_star", e_star)?;
        if level_splitting > transition_energy {
            return Err(Error::InvalidPlatformSpec {
                name,
                message: format!(
                    "level splitting {level_splitting} exceeds transition energy {transition_energy}"
                ),
            });
        }
        if let Some(factor) = log_factor_override {
            if !factor.is_finite() || factor <= 0.0 {
                return Err(Error::InvalidPlatformSpec {
                    name,
                    message: format!("log_factor_override must be positive, got {factor}"),
                });
            }
        }
        Ok(Self {
            name,
            transition_energy,
            level_splitting,
            t2,
            e_star,
            log_factor_override,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn transition_energy(&self) -> f64 {
        self.transition_energy
    }

    pub fn level_splitting(&self) -> f64 {
        self.level_splitting
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn e_star(&self) -> f64 {
        self.e_star
    }

    pub fn log_factor_override(&self) -> Option<f64> {
        self.log_factor_override
    }
}

/// The splitting approximation |G(E_m) - G(E_n)| ~ |Delta E| |ln(E/E*) + 1|.
///
/// `degenerate` flags a vanishing log factor (E = E*/e), where the
/// approximation carries no information and a bound would need the override.
#[derive(Debug, Clone, Copy)]
pub struct GDifferenceApprox {
    pub value: f64,
    pub degenerate: bool,
}

const LOG_FACTOR_DEGENERACY_EPS: f64 = 1e-12;

pub fn g_difference_approx(spec: &PlatformSpec) -> GDifferenceApprox {
    let factor = match spec.log_factor_override {
        Some(f) => f,
        None => ((spec.transition_energy / spec.e_star).ln() + 1.0).abs(),
    };
    GDifferenceApprox {
        value: spec.level_splitting * factor,
        degenerate: factor < LOG_FACTOR_DEGENERACY_EPS,
    }
}

/// Decade classification: the nearest power of ten of a positive value.
pub fn decade_band(value: f64) -> i32 {
    value.log10().round() as i32
}

/// Per-platform bound |beta|_max = 1 / (T2 |Delta G|), with its decade band.
#[derive(Debug, Clone)]
pub struct BoundResult {
    pub platform: String,
    pub g_difference: f64,
    pub beta_max: f64,
    pub decade: i32,
    pub spec: PlatformSpec,
}

pub fn beta_bound(spec: &PlatformSpec) -> Result<BoundResult> {
    let approx = g_difference_approx(spec);
    if approx.degenerate {
        return Err(Error::DegenerateLogFactor {
            name: spec.name.clone(),
        });
    }
    let beta_max = 1.0 / (spec.t2 * approx.value);
    Ok(BoundResult {
        platform: spec.name.clone(),
        g_difference: approx.value,
        beta_max,
        decade: decade_band(beta_max),
        spec: spec.clone(),
    })
}

/// Ramsey-protocol bound: |beta| <= delta_omega / |G(E_1) - G(E_0)| with the
/// exact G difference (no splitting approximation).
pub fn ramsey_bound(
    delta_omega_precision: f64,
    e0: f64,
    e1: f64,
    params: &DeformationParams,
) -> Result<f64> {
    if !delta_omega_precision.is_finite() || delta_omega_precision <= 0.0 {
        return Err(Error::InvalidPrecision(delta_omega_precision));
    }
    let dg = (g_function(e1, params)? - g_function(e0, params)?).abs();
    if dg == 0.0 {
        return Err(Error::DegenerateGPair);
    }
    Ok(delta_omega_precision / dg)
}

/// Batch report: per-platform bounds with failures collected, not fatal.
#[derive(Debug)]
pub struct TableReport {
    pub results: Vec<BoundResult>,
    pub failures: Vec<(String, Error)>,
}

pub fn table_report(specs: &[PlatformSpec]) -> TableReport {
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for spec in specs {
        match beta_bound(spec) {
            Ok(result) => results.push(result),
            Err(err) => failures.push((spec.name.clone(), err)),
        }
    }
    TableReport { results, failures }
}
