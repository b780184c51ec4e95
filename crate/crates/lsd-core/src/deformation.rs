//! Logarithmic spectral deformation and its phase functions.
//!
//! Everything here is exact scalar mathematics on the positive energy axis:
//!
//! ```text
//! G(E)       = E ln(E / E*)
//! F_beta(E)  = E (1 + beta ln(E / E*)) = E + beta G(E)
//! Phi(E)     = t F_beta(E)
//! Phi'(E)    = t [1 + beta (ln(E / E*) + 1)]
//! ```
//!
//! Energies are angular frequencies in s^-1 with hbar = 1 (so a 5 GHz
//! transition is `2 pi * 5e9`). All logarithms are natural. E <= 0 is a hard
//! domain error, not a clamp.

use crate::error::{Error, Result};

/// The pair (beta, E*) defining the deformation F_beta.
///
/// `beta` is the dimensionless deformation strength; `e_star` is the strictly
/// positive reference scale fixing the zero of the logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParams {
    beta: f64,
    e_star: f64,
}

impl DeformationParams {
    pub fn new(beta: f64, e_star: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NonFinite {
                name: "beta",
                value: beta,
            });
        }
        if !e_star.is_finite() || e_star <= 0.0 {
            return Err(Error::InvalidEStar(e_star));
        }
        Ok(Self { beta, e_star })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn e_star(&self) -> f64 {
        self.e_star
    }
}

/// One discrete level: a nonnegative index and a positive energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub n: usize,
    pub energy: f64,
}

/// Ordered positive discrete energy levels of a Hamiltonian.
///
/// Invariants: non-empty, every energy positive and finite, energies strictly
/// increasing, indices unique.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    levels: Vec<Level>,
}

impl Spectrum {
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, level) in levels.iter().enumerate() {
            if !level.energy.is_finite() || level.energy <= 0.0 {
                return Err(Error::NonPositiveEnergy(level.energy));
            }
            if i > 0 && level.energy <= levels[i - 1].energy {
                return Err(Error::UnorderedSpectrum {
                    index: i,
                    energy: level.energy,
                    previous: levels[i - 1].energy,
                });
            }
            if !seen.insert(level.n) {
                return Err(Error::DuplicateLevelIndex(level.n));
            }
        }
        Ok(Self { levels })
    }

    /// Builds a spectrum from ascending energies, assigning indices 0, 1, ...
    pub fn from_energies<I: IntoIterator<Item = f64>>(energies: I) -> Result<Self> {
        let levels = energies
            .into_iter()
            .enumerate()
            .map(|(n, energy)| Level { n, energy })
            .collect();
        Self::new(levels)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn energy(&self, i: usize) -> Result<f64> {
        self.levels
            .get(i)
            .map(|l| l.energy)
            .ok_or(Error::LevelIndexOutOfRange {
                index: i,
                size: self.levels.len(),
            })
    }

    pub fn energies(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|l| l.energy)
    }
}

/// A time together with the deformation parameters, fixing the phase
/// Phi(E) = t F_beta(E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseContext {
    t: f64,
    params: DeformationParams,
}

impl PhaseContext {
    pub fn new(t: f64, params: DeformationParams) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::NonFinite {
                name: "t",
                value: t,
            });
        }
        Ok(Self { t, params })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn params(&self) -> DeformationParams {
        self.params
    }
}

fn check_energy(energy: f64) -> Result<f64> {
    if !energy.is_finite() || energy <= 0.0 {
        return Err(Error::NonPositiveEnergy(energy));
    }
    Ok(energy)
}

/// G(E) = E ln(E / E*), the function whose pairwise differences set all
/// dephasing rates.
pub fn g_function(energy: f64, params: &DeformationParams) -> Result<f64> {
    check_energy(energy)?;
    Ok(energy * (energy / params.e_star).ln())
}

/// F_beta(E) = E (1 + beta ln(E / E*)) = E + beta G(E).
pub fn deformed_energy(energy: f64, params: &DeformationParams) -> Result<f64> {
    Ok(energy + params.beta * g_function(energy, params)?)
}

/// The oscillation phase Phi(E) = t F_beta(E).
pub fn phase(energy: f64, ctx: &PhaseContext) -> Result<f64> {
    Ok(ctx.t * deformed_energy(energy, &ctx.params)?)
}

/// Phi'(E) = t [1 + beta (ln(E / E*) + 1)].
pub fn phase_derivative(energy: f64, ctx: &PhaseContext) -> Result<f64> {
    check_energy(energy)?;
    let log_term = (energy / ctx.params.e_star).ln();
    Ok(ctx.t * (1.0 + ctx.params.beta * (log_term + 1.0)))
}

/// The energy E_s = E* exp(-1 - 1/beta) where Phi' vanishes, or `None` when
/// beta = 0 (Phi' = t never vanishes for t != 0).
///
/// For |beta| small the exponential may underflow to 0 or overflow to
/// infinity; either value still compares correctly against any bounded
/// support interval.
pub fn stationary_energy(ctx: &PhaseContext) -> Option<f64> {
    let beta = ctx.params.beta;
    if beta == 0.0 {
        return None;
    }
    Some(ctx.params.e_star * (-1.0 - 1.0 / beta).exp())
}

/// Moves the reference scale to `e_star_new`, returning the new parameters
/// together with the coefficient `c = beta ln(E*_new / E*_old)` such that
///
/// ```text
/// F_{beta, E*_old}(E) = F_{beta, E*_new}(E) + c E   for every E > 0.
/// ```
///
/// Shifting E* only adds a term linear in the energy, so it redefines the
/// zero of energy without touching any pairwise G difference.
pub fn reparameterize_e_star(
    params: &DeformationParams,
    e_star_new: f64,
) -> Result<(DeformationParams, f64)> {
    let new_params = DeformationParams::new(params.beta, e_star_new)?;
    let c = params.beta * (e_star_new / params.e_star).ln();
    Ok((new_params, c))
}
