//! Named builders for the example systems fed to the deformation: a two-level
//! qubit, the quartic oscillator, an FRW minisuperspace toy Hamiltonian, and
//! a Schwarzschild-interior-type potential.
//!
//! All grid-based builders work in model units with hbar = 2m = 1, so the
//! kinetic term is exactly -d^2/dx^2.

use crate::deformation::Spectrum;
use crate::eigensolver::{solve_spectrum, Grid1D};
use crate::error::{Error, Result};
use crate::fitting::linear_fit;

/// Two positive, non-degenerate levels, stored ascending.
#[derive(Debug, Clone, Copy)]
pub struct TwoLevelModel {
    e1: f64,
    e2: f64,
}

impl TwoLevelModel {
    pub fn new(e1: f64, e2: f64) -> Result<Self> {
        for &e in &[e1, e2] {
            if !e.is_finite() || e <= 0.0 {
                return Err(Error::NonPositiveEnergy(e));
            }
        }
        if e1 == e2 {
            return Err(Error::DegenerateTwoLevel(e1));
        }
        let (lo, hi) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
        Ok(Self { e1: lo, e2: hi })
    }

    pub fn e1(&self) -> f64 {
        self.e1
    }

    pub fn e2(&self) -> f64 {
        self.e2
    }
}

pub fn build_two_level(model: &TwoLevelModel) -> Spectrum {
    Spectrum::from_energies([model.e1, model.e2]).expect("validated in TwoLevelModel::new")
}

/// Quartic oscillator -d^2/dx^2 + lambda x^4.
#[derive(Debug, Clone, Copy)]
pub struct QuarticModel {
    lambda: f64,
    levels_requested: usize,
}

impl QuarticModel {
    pub fn new(lambda: f64, levels_requested: usize) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidQuarticCoupling(lambda));
        }
        if levels_requested == 0 {
            return Err(Error::NoLevelsRequested);
        }
        Ok(Self {
            lambda,
            levels_requested,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn levels_requested(&self) -> usize {
        self.levels_requested
    }
}

/// Fitted power law E_n ~ kappa * n^exponent from ln E_n vs ln n.
#[derive(Debug, Clone, Copy)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub kappa: f64,
    pub points_used: usize,
}

/// Solves the quartic spectrum and fits the growth exponent over the upper
/// half of the computed levels, excluding the top 10% (which can carry grid
/// contamination). The fit is `None` when fewer than two levels fall in the
/// window.
pub fn build_quartic(
    model: &QuarticModel,
    grid: &Grid1D,
) -> Result<(Spectrum, Option<PowerLawFit>)> {
    let lambda = model.lambda;
    let k = model.levels_requested;
    let spectrum = solve_spectrum(move |x| lambda * x.powi(4), grid, k, 0.0)?;

    // Classical turning point of the top requested level: E = lambda x^4.
    let e_top = spectrum.energy(k - 1)?;
    let turning_point = (e_top / lambda).powf(0.25);
    let limit = 0.75 * grid.x_max();
    if turning_point > limit {
        return Err(Error::GridTooSmall {
            turning_point,
            limit,
        });
    }

    let fit = power_law_fit(&spectrum);
    Ok((spectrum, fit))
}

fn power_law_fit(spectrum: &Spectrum) -> Option<PowerLawFit> {
    let k = spectrum.len();
    let start = k / 2;
    let end = k - (k as f64 * 0.10).ceil() as usize;
    if end <= start + 1 {
        return None;
    }
    let mut ln_n = Vec::with_capacity(end - start);
    let mut ln_e = Vec::with_capacity(end - start);
    for level in &spectrum.levels()[start..end] {
        if level.n == 0 {
            continue;
        }
        ln_n.push((level.n as f64).ln());
        ln_e.push(level.energy.ln());
    }
    let fit = linear_fit(&ln_n, &ln_e).ok()?;
    Some(PowerLawFit {
        exponent: fit.slope,
        kappa: fit.intercept.exp(),
        points_used: fit.points,
    })
}

/// Potential selector for the minisuperspace Hamiltonian -d^2/da^2 + V(a).
/// The default choice is a single-well quadratic near a minimum.
#[derive(Debug, Clone, Copy)]
pub enum FrwPotential {
    Harmonic {
        curvature: f64,
        center: f64,
        offset: f64,
    },
}

impl FrwPotential {
    fn validate(&self) -> Result<()> {
        match *self {
            FrwPotential::Harmonic {
                curvature,
                center,
                offset,
            } => {
                if !curvature.is_finite() || curvature <= 0.0 {
                    return Err(Error::UnboundedPotential(curvature));
                }
                if !center.is_finite() {
                    return Err(Error::NonFinite {
                        name: "center",
                        value: center,
                    });
                }
                if !offset.is_finite() {
                    return Err(Error::NonFinite {
                        name: "offset",
                        value: offset,
                    });
                }
                Ok(())
            }
        }
    }

    pub fn evaluate(&self, a: f64) -> f64 {
        match *self {
            FrwPotential::Harmonic {
                curvature,
                center,
                offset,
            } => {
                let d = a - center;
                curvature * d * d + offset
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FrwModel {
    potential: FrwPotential,
    levels_requested: usize,
}

impl FrwModel {
    pub fn new(potential: FrwPotential, levels_requested: usize) -> Result<Self> {
        potential.validate()?;
        if levels_requested == 0 {
            return Err(Error::NoLevelsRequested);
        }
        Ok(Self {
            potential,
            levels_requested,
        })
    }

    pub fn potential(&self) -> FrwPotential {
        self.potential
    }
}

pub fn build_frw(model: &FrwModel, grid: &Grid1D) -> Result<Spectrum> {
    let potential = model.potential;
    solve_spectrum(
        move |a| potential.evaluate(a),
        grid,
        model.levels_requested,
        0.0,
    )
}

/// V(x) = -alpha / x^2 + beta1 x^2 on the half line, regularized by a hard
/// Dirichlet wall at x = epsilon_wall.
///
/// The inverse-square attraction is restricted to alpha < 1/4 (units
/// hbar = 2m = 1), where the operator stays bounded below; the wall pins a
/// concrete self-adjoint realization. `beta1` is the confining strength and
/// is deliberately distinct from the deformation parameter beta.
#[derive(Debug, Clone, Copy)]
pub struct SchwarzschildInteriorModel {
    alpha: f64,
    beta1: f64,
    epsilon_wall: f64,
    levels_requested: usize,
}

impl SchwarzschildInteriorModel {
    pub fn new(alpha: f64, beta1: f64, epsilon_wall: f64, levels_requested: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 0.25 {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        if !beta1.is_finite() || beta1 <= 0.0 {
            return Err(Error::InvalidConfiningStrength(beta1));
        }
        if !epsilon_wall.is_finite() || epsilon_wall <= 0.0 {
            return Err(Error::InvalidEpsilonWall(epsilon_wall));
        }
        if levels_requested == 0 {
            return Err(Error::NoLevelsRequested);
        }
        Ok(Self {
            alpha,
            beta1,
            epsilon_wall,
            levels_requested,
        })
    }

    /// Default inner cutoff: 1e-3 of the oscillator length beta1^(-1/4).
    pub fn default_epsilon_wall(beta1: f64) -> f64 {
        1e-3 * beta1.powf(-0.25)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta1(&self) -> f64 {
        self.beta1
    }

    pub fn epsilon_wall(&self) -> f64 {
        self.epsilon_wall
    }
}

pub fn build_schwarzschild_interior(
    model: &SchwarzschildInteriorModel,
    grid: &Grid1D,
) -> Result<Spectrum> {
    if grid.x_min() != model.epsilon_wall {
        return Err(Error::WallMismatch {
            x_min: grid.x_min(),
            epsilon_wall: model.epsilon_wall,
        });
    }
    let alpha = model.alpha;
    let beta1 = model.beta1;
    solve_spectrum(
        move |x| -alpha / (x * x) + beta1 * x * x,
        grid,
        model.levels_requested,
        0.0,
    )
}
