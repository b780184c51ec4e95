//! Strict TOML configuration schema.
//!
//! Unknown keys are rejected everywhere, each subcommand pins the set of
//! sections it accepts, and every physical value passes core validation
//! before any computation starts.
//!
//! Units convention: internal energies are angular frequencies in s^-1
//! (hbar = 1). Every energy-valued key comes in two spellings, exactly one
//! of which must be given: the plain key (already angular, or model units
//! for grid Hamiltonians) and the `_hz` key (ordinary frequency, multiplied
//! by 2 pi on load). Times are seconds.

use serde::Deserialize;
use std::f64::consts::TAU;

use lsd_core::deformation::{DeformationParams, Spectrum};
use lsd_core::eigensolver::Grid1D;
use lsd_core::models::{
    build_frw, build_quartic, build_schwarzschild_interior, build_two_level, FrwModel,
    FrwPotential, PowerLawFit, QuarticModel, SchwarzschildInteriorModel, TwoLevelModel,
};
use lsd_core::oscillatory::{WindowKind, WindowProfile};

use crate::errors::{invalid, validation, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub deformation: Option<DeformationSection>,
    pub model: Option<ModelSection>,
    pub grid: Option<GridSection>,
    pub state: Option<StateSection>,
    pub pair: Option<PairSection>,
    pub window: Option<WindowSection>,
    pub integral: Option<IntegralSection>,
    pub sweep: Option<SweepSection>,
    pub platform: Option<Vec<PlatformSection>>,
    pub ramsey: Option<RamseySection>,
    pub envelope: Option<EnvelopeSection>,
    pub levels: Option<LevelsSection>,
    pub trace: Option<TraceSection>,
    pub fit: Option<FitSection>,
    pub output: Option<OutputSection>,
}

impl RawConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| validation(format!("config: {e}")))
    }

    fn present_sections(&self) -> Vec<&'static str> {
        let mut present = Vec::new();
        if self.deformation.is_some() {
            present.push("deformation");
        }
        if self.model.is_some() {
            present.push("model");
        }
        if self.grid.is_some() {
            present.push("grid");
        }
        if self.state.is_some() {
            present.push("state");
        }
        if self.pair.is_some() {
            present.push("pair");
        }
        if self.window.is_some() {
            present.push("window");
        }
        if self.integral.is_some() {
            present.push("integral");
        }
        if self.sweep.is_some() {
            present.push("sweep");
        }
        if self.platform.is_some() {
            present.push("platform");
        }
        if self.ramsey.is_some() {
            present.push("ramsey");
        }
        if self.envelope.is_some() {
            present.push("envelope");
        }
        if self.levels.is_some() {
            present.push("levels");
        }
        if self.trace.is_some() {
            present.push("trace");
        }
        if self.fit.is_some() {
            present.push("fit");
        }
        if self.output.is_some() {
            present.push("output");
        }
        present
    }

    /// Rejects sections that the given subcommand does not use.
    pub fn ensure_sections(
        &self,
        command: &str,
        required: &[&str],
        optional: &[&str],
    ) -> CliResult<()> {
        let present = self.present_sections();
        for section in required {
            if !present.contains(section) {
                return Err(validation(format!(
                    "`{command}` requires a [{section}] section"
                )));
            }
        }
        for section in &present {
            if !required.contains(section) && !optional.contains(section) {
                return Err(validation(format!(
                    "section [{section}] is not used by `{command}`; remove it"
                )));
            }
        }
        Ok(())
    }
}

/// Exactly one of `plain` (angular s^-1 / model units) or `hz` must be set.
fn resolve_energy(plain: Option<f64>, hz: Option<f64>, key: &str) -> CliResult<f64> {
    match (plain, hz) {
        (Some(v), None) => Ok(v),
        (None, Some(v)) => Ok(TAU * v),
        (None, None) => Err(validation(format!("set `{key}` or `{key}_hz`"))),
        (Some(_), Some(_)) => Err(validation(format!(
            "`{key}` and `{key}_hz` are mutually exclusive"
        ))),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSection {
    pub beta: Option<f64>,
    pub e_star: Option<f64>,
    pub e_star_hz: Option<f64>,
}

impl DeformationSection {
    pub fn e_star(&self) -> CliResult<f64> {
        resolve_energy(self.e_star, self.e_star_hz, "deformation.e_star")
    }

    pub fn params(&self) -> CliResult<DeformationParams> {
        let beta = self
            .beta
            .ok_or_else(|| validation("set `deformation.beta`"))?;
        DeformationParams::new(beta, self.e_star()?).map_err(invalid)
    }

    pub fn forbid_beta(&self, why: &str) -> CliResult<()> {
        if self.beta.is_some() {
            return Err(validation(format!(
                "`deformation.beta` is not used here: {why}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min: Option<f64>,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSection {
    fn build(&self, default_x_min: Option<f64>) -> CliResult<Grid1D> {
        let x_min = match (self.x_min, default_x_min) {
            (Some(v), _) => v,
            (None, Some(v)) => v,
            (None, None) => return Err(validation("set `grid.x_min`")),
        };
        Grid1D::new(x_min, self.x_max, self.n_points).map_err(invalid)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub kind: String,
    // two_level
    pub e1: Option<f64>,
    pub e1_hz: Option<f64>,
    pub e2: Option<f64>,
    pub e2_hz: Option<f64>,
    // quartic
    pub lambda: Option<f64>,
    // frw
    pub curvature: Option<f64>,
    pub center: Option<f64>,
    pub offset: Option<f64>,
    // schwarzschild_interior
    pub alpha: Option<f64>,
    pub beta1: Option<f64>,
    pub epsilon_wall: Option<f64>,
    // shared by the grid models
    pub levels: Option<usize>,
}

/// A spectrum built from the model section, with the quartic power-law fit
/// when one applies.
#[derive(Debug)]
pub struct BuiltModel {
    pub spectrum: Spectrum,
    pub power_law: Option<PowerLawFit>,
}

impl ModelSection {
    fn reject_keys(&self, kind: &str, disallowed: &[(&str, bool)]) -> CliResult<()> {
        for (key, present) in disallowed {
            if *present {
                return Err(validation(format!(
                    "key `model.{key}` is not used by model kind `{kind}`"
                )));
            }
        }
        Ok(())
    }

    pub fn needs_grid(&self) -> bool {
        self.kind != "two_level"
    }

    pub fn build(&self, grid: Option<&GridSection>) -> CliResult<BuiltModel> {
        match self.kind.as_str() {
            "two_level" => {
                self.reject_keys(
                    "two_level",
                    &[
                        ("lambda", self.lambda.is_some()),
                        ("curvature", self.curvature.is_some()),
                        ("center", self.center.is_some()),
                        ("offset", self.offset.is_some()),
                        ("alpha", self.alpha.is_some()),
                        ("beta1", self.beta1.is_some()),
                        ("epsilon_wall", self.epsilon_wall.is_some()),
                        ("levels", self.levels.is_some()),
                    ],
                )?;
                if grid.is_some() {
                    return Err(validation("[grid] is not used by the two_level model"));
                }
                let e1 = resolve_energy(self.e1, self.e1_hz, "model.e1")?;
                let e2 = resolve_energy(self.e2, self.e2_hz, "model.e2")?;
                let model = TwoLevelModel::new(e1, e2).map_err(invalid)?;
                Ok(BuiltModel {
                    spectrum: build_two_level(&model),
                    power_law: None,
                })
            }
            "quartic" => {
                self.reject_keys(
                    "quartic",
                    &[
                        ("e1", self.e1.is_some() || self.e1_hz.is_some()),
                        ("e2", self.e2.is_some() || self.e2_hz.is_some()),
                        ("curvature", self.curvature.is_some()),
                        ("center", self.center.is_some()),
                        ("offset", self.offset.is_some()),
                        ("alpha", self.alpha.is_some()),
                        ("beta1", self.beta1.is_some()),
                        ("epsilon_wall", self.epsilon_wall.is_some()),
                    ],
                )?;
                let grid = grid.ok_or_else(|| validation("quartic model needs a [grid] section"))?;
                let lambda = self
                    .lambda
                    .ok_or_else(|| validation("set `model.lambda`"))?;
                let levels = self
                    .levels
                    .ok_or_else(|| validation("set `model.levels`"))?;
                let model = QuarticModel::new(lambda, levels).map_err(invalid)?;
                let grid = grid.build(None)?;
                let (spectrum, power_law) = build_quartic(&model, &grid).map_err(crate::errors::numerical)?;
                Ok(BuiltModel {
                    spectrum,
                    power_law,
                })
            }
            "frw" => {
                self.reject_keys(
                    "frw",
                    &[
                        ("e1", self.e1.is_some() || self.e1_hz.is_some()),
                        ("e2", self.e2.is_some() || self.e2_hz.is_some()),
                        ("lambda", self.lambda.is_some()),
                        ("alpha", self.alpha.is_some()),
                        ("beta1", self.beta1.is_some()),
                        ("epsilon_wall", self.epsilon_wall.is_some()),
                    ],
                )?;
                let grid = grid.ok_or_else(|| validation("frw model needs a [grid] section"))?;
                let levels = self
                    .levels
                    .ok_or_else(|| validation("set `model.levels`"))?;
                let potential = FrwPotential::Harmonic {
                    curvature: self.curvature.unwrap_or(1.0),
                    center: self.center.unwrap_or(0.0),
                    offset: self.offset.unwrap_or(0.0),
                };
                let model = FrwModel::new(potential, levels).map_err(invalid)?;
                let grid = grid.build(None)?;
                let spectrum = build_frw(&model, &grid).map_err(crate::errors::numerical)?;
                Ok(BuiltModel {
                    spectrum,
                    power_law: None,
                })
            }
            "schwarzschild_interior" => {
                self.reject_keys(
                    "schwarzschild_interior",
                    &[
                        ("e1", self.e1.is_some() || self.e1_hz.is_some()),
                        ("e2", self.e2.is_some() || self.e2_hz.is_some()),
                        ("lambda", self.lambda.is_some()),
                        ("curvature", self.curvature.is_some()),
                        ("center", self.center.is_some()),
                        ("offset", self.offset.is_some()),
                    ],
                )?;
                let grid = grid.ok_or_else(|| {
                    validation("schwarzschild_interior model needs a [grid] section")
                })?;
                let levels = self
                    .levels
                    .ok_or_else(|| validation("set `model.levels`"))?;
                let alpha = self.alpha.ok_or_else(|| validation("set `model.alpha`"))?;
                let beta1 = self.beta1.ok_or_else(|| validation("set `model.beta1`"))?;
                let epsilon_wall = self
                    .epsilon_wall
                    .unwrap_or_else(|| SchwarzschildInteriorModel::default_epsilon_wall(beta1));
                let model = SchwarzschildInteriorModel::new(alpha, beta1, epsilon_wall, levels)
                    .map_err(invalid)?;
                let grid = grid.build(Some(epsilon_wall))?;
                let spectrum =
                    build_schwarzschild_interior(&model, &grid).map_err(crate::errors::numerical)?;
                Ok(BuiltModel {
                    spectrum,
                    power_law: None,
                })
            }
            other => Err(validation(format!(
                "unknown model kind `{other}`; expected two_level, quartic, frw, or schwarzschild_interior"
            ))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSection {
    /// Complex amplitudes as [re, im] pairs, one per level.
    pub amplitudes: Vec<[f64; 2]>,
    /// Rescale to unit norm on load (default true); with `false` the
    /// amplitudes must already be normalized to 1e-12.
    pub normalize: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSection {
    pub m: usize,
    pub n: usize,
    /// Optional boxcar averaging window; adds the windowed-modulus column.
    pub window_seconds: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    pub kind: String,
    pub e_min: Option<f64>,
    pub e_min_over_e_star: Option<f64>,
    pub e_max: Option<f64>,
    pub e_max_over_e_star: Option<f64>,
    pub amplitude: Option<f64>,
}

impl WindowSection {
    pub fn build(&self, e_star: f64) -> CliResult<WindowProfile> {
        let kind = match self.kind.as_str() {
            "smooth_bump" => WindowKind::SmoothBump,
            "raised_cosine" => WindowKind::RaisedCosine,
            other => {
                return Err(validation(format!(
                    "unknown window kind `{other}`; expected smooth_bump or raised_cosine"
                )))
            }
        };
        let e_min = resolve_scaled(
            self.e_min,
            self.e_min_over_e_star,
            e_star,
            "window.e_min",
            "window.e_min_over_e_star",
        )?;
        let e_max = resolve_scaled(
            self.e_max,
            self.e_max_over_e_star,
            e_star,
            "window.e_max",
            "window.e_max_over_e_star",
        )?;
        WindowProfile::new(kind, e_min, e_max, self.amplitude.unwrap_or(1.0)).map_err(invalid)
    }
}

fn resolve_scaled(
    plain: Option<f64>,
    scaled: Option<f64>,
    scale: f64,
    plain_key: &str,
    scaled_key: &str,
) -> CliResult<f64> {
    match (plain, scaled) {
        (Some(v), None) => Ok(v),
        (None, Some(v)) => Ok(v * scale),
        (None, None) => Err(validation(format!("set `{plain_key}` or `{scaled_key}`"))),
        (Some(_), Some(_)) => Err(validation(format!(
            "`{plain_key}` and `{scaled_key}` are mutually exclusive"
        ))),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralSection {
    /// Time in seconds, or...
    pub t: Option<f64>,
    /// ...the dimensionless product t * E*, so `t_e_star = 1.0` means
    /// t = 1/E*.
    pub t_e_star: Option<f64>,
    pub tolerance: Option<f64>,
}

impl IntegralSection {
    pub fn time(&self, e_star: f64) -> CliResult<f64> {
        match (self.t, self.t_e_star) {
            (Some(v), None) => Ok(v),
            (None, Some(v)) => Ok(v / e_star),
            (None, None) => Err(validation("set `integral.t` or `integral.t_e_star`")),
            (Some(_), Some(_)) => Err(validation(
                "`integral.t` and `integral.t_e_star` are mutually exclusive",
            )),
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(1e-10)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub time: Option<TimeSweep>,
    pub beta: Option<BetaSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSweep {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl TimeSweep {
    pub fn grid(&self) -> CliResult<Vec<f64>> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(validation("sweep.time bounds must be finite"));
        }
        match self.points {
            0 => Err(validation("sweep.time.points must be at least 1")),
            1 => {
                if self.start != self.stop {
                    return Err(validation(
                        "sweep.time with a single point needs start == stop",
                    ));
                }
                Ok(vec![self.start])
            }
            n => {
                if self.stop <= self.start {
                    return Err(validation("sweep.time needs stop > start"));
                }
                Ok((0..n)
                    .map(|i| self.start + (self.stop - self.start) * i as f64 / (n as f64 - 1.0))
                    .collect())
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaSweep {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<usize>,
    pub values: Option<Vec<f64>>,
}

impl BetaSweep {
    /// Geometric grid from min/max/points, or the explicit value list.
    pub fn grid(&self) -> CliResult<Vec<f64>> {
        match (&self.values, self.min, self.max, self.points) {
            (Some(values), None, None, None) => {
                if values.is_empty() {
                    return Err(validation("sweep.beta.values must not be empty"));
                }
                Ok(values.clone())
            }
            (None, Some(min), Some(max), Some(points)) => {
                if min <= 0.0 || !min.is_finite() || !max.is_finite() {
                    return Err(validation("sweep.beta needs finite positive min/max"));
                }
                match points {
                    0 => Err(validation("sweep.beta.points must be at least 1")),
                    1 => {
                        if min != max {
                            return Err(validation(
                                "sweep.beta with a single point needs min == max",
                            ));
                        }
                        Ok(vec![min])
                    }
                    n => {
                        if max <= min {
                            return Err(validation("sweep.beta needs max > min"));
                        }
                        let ratio = (max / min).powf(1.0 / (n as f64 - 1.0));
                        Ok((0..n).map(|i| min * ratio.powi(i as i32)).collect())
                    }
                }
            }
            _ => Err(validation(
                "sweep.beta takes either `values` or all of `min`, `max`, `points`",
            )),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlatformSection {
    pub name: String,
    pub e: Option<f64>,
    pub e_hz: Option<f64>,
    pub delta_e: Option<f64>,
    pub delta_e_hz: Option<f64>,
    pub t2_seconds: f64,
    pub e_star: Option<f64>,
    pub e_star_hz: Option<f64>,
    pub log_factor_override: Option<f64>,
}

impl PlatformSection {
    pub fn build(&self) -> CliResult<lsd_core::platforms::PlatformSpec> {
        lsd_core::platforms::PlatformSpec::new(
            self.name.clone(),
            resolve_energy(self.e, self.e_hz, "platform.e")?,
            resolve_energy(self.delta_e, self.delta_e_hz, "platform.delta_e")?,
            self.t2_seconds,
            resolve_energy(self.e_star, self.e_star_hz, "platform.e_star")?,
            self.log_factor_override,
        )
        .map_err(invalid)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamseySection {
    pub delta_omega: Option<f64>,
    pub delta_omega_hz: Option<f64>,
    pub e0: Option<f64>,
    pub e0_hz: Option<f64>,
    pub e1: Option<f64>,
    pub e1_hz: Option<f64>,
    pub e_star: Option<f64>,
    pub e_star_hz: Option<f64>,
}

impl RamseySection {
    pub fn resolve(&self) -> CliResult<(f64, f64, f64, f64)> {
        Ok((
            resolve_energy(self.delta_omega, self.delta_omega_hz, "ramsey.delta_omega")?,
            resolve_energy(self.e0, self.e0_hz, "ramsey.e0")?,
            resolve_energy(self.e1, self.e1_hz, "ramsey.e1")?,
            resolve_energy(self.e_star, self.e_star_hz, "ramsey.e_star")?,
        ))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeSection {
    pub kind: String,
    pub t2_seconds: f64,
}

impl EnvelopeSection {
    pub fn build(&self) -> CliResult<lsd_core::decoherence::EnvelopeModel> {
        let kind = match self.kind.as_str() {
            "exponential" => lsd_core::decoherence::EnvelopeKind::Exponential,
            "gaussian" => lsd_core::decoherence::EnvelopeKind::Gaussian,
            other => {
                return Err(validation(format!(
                    "unknown envelope kind `{other}`; expected exponential or gaussian"
                )))
            }
        };
        lsd_core::decoherence::EnvelopeModel::new(kind, self.t2_seconds).map_err(invalid)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelsSection {
    pub e_m: Option<f64>,
    pub e_m_hz: Option<f64>,
    pub e_n: Option<f64>,
    pub e_n_hz: Option<f64>,
}

impl LevelsSection {
    pub fn resolve(&self) -> CliResult<(f64, f64)> {
        Ok((
            resolve_energy(self.e_m, self.e_m_hz, "levels.e_m")?,
            resolve_energy(self.e_n, self.e_n_hz, "levels.e_n")?,
        ))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSection {
    /// CSV file with columns `t_seconds,coherence`.
    pub path: Option<String>,
    /// Synthesize the trace instead of reading one.
    pub synthetic: Option<SyntheticTraceSection>,
}

/// Optional fit window: the time range over which the residual-envelope
/// model is trusted. Points outside it are dropped before fitting.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSection {
    pub t_min_seconds: Option<f64>,
    pub t_max_seconds: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticTraceSection {
    pub gamma: f64,
    pub noise_amplitude: Option<f64>,
    pub t_start: f64,
    pub t_stop: f64,
    pub points: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<String>,
    pub path: Option<String>,
    pub precision: Option<usize>,
}
