//! The five computational subcommands. Each consumes a validated config and
//! produces a [`Table`]; nothing is written until the whole computation has
//! succeeded, so a failing run never leaves a partial output file.

use num_complex::Complex64;

use lsd_core::decoherence::{
    fit_residual_envelope, synthesize_trace, windowed_coherence, CoherenceTrace,
};
use lsd_core::deformation::{deformed_energy, g_function, DeformationParams, PhaseContext};
use lsd_core::evolution::{off_diagonal, StateVector};
use lsd_core::oscillatory::{decay_scan, integrate};
use lsd_core::platforms::{beta_bound, decade_band, ramsey_bound};

use crate::config::RawConfig;
use crate::errors::{invalid, numerical, validation, CliResult};
use crate::output::{Cell, Table};

/// Per-level records (n, E_n, G(E_n), F_beta(E_n)) for the configured model.
pub fn cmd_deform(cfg: &RawConfig) -> CliResult<Table> {
    cfg.ensure_sections("deform", &["deformation", "model"], &["grid", "output"])?;
    let deformation = cfg.deformation.as_ref().expect("required section");
    let params = deformation.params()?;
    let model = cfg.model.as_ref().expect("required section");
    if model.needs_grid() && cfg.grid.is_none() {
        return Err(validation(format!(
            "model kind `{}` needs a [grid] section",
            model.kind
        )));
    }
    let built = model.build(cfg.grid.as_ref())?;

    let mut table = Table::new(&["n", "energy_per_s", "g_per_s", "deformed_energy_per_s"]);
    for level in built.spectrum.levels() {
        let g = g_function(level.energy, &params).map_err(numerical)?;
        let f = deformed_energy(level.energy, &params).map_err(numerical)?;
        table.push_row(vec![
            Cell::Int(level.n as i64),
            Cell::Float(level.energy),
            Cell::Float(g),
            Cell::Float(f),
        ]);
    }
    table.push_trailer("beta", Cell::Float(params.beta()));
    table.push_trailer("e_star_per_s", Cell::Float(params.e_star()));
    if let Some(fit) = built.power_law {
        table.push_trailer("fitted_exponent", Cell::Float(fit.exponent));
        table.push_trailer("fitted_kappa", Cell::Float(fit.kappa));
        table.push_trailer("fit_points", Cell::Int(fit.points_used as i64));
    }
    Ok(table)
}

/// Time series of the off-diagonal element rho_mn for the configured state.
pub fn cmd_evolve(cfg: &RawConfig) -> CliResult<Table> {
    cfg.ensure_sections(
        "evolve",
        &["deformation", "model", "state", "pair", "sweep"],
        &["grid", "output"],
    )?;
    let params = cfg.deformation.as_ref().expect("required").params()?;
    let model = cfg.model.as_ref().expect("required");
    if model.needs_grid() && cfg.grid.is_none() {
        return Err(validation(format!(
            "model kind `{}` needs a [grid] section",
            model.kind
        )));
    }
    let built = model.build(cfg.grid.as_ref())?;

    let state_section = cfg.state.as_ref().expect("required");
    let amplitudes: Vec<Complex64> = state_section
        .amplitudes
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    let state = if state_section.normalize.unwrap_or(true) {
        StateVector::normalized(built.spectrum, amplitudes)
    } else {
        StateVector::new(built.spectrum, amplitudes)
    }
    .map_err(invalid)?;

    let pair = cfg.pair.as_ref().expect("required");
    if pair.m >= state.len() || pair.n >= state.len() {
        return Err(validation(format!(
            "pair indices ({}, {}) out of range for {} levels",
            pair.m,
            pair.n,
            state.len()
        )));
    }
    if pair.m == pair.n {
        return Err(validation("pair.m and pair.n must differ"));
    }
    if let Some(w) = pair.window_seconds {
        if !w.is_finite() || w <= 0.0 {
            return Err(validation(format!(
                "pair.window_seconds must be positive, got {w}"
            )));
        }
    }

    let sweep = cfg
        .sweep
        .as_ref()
        .and_then(|s| s.time.as_ref())
        .ok_or_else(|| validation("`evolve` needs a [sweep.time] section"))?;
    let t_grid = sweep.grid()?;

    let mut columns = vec!["t_seconds", "re_rho", "im_rho", "abs_rho"];
    if pair.window_seconds.is_some() {
        columns.push("windowed_abs_rho");
    }
    let mut table = Table::new(&columns);

    let mut effective_frequency = None;
    for &t in &t_grid {
        let sample = off_diagonal(&state, pair.m, pair.n, t, &params).map_err(numerical)?;
        effective_frequency.get_or_insert(sample.effective_frequency);
        let mut row = vec![
            Cell::Float(t),
            Cell::Float(sample.rho_mn.re),
            Cell::Float(sample.rho_mn.im),
            Cell::Float(sample.rho_mn.norm()),
        ];
        if let Some(w) = pair.window_seconds {
            let avg =
                windowed_coherence(&state, pair.m, pair.n, &params, t, w).map_err(numerical)?;
            row.push(Cell::Float(avg.norm()));
        }
        table.push_row(row);
    }

    let e_m = state.spectrum().energy(pair.m).map_err(invalid)?;
    let e_n = state.spectrum().energy(pair.n).map_err(invalid)?;
    let bohr = e_m - e_n;
    if let Some(omega) = effective_frequency {
        table.push_trailer("effective_frequency_per_s", Cell::Float(omega));
        table.push_trailer("bohr_frequency_per_s", Cell::Float(bohr));
        table.push_trailer("frequency_shift_per_s", Cell::Float(omega - bohr));
    }
    table.push_trailer("beta", Cell::Float(params.beta()));
    table.push_trailer("e_star_per_s", Cell::Float(params.e_star()));
    Ok(table)
}

/// Interference-integral records over the beta grid plus the decay fit.
pub fn cmd_integrate(cfg: &RawConfig) -> CliResult<Table> {
    cfg.ensure_sections(
        "integrate",
        &["deformation", "window", "integral", "sweep"],
        &["output"],
    )?;
    let deformation = cfg.deformation.as_ref().expect("required");
    deformation.forbid_beta("the [sweep.beta] grid sets beta")?;
    let e_star = deformation.e_star()?;

    let profile = cfg.window.as_ref().expect("required").build(e_star)?;
    let integral = cfg.integral.as_ref().expect("required");
    let t = integral.time(e_star)?;
    let tolerance = integral.tolerance();

    let beta_grid = cfg
        .sweep
        .as_ref()
        .and_then(|s| s.beta.as_ref())
        .ok_or_else(|| validation("`integrate` needs a [sweep.beta] section"))?
        .grid()?;

    // The decay scan drives the fit and decides which betas satisfy the
    // non-stationary-phase hypothesis; the records below cover every beta.
    let fit = decay_scan(&profile, t, e_star, &beta_grid, tolerance).map_err(numerical)?;
    let included = &fit.beta_grid;

    let mut table = Table::new(&["beta", "re_i", "im_i", "abs_i", "hypothesis_ok"]);
    for &beta in &beta_grid {
        let params = DeformationParams::new(beta, e_star).map_err(invalid)?;
        let ctx = PhaseContext::new(t, params).map_err(invalid)?;
        let value = integrate(&profile, &ctx, tolerance).map_err(numerical)?;
        let hypothesis_ok = included.contains(&beta);
        table.push_row(vec![
            Cell::Float(beta),
            Cell::Float(value.re),
            Cell::Float(value.im),
            Cell::Float(value.norm()),
            Cell::Bool(hypothesis_ok),
        ]);
    }

    table.push_trailer("t_seconds", Cell::Float(t));
    table.push_trailer("tolerance", Cell::Float(tolerance));
    if let Some(slope) = fit.slope {
        table.push_trailer("slope_loglog", Cell::Float(slope));
    }
    table.push_trailer("c_fit", Cell::Float(fit.c_fit));
    table.push_trailer("c_bound", Cell::Float(fit.c_bound));
    table.push_trailer(
        "explicit_constant",
        Cell::Float(fit.explicit_constant(&profile, t)),
    );
    table.push_trailer("excluded_betas", Cell::Int(fit.excluded.len() as i64));
    Ok(table)
}

/// Per-platform beta bounds, with batch error semantics, plus the optional
/// Ramsey-protocol bound in the trailer.
pub fn cmd_bounds(cfg: &RawConfig) -> CliResult<Table> {
    cfg.ensure_sections("bounds", &[], &["platform", "ramsey", "output"])?;
    if cfg.platform.is_none() && cfg.ramsey.is_none() {
        return Err(validation(
            "`bounds` needs a [[platform]] list or a [ramsey] section",
        ));
    }

    let mut table = Table::new(&[
        "platform",
        "e_per_s",
        "delta_e_per_s",
        "t2_seconds",
        "e_star_per_s",
        "log_factor_override",
        "g_difference_per_s",
        "beta_max",
        "decade",
        "status",
        "error",
    ]);

    let mut successes = 0usize;
    let mut failures = 0usize;
    if let Some(platforms) = &cfg.platform {
        for section in platforms {
            match section
                .build()
                .and_then(|spec| beta_bound(&spec).map_err(numerical))
            {
                Ok(result) => {
                    successes += 1;
                    let spec = &result.spec;
                    table.push_row(vec![
                        Cell::Text(result.platform.clone()),
                        Cell::Float(spec.transition_energy()),
                        Cell::Float(spec.level_splitting()),
                        Cell::Float(spec.t2()),
                        Cell::Float(spec.e_star()),
                        spec.log_factor_override().map_or(Cell::Empty, Cell::Float),
                        Cell::Float(result.g_difference),
                        Cell::Float(result.beta_max),
                        Cell::Int(result.decade as i64),
                        Cell::Text("ok".to_string()),
                        Cell::Text(String::new()),
                    ]);
                }
                Err(err) => {
                    failures += 1;
                    table.push_row(vec![
                        Cell::Text(section.name.clone()),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Float(section.t2_seconds),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Text("error".to_string()),
                        Cell::Text(err.to_string()),
                    ]);
                }
            }
        }
        if successes == 0 && failures > 0 {
            return Err(crate::errors::CliError::Numerical(format!(
                "all {failures} platform rows failed"
            )));
        }
    }

    if let Some(ramsey) = &cfg.ramsey {
        let (delta_omega, e0, e1, e_star) = ramsey.resolve()?;
        let params = DeformationParams::new(1.0, e_star).map_err(invalid)?;
        let bound = ramsey_bound(delta_omega, e0, e1, &params).map_err(numerical)?;
        let dg = (g_function(e1, &params).map_err(numerical)?
            - g_function(e0, &params).map_err(numerical)?)
        .abs();
        table.push_trailer("ramsey_bound", Cell::Float(bound));
        table.push_trailer("ramsey_decade", Cell::Int(decade_band(bound) as i64));
        table.push_trailer("ramsey_g_difference_per_s", Cell::Float(dg));
        table.push_trailer("ramsey_delta_omega_per_s", Cell::Float(delta_omega));
    }
    Ok(table)
}

/// Residual-envelope fit of a coherence trace: recovers Gamma and beta.
pub fn cmd_fit(cfg: &RawConfig, seed_override: Option<u64>) -> CliResult<Table> {
    cfg.ensure_sections(
        "fit",
        &["deformation", "envelope", "levels", "trace"],
        &["fit", "output"],
    )?;
    let deformation = cfg.deformation.as_ref().expect("required");
    deformation.forbid_beta("beta is inferred by the fit")?;
    let e_star = deformation.e_star()?;
    let params = DeformationParams::new(0.0, e_star).map_err(invalid)?;

    let envelope = cfg.envelope.as_ref().expect("required").build()?;
    let (e_m, e_n) = cfg.levels.as_ref().expect("required").resolve()?;

    let trace_section = cfg.trace.as_ref().expect("required");
    let (trace, source, seed_used) = match (&trace_section.path, &trace_section.synthetic) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| validation(format!("cannot read trace file `{path}`: {e}")))?;
            (parse_trace_csv(&text)?, format!("file:{path}"), None)
        }
        (None, Some(synth)) => {
            if synth.points < 2 {
                return Err(validation("trace.synthetic.points must be at least 2"));
            }
            let t_grid: Vec<f64> = (0..synth.points)
                .map(|i| {
                    synth.t_start
                        + (synth.t_stop - synth.t_start) * i as f64 / (synth.points as f64 - 1.0)
                })
                .collect();
            let seed = seed_override.or(synth.seed).unwrap_or(0);
            let trace = synthesize_trace(
                &envelope,
                synth.gamma,
                &t_grid,
                synth.noise_amplitude.unwrap_or(0.0),
                seed,
            )
            .map_err(invalid)?;
            (trace, "synthetic".to_string(), Some(seed))
        }
        (Some(_), Some(_)) => {
            return Err(validation(
                "`trace.path` and `[trace.synthetic]` are mutually exclusive",
            ))
        }
        (None, None) => {
            return Err(validation(
                "set `trace.path` or a [trace.synthetic] section",
            ))
        }
    };

    // The residual-envelope model is only trusted over an experimenter-chosen
    // time window; restrict the trace to it before fitting.
    let trace = match &cfg.fit {
        Some(window) => {
            let t_min = window.t_min_seconds.unwrap_or(f64::NEG_INFINITY);
            let t_max = window.t_max_seconds.unwrap_or(f64::INFINITY);
            if t_min >= t_max {
                return Err(validation("fit window needs t_min_seconds < t_max_seconds"));
            }
            let mut times = Vec::new();
            let mut values = Vec::new();
            for (&t, &v) in trace.times().iter().zip(trace.values()) {
                if t >= t_min && t <= t_max {
                    times.push(t);
                    values.push(v);
                }
            }
            CoherenceTrace::new(times, values)
                .map_err(|e| validation(format!("fit window leaves no valid trace: {e}")))?
        }
        None => trace,
    };

    let fit = fit_residual_envelope(&trace, &envelope, e_m, e_n, &params).map_err(numerical)?;
    let dg = (g_function(e_m, &params).map_err(numerical)?
        - g_function(e_n, &params).map_err(numerical)?)
    .abs();
    let significant = fit.gamma_fit > 2.0 * fit.slope_stderr;
    let gamma_upper95 = fit.gamma_fit + 2.0 * fit.slope_stderr;

    let mut table = Table::new(&[
        "gamma_fit_per_s",
        "gamma_stderr_per_s",
        "gamma_upper95_per_s",
        "beta_inferred",
        "beta_upper95",
        "significant",
        "clamped",
        "residual_norm",
        "points_used",
        "tau_dec_seconds",
        "tau_dec_infinite",
        "g_difference_per_s",
    ]);
    let (tau_cell, tau_infinite) = if fit.gamma_fit > 0.0 {
        (Cell::Float(1.0 / fit.gamma_fit), false)
    } else {
        (Cell::Infinite, true)
    };
    table.push_row(vec![
        Cell::Float(fit.gamma_fit),
        Cell::Float(fit.slope_stderr),
        Cell::Float(gamma_upper95),
        Cell::Float(fit.beta_inferred),
        Cell::Float(gamma_upper95 / dg),
        Cell::Bool(significant),
        Cell::Bool(fit.clamped),
        Cell::Float(fit.residual_norm),
        Cell::Int(fit.points_used as i64),
        tau_cell,
        Cell::Bool(tau_infinite),
        Cell::Float(dg),
    ]);
    table.push_trailer("source", Cell::Text(source));
    if let Some(seed) = seed_used {
        table.push_trailer("seed", Cell::Int(seed as i64));
    }
    if let Some(window) = &cfg.fit {
        table.push_trailer(
            "fit_window_t_min_seconds",
            window.t_min_seconds.map_or(Cell::Empty, Cell::Float),
        );
        table.push_trailer(
            "fit_window_t_max_seconds",
            window.t_max_seconds.map_or(Cell::Empty, Cell::Float),
        );
    }
    table.push_trailer("e_star_per_s", Cell::Float(e_star));
    Ok(table)
}

/// Strict two-column trace parser: header `t_seconds,coherence`, then one
/// `t,value` pair per line. Errors carry line and column diagnostics.
fn parse_trace_csv(text: &str) -> CliResult<CoherenceTrace> {
    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut saw_header = false;
    for (index, line) in text.lines().enumerate() {
        let line_number = index + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if !saw_header {
            if line != "t_seconds,coherence" {
                return Err(validation(format!(
                    "trace line {line_number}: expected header `t_seconds,coherence`, got `{line}`"
                )));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 {
            return Err(validation(format!(
                "trace line {line_number}: expected 2 fields, got {}",
                fields.len()
            )));
        }
        let t: f64 = fields[0].trim().parse().map_err(|_| {
            validation(format!(
                "trace line {line_number}, column t_seconds: `{}` is not a number",
                fields[0]
            ))
        })?;
        let v: f64 = fields[1].trim().parse().map_err(|_| {
            validation(format!(
                "trace line {line_number}, column coherence: `{}` is not a number",
                fields[1]
            ))
        })?;
        times.push(t);
        values.push(v);
    }
    if !saw_header {
        return Err(validation("trace file is empty"));
    }
    CoherenceTrace::new(times, values).map_err(|e| validation(format!("trace file: {e}")))
}
