//! End-to-end tests of the `lsd-lab` binary: exit codes, CSV/JSON shape,
//! determinism, schema strictness, and the shipped configs.

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU64, Ordering};

static DIR_COUNTER: AtomicU64 = AtomicU64::new(0);

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "lsd-lab-cli-{}-{}-{tag}",
        std::process::id(),
        DIR_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lsd-lab"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn shipped(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "command failed: {}\n{}",
        output.status,
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

/// Parsed CSV: header, data rows, and `# key = value` trailer pairs.
struct Csv {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    trailer: Vec<(String, String)>,
}

fn parse_csv(text: &str) -> Csv {
    let mut lines = text.lines();
    let columns = lines
        .next()
        .expect("header row")
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let mut rows = Vec::new();
    let mut trailer = Vec::new();
    for line in lines {
        if let Some(comment) = line.strip_prefix("# ") {
            let (key, value) = comment.split_once(" = ").expect("trailer shape");
            trailer.push((key.to_string(), value.to_string()));
        } else if !line.is_empty() {
            rows.push(line.split(',').map(|s| s.to_string()).collect());
        }
    }
    Csv {
        columns,
        rows,
        trailer,
    }
}

impl Csv {
    fn column(&self, name: &str) -> usize {
        self.columns
            .iter()
            .position(|c| c == name)
            .unwrap_or_else(|| panic!("no column {name} in {:?}", self.columns))
    }

    fn floats(&self, name: &str) -> Vec<f64> {
        let idx = self.column(name);
        self.rows.iter().map(|r| r[idx].parse().unwrap()).collect()
    }

    fn trailer_value(&self, key: &str) -> Option<&str> {
        self.trailer
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn write_config(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn rel_err(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn deform_two_level_reproduces_g_values() {
    let output = run(&["deform", "--config", &shipped("two_level.toml")]);
    let csv = parse_csv(&stdout_of(&output));
    assert_eq!(
        csv.columns,
        ["n", "energy_per_s", "g_per_s", "deformed_energy_per_s"]
    );
    let g = csv.floats("g_per_s");
    assert!(rel_err(g[0], 5.05e10) < 0.01, "G(E1) = {}", g[0]);
    assert!(rel_err(g[1], 5.22e10) < 0.01, "G(E2) = {}", g[1]);

    // LF endings, no CR anywhere.
    assert!(!stdout_of(&output).contains('\r'));
}

#[test]
fn deform_beta_zero_leaves_spectrum_unchanged() {
    let dir = scratch_dir("beta0");
    let config = write_config(
        &dir,
        "b0.toml",
        "[deformation]\nbeta = 0.0\ne_star_hz = 1.0e9\n\n[model]\nkind = \"two_level\"\ne1_hz = 5.0e9\ne2_hz = 5.1e9\n",
    );
    let csv = parse_csv(&stdout_of(&run(&["deform", "--config", &config])));
    let e_idx = csv.column("energy_per_s");
    let f_idx = csv.column("deformed_energy_per_s");
    for row in &csv.rows {
        assert_eq!(row[e_idx], row[f_idx], "F must equal E at beta = 0");
    }
}

#[test]
fn deform_e_star_shift_is_linear_in_energy() {
    // Rerunning with E*' changes F by beta * E * ln(E*'/E*).
    let dir = scratch_dir("estar");
    let base = write_config(
        &dir,
        "a.toml",
        "[deformation]\nbeta = 0.25\ne_star = 2.0\n\n[model]\nkind = \"two_level\"\ne1 = 3.0\ne2 = 7.0\n",
    );
    let moved = write_config(
        &dir,
        "b.toml",
        "[deformation]\nbeta = 0.25\ne_star = 6.0\n\n[model]\nkind = \"two_level\"\ne1 = 3.0\ne2 = 7.0\n",
    );
    let csv_a = parse_csv(&stdout_of(&run(&["deform", "--config", &base])));
    let csv_b = parse_csv(&stdout_of(&run(&["deform", "--config", &moved])));
    let c = 0.25 * (6.0_f64 / 2.0).ln();
    for ((fa, fb), e) in csv_a
        .floats("deformed_energy_per_s")
        .iter()
        .zip(csv_b.floats("deformed_energy_per_s"))
        .zip(csv_a.floats("energy_per_s"))
    {
        let expected = c * e;
        assert!(
            ((fa - fb) - expected).abs() <= 1e-12 * expected.abs(),
            "column shift {} vs beta E ln(ratio) {expected}",
            fa - fb
        );
    }
}

#[test]
fn evolve_modulus_constant_and_fringe_shift() {
    let output = run(&["evolve", "--config", &shipped("two_level_evolve.toml")]);
    let csv = parse_csv(&stdout_of(&output));

    // |rho| constant over the whole series (unitarity).
    let abs_rho = csv.floats("abs_rho");
    for &v in &abs_rho {
        assert!((v - abs_rho[0]).abs() < 1e-12, "|rho| drifted: {v}");
    }

    // Extract the fringe frequency from the series by a phase-slope fit.
    let t = csv.floats("t_seconds");
    let re = csv.floats("re_rho");
    let im = csv.floats("im_rho");
    let mut unwrapped = Vec::with_capacity(t.len());
    let mut offset = 0.0;
    let mut prev = f64::NAN;
    for (r, i) in re.iter().zip(&im) {
        let mut theta = i.atan2(*r);
        if !prev.is_nan() {
            while theta + offset - prev > std::f64::consts::PI {
                offset -= TAU;
            }
            while theta + offset - prev < -std::f64::consts::PI {
                offset += TAU;
            }
        }
        theta += offset;
        unwrapped.push(theta);
        prev = theta;
    }
    // Least-squares slope of theta vs t.
    let n = t.len() as f64;
    let t_mean = t.iter().sum::<f64>() / n;
    let th_mean = unwrapped.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (ti, thi) in t.iter().zip(&unwrapped) {
        sxx += (ti - t_mean) * (ti - t_mean);
        sxy += (ti - t_mean) * (thi - th_mean);
    }
    let omega_fit = -sxy / sxx;
    let bohr: f64 = csv
        .trailer_value("bohr_frequency_per_s")
        .unwrap()
        .parse()
        .unwrap();
    let shift_hz = (omega_fit - bohr) / TAU;
    assert!(
        rel_err(shift_hz, 270.0) < 0.05,
        "extracted fringe shift {shift_hz} Hz, expected ~270 Hz"
    );

    // The windowed modulus column is the sinc-suppressed constant.
    let windowed = csv.floats("windowed_abs_rho");
    assert!(windowed.iter().all(|&w| w <= abs_rho[0] + 1e-15));
}

#[test]
fn evolve_single_point_at_zero_time() {
    let dir = scratch_dir("t0");
    let config = write_config(
        &dir,
        "t0.toml",
        "[deformation]\nbeta = 1.0e-6\ne_star_hz = 1.0e9\n\n[model]\nkind = \"two_level\"\ne1_hz = 5.0e9\ne2_hz = 5.1e9\n\n[state]\namplitudes = [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]\n\n[pair]\nm = 0\nn = 1\n\n[sweep.time]\nstart = 0.0\nstop = 0.0\npoints = 1\n",
    );
    let csv = parse_csv(&stdout_of(&run(&["evolve", "--config", &config])));
    assert_eq!(csv.rows.len(), 1);
    let re = csv.floats("re_rho")[0];
    let im = csv.floats("im_rho")[0];
    assert!(
        (re - 0.5).abs() < 1e-12,
        "rho(0) = c_m c_n* = 0.5, got {re}"
    );
    assert!(im.abs() < 1e-15);
}

#[test]
fn integrate_shipped_decay_scan_trailer() {
    let csv = parse_csv(&stdout_of(&run(&[
        "integrate",
        "--config",
        &shipped("decay_scan.toml"),
    ])));
    assert_eq!(csv.rows.len(), 4);
    let hypothesis_idx = csv.column("hypothesis_ok");
    assert!(csv.rows.iter().all(|r| r[hypothesis_idx] == "true"));
    let slope: f64 = csv.trailer_value("slope_loglog").unwrap().parse().unwrap();
    assert!(slope <= -0.9, "shipped decay slope {slope}");
    let c_fit: f64 = csv.trailer_value("c_fit").unwrap().parse().unwrap();
    let explicit: f64 = csv
        .trailer_value("explicit_constant")
        .unwrap()
        .parse()
        .unwrap();
    assert!(c_fit <= explicit);
}

#[test]
fn bounds_shipped_table_decades() {
    let csv = parse_csv(&stdout_of(&run(&[
        "bounds",
        "--config",
        &shipped("table1.toml"),
    ])));
    let name_idx = csv.column("platform");
    let decade_idx = csv.column("decade");
    let bands: &[(&str, &[&str])] = &[
        ("superconducting", &["-5"]),
        ("trapped_ion_optical", &["-8", "-7"]),
        ("nv_center", &["-7", "-6"]),
        ("cold_atom_lattice", &["-6", "-5"]),
    ];
    assert_eq!(csv.rows.len(), 4);
    for row in &csv.rows {
        let (_, band) = bands
            .iter()
            .find(|(name, _)| *name == row[name_idx])
            .unwrap();
        assert!(
            band.contains(&row[decade_idx].as_str()),
            "{} decade {} outside band {band:?}",
            row[name_idx],
            row[decade_idx]
        );
    }
}

#[test]
fn integrate_zero_time_gives_window_mass() {
    let dir = scratch_dir("int0");
    let config = write_config(
        &dir,
        "t0.toml",
        "[deformation]\ne_star = 1.0\n\n[window]\nkind = \"raised_cosine\"\ne_min = 2.0\ne_max = 4.0\namplitude = 1.0\n\n[integral]\nt = 0.0\n\n[sweep.beta]\nvalues = [1.0, 10.0, 100.0]\n",
    );
    let csv = parse_csv(&stdout_of(&run(&["integrate", "--config", &config])));
    for v in csv.floats("abs_i") {
        assert!(
            (v - 1.0).abs() < 1e-9,
            "|I| at t = 0 must equal the window mass A w / 2 = 1, got {v}"
        );
    }
}

#[test]
fn integrate_single_beta_has_no_slope_trailer() {
    let dir = scratch_dir("single");
    let config = write_config(
        &dir,
        "one.toml",
        "[deformation]\ne_star = 1.0\n\n[window]\nkind = \"raised_cosine\"\ne_min_over_e_star = 2.0\ne_max_over_e_star = 4.0\n\n[integral]\nt_e_star = 1.0\n\n[sweep.beta]\nvalues = [50.0]\n",
    );
    let csv = parse_csv(&stdout_of(&run(&["integrate", "--config", &config])));
    assert_eq!(csv.rows.len(), 1);
    assert!(csv.trailer_value("slope_loglog").is_none());
    assert!(csv.trailer_value("c_fit").is_some());
}

#[test]
fn integrate_all_betas_violating_hypothesis_exits_2() {
    // Support below E*/e so the stationary energy sits inside for the
    // whole grid.
    let dir = scratch_dir("hypfail");
    let config = write_config(
        &dir,
        "bad.toml",
        "[deformation]\ne_star = 1.0\n\n[window]\nkind = \"raised_cosine\"\ne_min = 0.05\ne_max = 0.2\n\n[integral]\nt = 1.0\n\n[sweep.beta]\nvalues = [0.8, 1.0]\n",
    );
    let output = run(&["integrate", "--config", &config]);
    assert_eq!(output.status.code(), Some(2), "expected numerical failure");
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("numerical failure"), "{stderr}");
}

#[test]
fn bounds_empty_platform_list_is_header_only() {
    let dir = scratch_dir("empty");
    let config = write_config(&dir, "empty.toml", "platform = []\n");
    let text = stdout_of(&run(&["bounds", "--config", &config]));
    let csv = parse_csv(&text);
    assert!(csv.rows.is_empty());
    assert!(csv.columns.contains(&"beta_max".to_string()));
}

#[test]
fn bounds_batch_collects_row_errors() {
    let dir = scratch_dir("batch");
    let config = write_config(
        &dir,
        "batch.toml",
        concat!(
            "[[platform]]\nname = \"ok1\"\ne_hz = 5.0e9\ndelta_e_hz = 1.0e8\nt2_seconds = 1.0e-4\ne_star_hz = 1.0e9\n\n",
            "[[platform]]\nname = \"broken\"\ne_hz = 1.0e8\ndelta_e_hz = 5.0e9\nt2_seconds = 1.0e-4\ne_star_hz = 1.0e9\n\n",
            "[[platform]]\nname = \"ok2\"\ne_hz = 3.0e9\ndelta_e_hz = 1.0e8\nt2_seconds = 3.0e-3\ne_star_hz = 1.0e9\n\n",
            "[[platform]]\nname = \"ok3\"\ne_hz = 1.0e15\ndelta_e_hz = 1.0e6\nt2_seconds = 1.0\ne_star_hz = 1.0e9\n",
        ),
    );
    let output = run(&["bounds", "--config", &config]);
    assert!(output.status.success(), "batch must not be fatal");
    let csv = parse_csv(&String::from_utf8(output.stdout).unwrap());
    assert_eq!(csv.rows.len(), 4);
    let status_idx = csv.column("status");
    let error_idx = csv.column("error");
    let ok_count = csv.rows.iter().filter(|r| r[status_idx] == "ok").count();
    assert_eq!(ok_count, 3);
    let bad_row = csv
        .rows
        .iter()
        .find(|r| r[status_idx] == "error")
        .expect("one error row");
    assert!(bad_row[error_idx].contains("splitting"), "{bad_row:?}");
}

#[test]
fn bounds_benchmark_decade() {
    let csv = parse_csv(&stdout_of(&run(&[
        "bounds",
        "--config",
        &shipped("benchmark.toml"),
    ])));
    let beta_max = csv.floats("beta_max")[0];
    assert!(rel_err(beta_max, 5.0e-6) < 0.01);
}

#[test]
fn fit_from_trace_file_round_trips_gamma() {
    let dir = scratch_dir("fitfile");
    // Synthesize a clean trace through the core and write it in the trace
    // schema.
    let env = lsd_core::decoherence::EnvelopeModel::new(
        lsd_core::decoherence::EnvelopeKind::Exponential,
        1.0e-4,
    )
    .unwrap();
    let t_grid: Vec<f64> = (0..200)
        .map(|i| 1.0e-6 + (3.0e-4 - 1.0e-6) * i as f64 / 199.0)
        .collect();
    let gamma_true = 1645.8;
    let trace = lsd_core::decoherence::synthesize_trace(&env, gamma_true, &t_grid, 0.0, 0).unwrap();
    let mut csv_text = String::from("t_seconds,coherence\n");
    for (t, v) in trace.times().iter().zip(trace.values()) {
        csv_text.push_str(&format!("{t:.16e},{v:.16e}\n"));
    }
    let trace_path = dir.join("trace.csv");
    fs::write(&trace_path, csv_text).unwrap();

    let config = write_config(
        &dir,
        "fit.toml",
        &format!(
            "[deformation]\ne_star_hz = 1.0e9\n\n[envelope]\nkind = \"exponential\"\nt2_seconds = 1.0e-4\n\n[levels]\ne_m_hz = 5.1e9\ne_n_hz = 5.0e9\n\n[trace]\npath = \"{}\"\n",
            trace_path.display()
        ),
    );
    let csv = parse_csv(&stdout_of(&run(&["fit", "--config", &config])));
    let gamma_fit = csv.floats("gamma_fit_per_s")[0];
    assert!(
        rel_err(gamma_fit, gamma_true) < 0.02,
        "gamma {gamma_fit} vs {gamma_true}"
    );
    let beta = csv.floats("beta_inferred")[0];
    assert!(rel_err(beta, 1.0e-6) < 0.02, "beta {beta}");
}

#[test]
fn fit_null_trace_reports_insignificant_bound() {
    let dir = scratch_dir("fitnull");
    let config = write_config(
        &dir,
        "null.toml",
        "[deformation]\ne_star_hz = 1.0e9\n\n[envelope]\nkind = \"exponential\"\nt2_seconds = 1.0e-4\n\n[levels]\ne_m_hz = 5.1e9\ne_n_hz = 5.0e9\n\n[trace.synthetic]\ngamma = 0.0\nnoise_amplitude = 0.01\nt_start = 1.0e-6\nt_stop = 2.0e-4\npoints = 150\nseed = 11\n",
    );
    let csv = parse_csv(&stdout_of(&run(&["fit", "--config", &config])));
    let significant_idx = csv.column("significant");
    assert_eq!(csv.rows[0][significant_idx], "false");
    // The upper bound is still reported.
    let upper = csv.floats("beta_upper95")[0];
    assert!(upper > 0.0);
}

#[test]
fn fit_window_restricts_the_points_used() {
    let dir = scratch_dir("fitwindow");
    let config = write_config(
        &dir,
        "window.toml",
        "[deformation]\ne_star_hz = 1.0e9\n\n[envelope]\nkind = \"exponential\"\nt2_seconds = 1.0e-4\n\n[levels]\ne_m_hz = 5.1e9\ne_n_hz = 5.0e9\n\n[trace.synthetic]\ngamma = 1645.8\nnoise_amplitude = 0.0\nt_start = 1.0e-6\nt_stop = 3.0e-4\npoints = 200\n\n[fit]\nt_min_seconds = 5.0e-5\nt_max_seconds = 2.0e-4\n",
    );
    let csv = parse_csv(&stdout_of(&run(&["fit", "--config", &config])));
    let points: f64 = csv.floats("points_used")[0];
    assert!(
        points < 200.0 && points > 3.0,
        "window should drop points, used {points}"
    );
    let gamma = csv.floats("gamma_fit_per_s")[0];
    assert!(rel_err(gamma, 1645.8) < 0.02, "gamma {gamma}");
    assert!(csv.trailer_value("fit_window_t_min_seconds").is_some());
}

#[test]
fn fit_malformed_trace_exits_1_with_line_diagnostics() {
    let dir = scratch_dir("badcsv");
    let trace_path = dir.join("bad.csv");
    fs::write(&trace_path, "t_seconds,coherence\n1.0e-6,0.99\noops\n").unwrap();
    let config = write_config(
        &dir,
        "fit.toml",
        &format!(
            "[deformation]\ne_star_hz = 1.0e9\n\n[envelope]\nkind = \"exponential\"\nt2_seconds = 1.0e-4\n\n[levels]\ne_m_hz = 5.1e9\ne_n_hz = 5.0e9\n\n[trace]\npath = \"{}\"\n",
            trace_path.display()
        ),
    );
    let output = run(&["fit", "--config", &config]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 3"), "diagnostics missing: {stderr}");
}

#[test]
fn identical_config_and_seed_give_byte_identical_output() {
    let dir = scratch_dir("determinism");
    for (command, config) in [
        ("fit", shipped("fit_demo.toml")),
        ("integrate", shipped("decay_scan.toml")),
        ("bounds", shipped("table1.toml")),
    ] {
        let out_a = dir.join(format!("{command}-a.csv"));
        let out_b = dir.join(format!("{command}-b.csv"));
        for out in [&out_a, &out_b] {
            let output = run(&[
                command,
                "--config",
                &config,
                "--seed",
                "42",
                "--out",
                out.to_str().unwrap(),
            ]);
            assert!(output.status.success(), "{command} failed");
        }
        let bytes_a = fs::read(&out_a).unwrap();
        let bytes_b = fs::read(&out_b).unwrap();
        assert_eq!(bytes_a, bytes_b, "{command} output not byte-identical");
    }
}

#[test]
fn misspelled_key_fails_before_any_output() {
    let dir = scratch_dir("strict");
    let config = write_config(
        &dir,
        "typo.toml",
        "[deformation]\nbetaa = 1.0e-6\ne_star_hz = 1.0e9\n\n[model]\nkind = \"two_level\"\ne1_hz = 5.0e9\ne2_hz = 5.1e9\n",
    );
    let out = dir.join("never.csv");
    let output = run(&[
        "deform",
        "--config",
        &config,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&output.stderr).contains("betaa"),
        "error must name the bad key"
    );
    assert!(!out.exists(), "no partial output file may be written");
}

#[test]
fn wrong_section_for_command_is_rejected() {
    let dir = scratch_dir("section");
    let config = write_config(
        &dir,
        "mixed.toml",
        "[deformation]\nbeta = 1.0e-6\ne_star = 1.0\n\n[model]\nkind = \"two_level\"\ne1 = 1.0\ne2 = 2.0\n\n[window]\nkind = \"raised_cosine\"\ne_min = 2.0\ne_max = 4.0\n",
    );
    let output = run(&["deform", "--config", &config]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("window"));
}

#[test]
fn json_format_matches_csv_records() {
    let csv = parse_csv(&stdout_of(&run(&[
        "deform",
        "--config",
        &shipped("two_level.toml"),
    ])));
    let json_text = stdout_of(&run(&[
        "deform",
        "--config",
        &shipped("two_level.toml"),
        "--format",
        "json",
    ]));
    let json: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    let records = json["records"].as_array().unwrap();
    assert_eq!(records.len(), csv.rows.len());
    let g_csv = csv.floats("g_per_s");
    for (record, expected) in records.iter().zip(g_csv) {
        let g = record["g_per_s"].as_f64().unwrap();
        assert_eq!(g, expected, "JSON and CSV must carry the same values");
    }
    assert!(json["trailer"]["beta"].as_f64().is_some());
}

#[test]
fn emitted_csv_round_trips_numeric_values() {
    // Parse every float cell and re-format at the shipped precision; the
    // strings must match, so the file re-parses into the same numbers.
    let text = stdout_of(&run(&["deform", "--config", &shipped("two_level.toml")]));
    let csv = parse_csv(&text);
    for row in &csv.rows {
        for cell in &row[1..] {
            let value: f64 = cell.parse().unwrap();
            assert_eq!(&format!("{value:.16e}"), cell);
        }
    }
}

#[test]
fn precision_option_controls_significant_digits() {
    let dir = scratch_dir("precision");
    let config = write_config(
        &dir,
        "p5.toml",
        "[deformation]\nbeta = 1.0e-6\ne_star_hz = 1.0e9\n\n[model]\nkind = \"two_level\"\ne1_hz = 5.0e9\ne2_hz = 5.1e9\n\n[output]\nprecision = 5\n",
    );
    let csv = parse_csv(&stdout_of(&run(&["deform", "--config", &config])));
    let cell = &csv.rows[0][csv.column("energy_per_s")];
    assert_eq!(cell, "3.1416e10");
}

#[test]
fn examples_subcommand_materializes_valid_configs() {
    let dir = scratch_dir("examples");
    let out_dir = dir.join("configs");
    let output = run(&["examples", "--out", out_dir.to_str().unwrap()]);
    assert!(output.status.success());
    let expected = [
        "two_level.toml",
        "two_level_evolve.toml",
        "quartic.toml",
        "frw.toml",
        "schwarzschild.toml",
        "decay_scan.toml",
        "benchmark.toml",
        "table1.toml",
        "ramsey.toml",
        "fit_demo.toml",
    ];
    for name in expected {
        let path = out_dir.join(name);
        assert!(path.exists(), "{name} missing");
        let text = fs::read_to_string(&path).unwrap();
        lsd_lab::config::RawConfig::parse(&text)
            .unwrap_or_else(|e| panic!("{name} does not parse: {e}"));
    }
}

#[test]
fn all_shipped_configs_run_green() {
    let dir = scratch_dir("shipped");
    let pairs = [
        ("deform", "two_level.toml"),
        ("evolve", "two_level_evolve.toml"),
        ("deform", "quartic.toml"),
        ("deform", "frw.toml"),
        ("deform", "schwarzschild.toml"),
        ("integrate", "decay_scan.toml"),
        ("bounds", "benchmark.toml"),
        ("bounds", "table1.toml"),
        ("bounds", "ramsey.toml"),
        ("fit", "fit_demo.toml"),
    ];
    for (command, name) in pairs {
        let out = dir.join(format!("{command}-{name}.csv"));
        let output = run(&[
            command,
            "--config",
            &shipped(name),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            output.status.success(),
            "{command} {name} failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        assert!(out.exists());
    }
}

#[test]
fn missing_config_file_exits_1() {
    let output = run(&["deform", "--config", "/nonexistent/nowhere.toml"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn bad_cli_usage_exits_1() {
    let output = run(&["deform"]); // missing --config
    assert_eq!(output.status.code(), Some(1));
    let output = run(&["no-such-command"]);
    assert_eq!(output.status.code(), Some(1));
}
