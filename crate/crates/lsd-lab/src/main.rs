//! `lsd-lab`: config-driven laboratory for logarithmic spectral deformations.
//!
//! Every experiment is one subcommand reading a strict TOML config and
//! emitting machine-readable records:
//!
//! ```text
//! lsd-lab <deform|evolve|integrate|bounds|fit|examples>
//!         --config <path> [--format csv|json] [--out <path>] [--seed <u64>]
//! ```
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical-failure
//! diagnostics.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lsd_lab::config::RawConfig;
use lsd_lab::errors::{validation, CliResult};
use lsd_lab::output::Table;
use lsd_lab::{commands, output, EXAMPLE_CONFIGS};

#[derive(Debug, Parser)]
#[command(
    name = "lsd-lab",
    version,
    about = "Numerical laboratory for logarithmic spectral deformations of quantum Hamiltonians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Path to the TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output format; overrides `output.format` (default csv).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; overrides `output.path` (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// RNG seed; overrides `trace.synthetic.seed`.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate E_n, G(E_n), F_beta(E_n) for the configured spectrum.
    Deform(RunArgs),
    /// Time series of an off-diagonal density-matrix element.
    Evolve(RunArgs),
    /// Interference integral I_beta(t) over a beta grid with the decay fit.
    Integrate(RunArgs),
    /// Platform bounds on |beta| and the Ramsey-protocol bound.
    Bounds(RunArgs),
    /// Fit the residual coherence envelope, recovering Gamma and beta.
    Fit(RunArgs),
    /// Write the bundled example configs to a directory.
    Examples {
        /// Target directory for the example configs.
        #[arg(long, default_value = "lsd-lab-examples")]
        out: PathBuf,
    },
}

fn resolve_format(args: &RunArgs, cfg: &RawConfig) -> CliResult<Format> {
    if let Some(f) = args.format {
        return Ok(f);
    }
    match cfg.output.as_ref().and_then(|o| o.format.as_deref()) {
        None => Ok(Format::Csv),
        Some("csv") => Ok(Format::Csv),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(validation(format!(
            "unknown output.format `{other}`; expected csv or json"
        ))),
    }
}

fn resolve_precision(cfg: &RawConfig) -> CliResult<usize> {
    match cfg.output.as_ref().and_then(|o| o.precision) {
        None => Ok(17),
        Some(p) if (1..=17).contains(&p) => Ok(p),
        Some(p) => Err(validation(format!(
            "output.precision must lie in 1..=17, got {p}"
        ))),
    }
}

fn run_command(
    args: &RunArgs,
    build: impl FnOnce(&RawConfig) -> CliResult<Table>,
) -> CliResult<()> {
    let text = fs::read_to_string(&args.config).map_err(|e| {
        validation(format!(
            "cannot read config `{}`: {e}",
            args.config.display()
        ))
    })?;
    let cfg = RawConfig::parse(&text)?;
    let format = resolve_format(args, &cfg)?;
    let precision = resolve_precision(&cfg)?;
    let out_path = args.out.clone().or_else(|| {
        cfg.output
            .as_ref()
            .and_then(|o| o.path.clone().map(PathBuf::from))
    });

    // Compute fully before touching the filesystem.
    let table = build(&cfg)?;
    let rendered = match format {
        Format::Csv => output::to_csv(&table, precision),
        Format::Json => output::to_json(&table),
    };
    match out_path {
        Some(path) => {
            fs::write(&path, rendered).map_err(|e| {
                validation(format!("cannot write output `{}`: {e}", path.display()))
            })?;
            eprintln!("{} data rows -> {}", table.rows.len(), path.display());
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(rendered.as_bytes()) {
                // A closed pipe (e.g. | head) is not an error.
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(validation(format!("cannot write to stdout: {e}")));
                }
            }
        }
    }
    Ok(())
}

fn write_examples(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir)
        .map_err(|e| validation(format!("cannot create `{}`: {e}", dir.display())))?;
    for (name, contents) in EXAMPLE_CONFIGS {
        let path = dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| validation(format!("cannot write `{}`: {e}", path.display())))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Deform(args) => run_command(&args, commands::cmd_deform),
        Command::Evolve(args) => run_command(&args, commands::cmd_evolve),
        Command::Integrate(args) => run_command(&args, commands::cmd_integrate),
        Command::Bounds(args) => run_command(&args, commands::cmd_bounds),
        Command::Fit(args) => {
            let seed = args.seed;
            run_command(&args, |cfg| commands::cmd_fit(cfg, seed))
        }
        Command::Examples { out } => write_examples(&out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1, // bad usage is a validation error
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
