//! Library surface of the `lsd-lab` command-line laboratory: the strict
//! config schema, the subcommand implementations, and the CSV/JSON record
//! writers. The binary in `main.rs` is a thin clap wrapper over these.

pub mod commands;
pub mod config;
pub mod errors;
pub mod output;

/// The example configs bundled into the binary and materialized by
/// `lsd-lab examples`.
pub const EXAMPLE_CONFIGS: &[(&str, &str)] = &[
    ("two_level.toml", include_str!("../configs/two_level.toml")),
    (
        "two_level_evolve.toml",
        include_str!("../configs/two_level_evolve.toml"),
    ),
    ("quartic.toml", include_str!("../configs/quartic.toml")),
    ("frw.toml", include_str!("../configs/frw.toml")),
    (
        "schwarzschild.toml",
        include_str!("../configs/schwarzschild.toml"),
    ),
    (
        "decay_scan.toml",
        include_str!("../configs/decay_scan.toml"),
    ),
    ("benchmark.toml", include_str!("../configs/benchmark.toml")),
    ("table1.toml", include_str!("../configs/table1.toml")),
    ("ramsey.toml", include_str!("../configs/ramsey.toml")),
    ("fit_demo.toml", include_str!("../configs/fit_demo.toml")),
];
