use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ddflux::{io, parse_config, preset, refinement_study, run, RunError, Scenario, PRESETS};
use ddflux_core::CflMode;

#[derive(Parser)]
#[command(
    name = "ddflux",
    version,
    about = "Regularized schemes for conservation laws with discontinuous coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its CSV files.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Show the shipped presets.
    Preset {
        #[arg(long)]
        list: bool,
        /// Print the full configuration of one preset.
        name: Option<String>,
    },
    /// Run a scenario at several resolutions and compare the profiles.
    Refine {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
        resolutions: Vec<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn load(path: &Path) -> Result<Scenario, RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.into(),
        source,
    })?;
    let mut s = parse_config(&text)?;
    for w in s.warnings() {
        eprintln!("warning: {w}");
    }
    if std::env::var("DDFLUX_STRICT_CFL").is_ok_and(|v| v == "1") {
        s.cfl_mode = CflMode::Strict;
    }
    Ok(s)
}

fn execute(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Run { config, out } => {
            let s = load(&config)?;
            let report = run(&s)?;
            io::emit_run(&report, &out, &s.name)?;
            println!(
                "{}: {} steps, dt={} ({}), {} plateaus, {:.2}s",
                s.name,
                report.steps,
                report.dt,
                report.cfl.active.as_str(),
                report.plateaus.len(),
                report.wall_clock.as_secs_f64()
            );
        }
        Command::Preset { list, name } => match name {
            Some(name) => match preset(&name) {
                Some(s) => print!("{}", ddflux::render_config(&s)),
                None => {
                    return Err(ddflux::ConfigError::Validation(format!(
                        "unknown preset `{name}`"
                    ))
                    .into());
                }
            },
            None => {
                let _ = list;
                for name in PRESETS {
                    println!("{name}");
                }
            }
        },
        Command::Refine {
            config,
            resolutions,
            out,
        } => {
            let s = load(&config)?;
            let study = refinement_study(&s, &resolutions)?;
            io::emit_refinement(&study, &out, &s.name)?;
            for (c, f, d) in &study.differences {
                println!("{c} -> {f}: {d}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
