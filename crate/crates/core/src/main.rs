//! `dgab` — convergence studies for the DG / Adams–Bashforth solver.
//!
//! Exit codes: 0 success, 1 validation error, 2 solver blow-up in any cell.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dgab::flux::flux_registry;
use dgab::harness::{emit_csv, parse_key_values, preset, render_table, run_study, StudyConfig, PRESETS};
use dgab::problems::problem_registry;
use dgab::timestep::scheme_registry;
use dgab::Error;

#[derive(Parser)]
#[command(name = "dgab", version, about = "DG + Adams-Bashforth convergence studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a space or time refinement study.
    Converge(Box<ConvergeArgs>),
    /// Run one of the pinned published studies.
    Preset {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Forward-Euler substeps for the AB2 start.
        #[arg(long)]
        substeps: Option<usize>,
    },
    /// List registered problems, schemes, fluxes and presets.
    List,
}

#[derive(Args)]
struct ConvergeArgs {
    /// key=value file mirroring the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated polynomial degrees.
    #[arg(long)]
    degrees: Option<String>,
    /// Comma-separated h (space) or dt (time) values, strictly decreasing.
    #[arg(long)]
    resolutions: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long = "final-time")]
    final_time: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    bc: Option<String>,
    #[arg(long)]
    flux: Option<String>,
    #[arg(long)]
    substeps: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ConvergeArgs {
    fn into_config(self) -> Result<StudyConfig, Error> {
        let mut settings = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_key_values(&text)?
            }
            None => BTreeMap::new(),
        };
        let flags = [
            ("problem", self.problem),
            ("mode", self.mode),
            ("degrees", self.degrees),
            ("resolutions", self.resolutions),
            ("dt", self.dt),
            ("h", self.h),
            ("steps", self.steps),
            ("final-time", self.final_time),
            ("scheme", self.scheme),
            ("bc", self.bc),
            ("flux", self.flux),
            ("substeps", self.substeps),
            ("out", self.out.map(|p| p.display().to_string())),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                settings.insert(key.to_string(), v);
            }
        }
        StudyConfig::from_settings(&settings)
    }
}

fn list() {
    let problems = problem_registry();
    let schemes = scheme_registry();
    let fluxes = flux_registry();
    println!("problems:");
    for (n, s) in problems.describe() {
        println!("  {n:<24} {s}");
    }
    println!("schemes:");
    for (n, s) in schemes.describe() {
        println!("  {n:<24} {s}");
    }
    println!("fluxes:");
    for (n, s) in fluxes.describe() {
        println!("  {n:<24} {s}");
    }
    println!("presets:");
    for (n, s) in PRESETS {
        println!("  {n:<24} {s}");
    }
}

fn run(cfg: StudyConfig) -> Result<bool, Error> {
    let table = run_study(&cfg)?;
    print!("{}", render_table(&table, cfg.mode().resolution_label()));
    if let Some(path) = &cfg.output {
        emit_csv(&table, path)?;
    }
    for g in &table.groups {
        for r in g.rows.iter().filter(|r| r.is_failed()) {
            eprintln!(
                "k={} resolution={:e}: {}",
                g.degree,
                r.resolution,
                r.failure.as_deref().unwrap_or("")
            );
        }
    }
    Ok(table.has_failures())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match cli.command {
        Command::List => {
            list();
            return ExitCode::SUCCESS;
        }
        Command::Converge(args) => args.into_config(),
        Command::Preset { name, out, substeps } => preset(&name).map(|mut cfg| {
            cfg.output = out;
            if substeps.is_some() {
                cfg.ab2_substeps = substeps;
            }
            cfg
        }),
    };
    let outcome = config.and_then(|cfg| {
        cfg.validate()?;
        run(cfg)
    });
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
