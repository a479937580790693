//! Command-line front end.  Exit codes: 0 — run complete and all verdicts
//! pass; 1 — operational problem (bad config, IO, or an errored diagnostic);
//! 2 — the run completed but a ledger row failed or boundedness was refuted.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hausdorff_cli::config::ExperimentConfig;
use hausdorff_cli::demo::{demo_config, DEMO_NAMES};
use hausdorff_cli::report::{self, OutputFormat, RunArtifacts};
use hausdorff_cli::runner::run_experiment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Both,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Both => OutputFormat::Both,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "hausdorff-lab",
    about = "Numerical laboratory for measure-weighted dilation averages",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a config file.
    Run {
        /// Path to the JSON config.
        #[arg(long)]
        config: PathBuf,
        /// Directory for report and CSV artifacts (also echoes the
        /// effective config for exact replay).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Both)]
        format: FormatArg,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse and validate a config without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a built-in example (see --list).
    Demo {
        /// Demo name.
        name: Option<String>,
        /// List available demos.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Both)]
        format: FormatArg,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            format,
            seed,
        } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| anyhow::anyhow!("reading {}: {e}", config.display()))?;
            let mut cfg = ExperimentConfig::from_json(&text)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            execute(cfg, out, format.into())
        }
        Command::Validate { config } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| anyhow::anyhow!("reading {}: {e}", config.display()))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            cfg.build()?;
            println!("ok: {}", cfg.label);
            Ok(ExitCode::SUCCESS)
        }
        Command::Demo {
            name,
            list,
            out,
            format,
            seed,
        } => {
            if list || name.is_none() {
                for name in DEMO_NAMES {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let name = name.expect("checked above");
            let mut cfg = demo_config(&name)
                .ok_or_else(|| anyhow::anyhow!("unknown demo '{name}' (try --list)"))?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            execute(cfg, out, format.into())
        }
    }
}

fn execute(
    cfg: ExperimentConfig,
    out: Option<PathBuf>,
    format: OutputFormat,
) -> anyhow::Result<ExitCode> {
    let artifacts: RunArtifacts = run_experiment(&cfg)?;
    if let Some(dir) = &out {
        report::write_artifacts(dir, &cfg, &artifacts, format)?;
    }
    for line in report::summary_lines(&artifacts.report) {
        println!("{line}");
    }
    if let Some(dir) = &out {
        println!("artifacts: {}", dir.display());
    }
    Ok(if artifacts.report.gate_failed {
        ExitCode::from(2)
    } else if !artifacts.report.failures.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
