//! Command-line front end for the polarity-map pipeline.
//!
//! Exit codes: 0 on success, 1 when a replication check fails, 2 on
//! configuration or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polarmap_core::pipeline::{write_output, Pipeline, RunConfig};
use polarmap_core::replicate;

pub const EXIT_GOLDEN_FAILURE: u8 = 1;
pub const EXIT_CONFIG_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "polarmap",
    about = "Feature-level sentiment polarity maps for city and transportation reviews",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct RunArgs {
    /// Run configuration file (`key = value` lines).
    #[arg(long)]
    pub config: PathBuf,
    /// Restrict the run to one city (overrides the config value).
    #[arg(long)]
    pub city: Option<String>,
    /// Directory for output files (overrides the config value).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Pin the generated_at timestamp (ISO 8601) for reproducible output.
    #[arg(long)]
    pub fixed_clock: Option<String>,
    /// Worker threads for per-document stages (0 = all cores).
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the full pipeline and emit the polarity map.
    Analyze(RunArgs),
    /// Evaluate predictions against the corpus gold labels.
    Eval(RunArgs),
    /// Re-check the built-in worked examples.
    Replicate {
        /// Alternative replication rule file (defaults to the embedded one).
        #[arg(long)]
        rules: Option<PathBuf>,
    },
}

fn load_pipeline(args: &RunArgs) -> Result<Pipeline, String> {
    let mut config = RunConfig::load(&args.config).map_err(|e| e.to_string())?;
    if let Some(city) = &args.city {
        config.city = Some(city.clone());
    }
    if let Some(out) = &args.out {
        config.out_dir = Some(out.clone());
    }
    Pipeline::load(config).map_err(|e| e.to_string())
}

pub fn cmd_analyze(args: &RunArgs) -> ExitCode {
    let pipeline = match load_pipeline(args) {
        Ok(p) => p,
        Err(message) => return config_error(&message),
    };
    let result = match pipeline.analyze(args.jobs, args.fixed_clock.as_deref()) {
        Ok(r) => r,
        Err(e) => return config_error(&e.to_string()),
    };
    let json = result.map.to_json();
    print!("{json}");
    eprintln!(
        "analyzed {} documents, {} features, {} derived facts",
        result.documents_analyzed,
        result.map.features.len(),
        result.derived_facts.len()
    );
    if let Some(dir) = &pipeline.config.out_dir {
        if let Err(e) = write_output(dir, "polarity_map.json", &json) {
            return config_error(&e.to_string());
        }
        let text = result.map.to_text(pipeline.config.precision);
        if let Err(e) = write_output(dir, "polarity_map.txt", &text) {
            return config_error(&e.to_string());
        }
    }
    ExitCode::SUCCESS
}

pub fn cmd_eval(args: &RunArgs) -> ExitCode {
    let pipeline = match load_pipeline(args) {
        Ok(p) => p,
        Err(message) => return config_error(&message),
    };
    let report = match pipeline.evaluate(args.jobs) {
        Ok(r) => r,
        Err(e) => return config_error(&e.to_string()),
    };
    let decimals = pipeline.config.precision;
    print!("{}", report.to_table(decimals));
    if let Some(dir) = &pipeline.config.out_dir {
        if let Err(e) = write_output(dir, "metrics.csv", &report.to_csv(decimals)) {
            return config_error(&e.to_string());
        }
        if let Err(e) = write_output(dir, "metrics.txt", &report.to_table(decimals)) {
            return config_error(&e.to_string());
        }
    }
    ExitCode::SUCCESS
}

pub fn cmd_replicate(rules: Option<&PathBuf>) -> ExitCode {
    let report = match rules {
        None => replicate::run(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return config_error(&format!("cannot read {}: {e}", path.display())),
            };
            match replicate::run_with_rules(&text) {
                Ok(r) => r,
                Err(message) => return config_error(&message),
            }
        }
    };
    print!("{}", report.render());
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_GOLDEN_FAILURE)
    }
}

fn config_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_CONFIG_ERROR)
}
