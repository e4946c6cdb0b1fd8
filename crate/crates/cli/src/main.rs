use std::process::ExitCode;

use clap::Parser;

use polarmap_cli::{cmd_analyze, cmd_eval, cmd_replicate, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Replicate { rules } => cmd_replicate(rules.as_ref()),
    }
}
