use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ordforge::dsl::parse;
use ordforge::report::Report;
use ordforge::runner::run;
use ordforge::suite::{run_suite, SuiteConfig, SUITES};

/// Runs ordforge scripts and invariant suites.
#[derive(Parser, Debug)]
#[command(name = "ordforge", version)]
struct Cli {
    /// Script to run (`-` reads standard input).
    file: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Exhaustion bound for suites.
    #[arg(long, default_value_t = 3)]
    size: usize,
    /// Seed for randomized instance generation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run an invariant suite after the script.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: Option<String>,
    /// Largest carrier a declared model may have.
    #[arg(long, env = "ORDFORGE_MAX_CARRIER", default_value_t = 128)]
    max_carrier: usize,
}

fn read_source(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = SuiteConfig {
        size: cli.size,
        seed: cli.seed,
        max_carrier: cli.max_carrier,
    };
    let mut entries = Vec::new();
    if let Some(path) = &cli.file {
        let src = match read_source(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        let script = match parse(&src) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{}:{e}", path.display());
                return ExitCode::from(2);
            }
        };
        entries.extend(run(&script, &cfg).entries);
    }
    if let Some(name) = &cli.suite {
        match run_suite(name, &cfg) {
            Ok(es) => entries.extend(es),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let report = Report::new(entries);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_hold() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
