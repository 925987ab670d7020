use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use autoloc::compute::compute;
use autoloc::suites::{run_suite, CheckConfig, SUITES};
use autoloc::CliError;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "autoloc", version, about = "Exact local automorphic computations and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "instances", default_value_t = 100)]
        instance_count: usize,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        report: Format,
    },
    /// Evaluate one JSON request read from stdin or a file.
    Compute {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// List the registered suites.
    Suites,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Check { suite, max_degree, seed, instance_count, primes, report } => {
            let rep = run_suite(&CheckConfig { suite, max_degree, seed, instance_count, primes })?;
            match report {
                Format::Json => println!("{}", rep.to_json()),
                Format::Text => print!("{}", rep.to_text()),
            }
            Ok(rep.all_pass())
        }
        Command::Compute { input } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(path)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let request: serde_json::Value = serde_json::from_str(&text)?;
            let response = compute(&request)?;
            println!("{}", serde_json::to_string_pretty(&response)?);
            Ok(true)
        }
        Command::Suites => {
            for s in SUITES {
                println!("{:<20} {}", s.name, s.description);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            if let CliError::UnknownSuite(_) = e {
                let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
                eprintln!("available suites: {}", names.join(", "));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
