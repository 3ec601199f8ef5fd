mod args;
mod commands;
mod inputs;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use report::{to_json, ErrorBody, ErrorReport};

pub enum Failure {
    Usage(String),
    Lib(quatfn::Error),
}

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_NOT_CONVERGED: u8 = 4;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QR_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("QR_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let args: Vec<String> = argv.into_iter().skip(1).collect();
    let name = cli.command.name().to_string();

    match commands::run(&cli.command, cli.soft) {
        Ok(out) => {
            let not_converged = out.estimate.as_ref().is_some_and(|e| !e.converged);
            if cli.format == Format::Csv {
                match &out.estimate {
                    Some(est) => print!("{}", est.to_csv()),
                    None => {
                        eprintln!("error: --format csv is only available for residue, pv and oracle-1d");
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
            } else {
                print!("{}", to_json(&out.into_report(args)));
            }
            if cli.strict && not_converged {
                eprintln!("error: the epsilon sequence did not converge");
                return ExitCode::from(EXIT_NOT_CONVERGED);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            let code = if e.is_domain_error() { EXIT_DOMAIN } else { EXIT_USAGE };
            eprintln!("error: {e}");
            if code == EXIT_DOMAIN {
                let report = ErrorReport {
                    command: name,
                    args,
                    error: ErrorBody {
                        kind: e.kind().to_string(),
                        message: e.to_string(),
                    },
                };
                print!("{}", to_json(&report));
            }
            ExitCode::from(code)
        }
    }
}
