mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};
use output::{Report, RunEnvelope};

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("LOGGAS_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("LOGGAS_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn dispatch(command: &Command) -> CliResult<(&'static str, std::collections::BTreeMap<String, String>, Report)> {
    use commands::*;
    Ok(match command {
        Command::Zeros(a) => ("zeros", params_of(a), zeros(a)?),
        Command::Equilibrium(a) => ("equilibrium", params_of(a), equilibrium(a)?),
        Command::QhjSpectrum(a) => ("qhj-spectrum", params_of(a), qhj_spectrum(a)?),
        Command::Quantize(a) => ("quantize", params_of(a), quantize(a)?),
        Command::Susy(a) => ("susy", params_of(a), susy(a)?),
        Command::Sample(a) => ("sample", params_of(a), sample(a)?),
        Command::SemicircleTest(a) => ("semicircle-test", params_of(a), semicircle_test(a)?),
        Command::Mcmc(a) => ("mcmc", params_of(a), mcmc(a)?),
        Command::Dyson(a) => ("dyson", params_of(a), dyson(a)?),
        Command::Jpdf(a) => ("jpdf", params_of(a), jpdf(a)?),
        Command::Xlag(a) => ("xlag", params_of(a), xlag(a)?),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    let start = Instant::now();
    let (name, params, mut report) = dispatch(&cli.command)?;
    if cli.timing {
        report
            .diagnostics
            .insert("wall_time_s".into(), start.elapsed().as_secs_f64().into());
    }
    let text = if cli.json {
        RunEnvelope::new(name, params, &report).to_text()
    } else {
        report.table.to_csv()
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    match report.convergence_failure {
        Some(msg) => Err(CliError::Convergence(msg)),
        None => Ok(()),
    }
}

fn fail(e: &CliError) -> ExitCode {
    let msg = e.to_string().replace('\n', " ");
    eprintln!("error: {}: {}", e.code(), msg.trim());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            return fail(&CliError::Usage(first.trim_start_matches("error: ").to_string()));
        }
    };
    panic::set_hook(Box::new(|_| {}));
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => fail(&e),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unexpected panic".into());
            fail(&CliError::Internal(msg))
        }
    }
}
