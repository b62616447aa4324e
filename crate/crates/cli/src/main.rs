use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use noon_cli::args::{Cli, Command, Format, OutputArgs};
use noon_cli::table::Table;
use noon_cli::{commands, validate, CliError};

fn emit(table: &Table, out: &OutputArgs, title: &str) -> Result<(), CliError> {
    let text = match out.format {
        Format::Csv => table.to_csv(),
        Format::Svg => table.to_svg(title),
    };
    let io = |source| CliError::Io {
        path: out.output.clone(),
        source,
    };
    if out.output == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes()).map_err(io)?;
        stdout.flush().map_err(io)
    } else {
        std::fs::write(&out.output, text).map_err(io)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::PhaseError(a) => emit(&commands::phase_error_from(&a)?, &a.output, "phase error")?,
        Command::LimitSweep(a) => emit(&commands::limit_sweep_from(&a)?, &a.output, "phase error vs 1/N")?,
        Command::CompareMin(a) => emit(&commands::compare_min_from(&a)?, &a.output, "minimum phase error")?,
        Command::Breakeven(a) => emit(&commands::breakeven_from(&a)?, &a.output, "break-even transmittance")?,
        Command::Montecarlo(a) => emit(&commands::montecarlo_from(&a)?, &a.output, "shot simulation")?,
        Command::Validate(a) => {
            let report = validate::run(validate::Options {
                empirical: a.empirical,
                seed: a.seed,
                fault: a.inject_fault,
            })?;
            print!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    // clap exits with 2 on parse errors and 0 for --help / --version
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
