use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hklab_cli::commands::error_report;
use hklab_cli::{run, Cli, Report};

fn emit(cli: &Cli, report: &Report) -> std::io::Result<()> {
    let text = if cli.csv { report.to_csv() } else { report.to_json() };
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match run(&cli) {
        Ok(report) => {
            let code = if report.has_failure() { 1 } else { 0 };
            (report, code)
        }
        Err(err) => {
            eprintln!("hk-lab: {err}");
            (error_report(cli.command.name(), &err), err.exit_code())
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("hk-lab: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
