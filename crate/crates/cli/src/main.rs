use std::process::ExitCode;

use logjet_cli::{parse_flags, run, EXIT_PASS, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match parse_flags(std::env::args_os()) {
        Ok(c) => c,
        Err(e) if e.is_informational() => {
            print!("{e}");
            return ExitCode::from(EXIT_PASS as u8);
        }
        Err(e) => {
            eprintln!("logjet: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("logjet: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let text = outcome.to_json();
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("logjet: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => println!("{text}"),
    }
    let report = &outcome.report;
    eprintln!(
        "logjet: {} suite(s), {} failure(s), {} inconsistenc{}",
        report.suites.len(),
        report.failure_count(),
        report.inconsistency_count(),
        if report.inconsistency_count() == 1 {
            "y"
        } else {
            "ies"
        }
    );
    ExitCode::from(report.exit_code() as u8)
}
