use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use skorodist::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let budget = std::env::var("SKORODIST_BUDGET").ok();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, budget.as_deref(), &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("skorodist: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
