use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use relcone_cli::{configure_threads, execute, render, Invocation};

fn main() -> ExitCode {
    let inv = Invocation::parse();
    if let Err(e) = configure_threads() {
        eprintln!("relcone: {e}");
        print!("{}", render(&e.to_json()));
        return ExitCode::from(1);
    }
    let run = execute(&inv);
    if let Some(e) = &run.error {
        eprintln!("relcone {}: {e}", inv.verb);
    }
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().lock().write_all(run.stdout.as_bytes());
    ExitCode::from(run.code as u8)
}
