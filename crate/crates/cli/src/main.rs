use std::process::ExitCode;

use clap::Parser;
use madlie_cli::{execute, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let (code, text) = execute(&args);
    match &args.out {
        Some(path) if code == 0 => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("madlie: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        _ => print!("{text}"),
    }
    if code != 0 {
        eprintln!("madlie: {} failed with exit code {code}", args.command.name());
    }
    ExitCode::from(code as u8)
}
