use std::process::ExitCode;

use borsuk_ulam::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, status) = run(&cli);
    if status == 0 || status == 1 {
        println!("{}", text.trim_end());
    } else {
        eprintln!("{}", text.trim_end());
    }
    ExitCode::from(status as u8)
}
