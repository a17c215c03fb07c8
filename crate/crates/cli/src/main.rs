use std::process::ExitCode;

use clap::Parser;
use plfocal_cli::{run, Cli, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Property(w) => eprintln!("property failed: {w}"),
                Failure::Input(e) => eprintln!("error: {e:#}"),
            }
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
