use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use triangle_finsler::cli::{run, Cli};
use triangle_finsler::Error;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut err = std::io::stderr();
    let result = run(&cli, &mut out, &mut err);
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("trifin: checks failed");
            ExitCode::from(1)
        }
        Err(e @ (Error::InvalidPresentation(..) | Error::InvalidWord(_) | Error::InvalidParameter(_))) => {
            eprintln!("trifin: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("trifin: {e}");
            ExitCode::from(1)
        }
    }
}
