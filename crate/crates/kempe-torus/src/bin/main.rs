use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kempe_torus::cli::run(std::env::args()) as u8)
}
