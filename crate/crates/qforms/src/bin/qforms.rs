use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qforms::cli::run(std::env::args()) as u8)
}
