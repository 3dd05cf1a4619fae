use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(legk::cli::run(std::env::args_os()))
}
