use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(expcomp_cli::run(std::env::args_os().collect()))
}
