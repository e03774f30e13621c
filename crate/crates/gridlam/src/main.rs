use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gridlam::cli::dispatch(std::env::args_os()) as u8)
}
