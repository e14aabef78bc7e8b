use std::process::ExitCode;

fn main() -> ExitCode {
    slimrect::cli::run(std::env::args_os())
}
