use std::process::ExitCode;

fn main() -> ExitCode {
    painleve_rational::cli::main_with_args(std::env::args_os())
}
