use std::process::ExitCode;

fn main() -> ExitCode {
    qudit_surgery::commands::main_with(std::env::args_os())
}
