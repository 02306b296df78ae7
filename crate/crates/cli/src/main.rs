use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = schur_cli::run_args(std::env::args_os());
    if code == schur_cli::EXIT_CONFIG {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    ExitCode::from(code as u8)
}
