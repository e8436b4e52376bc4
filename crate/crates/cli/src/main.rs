use std::process::ExitCode;

fn main() -> ExitCode {
    kaleido_cli::cli::run(std::env::args_os(), &mut std::io::stdout().lock())
}
