use std::process::ExitCode;

fn main() -> ExitCode {
    qrmix::cli::main()
}
