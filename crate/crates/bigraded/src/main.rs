use std::process::ExitCode;

fn main() -> ExitCode {
    bigraded::cli::main()
}
