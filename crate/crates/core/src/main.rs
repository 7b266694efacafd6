use std::process::ExitCode;

fn main() -> ExitCode {
    unfriendly::cli::main()
}
