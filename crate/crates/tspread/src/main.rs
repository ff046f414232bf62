use std::process::ExitCode;

fn main() -> ExitCode {
    tspread::cli::main_entry()
}
