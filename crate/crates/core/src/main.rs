use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = fwps::cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.stdout.as_bytes()).and_then(|()| stdout.flush()).is_err() {
        return ExitCode::FAILURE;
    }
    ExitCode::from(outcome.code as u8)
}
