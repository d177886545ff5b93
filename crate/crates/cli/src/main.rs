use std::io;
use std::process::ExitCode;

use ucr_cli::config::Settings;

fn main() -> ExitCode {
    let settings = match Settings::from_env() {
        Ok(s) => s,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.exit_code() as u8);
        }
    };
    let code = ucr_cli::run(std::env::args_os(), &settings, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
