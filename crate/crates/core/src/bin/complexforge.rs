use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = complexforge::cli::run(std::env::args_os());
    let out = result.output();
    let code = result.exit_code;
    if matches!(code, 0 | 2 | 3) {
        let _ = std::io::stdout().write_all(out.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
