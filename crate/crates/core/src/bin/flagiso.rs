use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = std::panic::catch_unwind(|| {
        let stdout = std::io::stdout();
        let stderr = std::io::stderr();
        flagiso::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
    });
    let code = result.unwrap_or_else(|_| {
        let _ = writeln!(std::io::stderr(), "internal error: unexpected panic");
        1
    });
    std::io::stdout().flush().ok();
    ExitCode::from(code as u8)
}
