use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use bgdual_core::cli;

fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, contents)
}

fn main() -> ExitCode {
    let outcome = cli::run_from_args(std::env::args_os(), cli::env_output_dir());
    let mut code = outcome.code;
    for (path, contents) in &outcome.files {
        if let Err(e) = write_file(path, contents) {
            eprintln!("cannot write {}: {e}", path.display());
            code = 2;
        }
    }
    match &outcome.destination {
        Some(path) => {
            if let Err(e) = write_file(path, &outcome.rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                code = 2;
            }
        }
        None => {
            let _ = std::io::stdout().write_all(outcome.rendered.as_bytes());
        }
    }
    ExitCode::from(code as u8)
}
