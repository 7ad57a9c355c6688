use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = parabolic_lab::run(std::env::args_os());
    if out.code == 0 && out.json.is_none() {
        // --help and --version
        print!("{}", out.stderr);
    } else {
        eprint!("{}", out.stderr);
    }
    if let Some(doc) = &out.json {
        match &out.json_out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, doc) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => {
                let _ = std::io::stdout().write_all(doc.as_bytes());
            }
        }
    }
    ExitCode::from(out.code as u8)
}
