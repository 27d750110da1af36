use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use toric_kring::{run, CliError, Command, Request};

/// Equivariant K-rings of toric varieties from fans.
///
/// FAN, CLASS and BASIS accept a JSON file path or the name of a built-in
/// fixture (ex36, rem37, ex38, ex6, ex6_f1 .. ex6_f5, ex6_paper_basis).
#[derive(Parser, Debug)]
#[command(name = "toric-kring", version, about)]
struct Args {
    /// What to compute.
    #[arg(value_enum)]
    command: Command,

    /// Fan document.
    #[arg(long)]
    fan: String,

    /// Generic vector, comma separated; overrides the fan document's `v`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    v: Option<Vec<i64>>,

    /// Class document (plp, coords).
    #[arg(long)]
    class: Option<String>,

    /// Basis document to expand in instead of the constructed basis (coords).
    #[arg(long)]
    basis: Option<String>,

    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let req = Request {
        command: args.command,
        fan: args.fan,
        v: args.v,
        class: args.class,
        basis: args.basis,
    };
    let outcome = match run(&req) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let text = outcome.document.to_json();
    let written = match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    };
    if let Err(e) = written {
        return fail(&e);
    }
    ExitCode::from(outcome.exit_code as u8)
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
