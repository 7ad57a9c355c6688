//! `parabolic-lab`: literal parsing, command dispatch and JSON output.

pub mod checks;
mod commands;
pub mod json;
pub mod parse;
pub mod sample;
mod verify;

use clap::{Args, Parser, Subcommand};
use parse::ParseError;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "parabolic-lab",
    version,
    about = "Ramification and periodic points of parabolic germs in positive characteristic"
)]
pub struct Cli {
    /// Write the JSON document here instead of standard output.
    #[arg(long = "json-out", global = true)]
    pub json_out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GermArgs {
    /// GF(p), GF(p,d), GF(p,d;modulus=c0,...,cd) or Laurent(GF(...)).
    #[arg(long)]
    pub field: String,
    /// Series literal such as "z + t*z^2 + z^3 mod z^20".
    #[arg(long)]
    pub series: String,
    /// Truncate the series to this many coefficients.
    #[arg(long = "N")]
    pub trunc: Option<usize>,
    /// Relative precision for Laurent inverses.
    #[arg(long)]
    pub tprec: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lower ramification numbers, their leading coefficients and the iterative residue.
    Ramify {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, default_value_t = 2)]
        nmax: u32,
    },
    /// Minimal-ramification verdicts and the value of M_q.
    Minimal {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, default_value_t = 2)]
        nmax: u32,
        /// criterion, definitional or both.
        #[arg(long, default_value = "both")]
        mode: String,
    },
    /// Conjugate to the reduced form gamma z (1 + sum a_j z^{jq}).
    Normalize {
        #[command(flatten)]
        germ: GermArgs,
    },
    /// chi, xi, the q-iterate coefficients and the l-iterate coefficients.
    ClosedForm {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: Option<u32>,
        /// a1,a2 (for --ell: the coefficients of z^2, z^3).
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Brute-force checks of closed forms, single or seeded sweeps.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Upper bound on the valuation of periodic points of minimal period q p^n.
    Bounds {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        n: u32,
    },
    /// Newton polygon of the period quotient of an exact polynomial germ.
    CycleValuations {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        n: u32,
        /// Refuse iterates of larger degree.
        #[arg(long = "max-degree", default_value_t = 4096)]
        max_degree: usize,
    },
    /// Newton polygon of a polynomial over a Laurent field.
    Newton {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        tprec: Option<i64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Seed for random sweeps; required when no explicit input is given.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random cases per configuration.
    #[arg(long, default_value_t = 50)]
    pub cases: usize,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// g^{q p^n} against z (1 + chi z^E + xi z^{E+q}), plus the q-iterate formula.
    MainLemma {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long = "N")]
        trunc: Option<usize>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// pi ∘ g^m against ghat^m ∘ pi with pi(z) = z^q.
    Semiconj {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long = "N")]
        trunc: Option<usize>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Delta_p against f^p - z.
    DeltaTower {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        series: Option<String>,
        #[arg(long = "N")]
        trunc: Option<usize>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Ramification data of h^{-1} ∘ f ∘ h against those of f.
    QuasiInvariance {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        series: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = 1)]
        nmax: u32,
        #[arg(long = "N")]
        trunc: Option<usize>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

/// Failures that map to exit code 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse {
        flag: &'static str,
        input: String,
        err: ParseError,
    },
    Core(parabolic_core::error::Error),
}

impl From<parabolic_core::error::Error> for CliError {
    fn from(e: parabolic_core::error::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Parse { flag, input, err } => write!(f, "--{flag}: {}", err.render(input)),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// A finished command: the JSON document (if any), diagnostics and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub json_out: Option<PathBuf>,
    pub json: Option<String>,
    pub stderr: String,
}

/// Command result before rendering: the document and whether every check passed.
pub(crate) struct Report {
    pub doc: serde_json::Value,
    pub pass: bool,
}

impl Report {
    pub fn ok(doc: serde_json::Value) -> Self {
        Report { doc, pass: true }
    }
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                json_out: None,
                json: None,
                stderr: e.render().to_string(),
            };
        }
    };
    finish(dispatch(&cli.command), cli.json_out)
}

fn finish(result: Result<Report, CliError>, json_out: Option<PathBuf>) -> Outcome {
    match result {
        Ok(report) => {
            let mut text =
                serde_json::to_string_pretty(&report.doc).expect("JSON values serialize");
            text.push('\n');
            Outcome {
                code: if report.pass { 0 } else { 1 },
                json_out,
                json: Some(text),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            json_out: None,
            json: None,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Verify { which } => verify::run(which),
        other => commands::run(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exit_codes() {
        let ok = finish(Ok(Report::ok(json!({"pass": true}))), None);
        assert_eq!(
            (ok.code, ok.json.as_deref()),
            (0, Some("{\n  \"pass\": true\n}\n"))
        );
        let failed = finish(
            Ok(Report {
                doc: json!({"pass": false}),
                pass: false,
            }),
            None,
        );
        assert_eq!(failed.code, 1);
        assert!(failed.json.is_some());
        let bad = finish(Err(CliError::Usage("nope".into())), None);
        assert_eq!(
            (bad.code, bad.json, bad.stderr.as_str()),
            (2, None, "error: nope\n")
        );
    }

    #[test]
    fn help_is_not_an_error() {
        let out = run(["parabolic-lab", "--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stderr.contains("ramify"));
        assert_eq!(run(["parabolic-lab", "ramify"]).code, 2);
    }
}
