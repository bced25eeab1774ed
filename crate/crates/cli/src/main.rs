//! `pfaff`: command-line front end for Pfaffian resolutions.

mod commands;
mod input;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pfaffian_core::{Fp, GF101, GF2, GF3, GF32003, QQ};
use serde_json::{json, Value};

use commands::{Command, Options, Report};
use input::{InputError, RingSpec};

#[derive(Parser, Debug)]
#[command(name = "pfaff", version, about = "Pfaffian resolutions of codimension-3 subschemes")]
struct Cli {
    command: Command,
    /// Job file (JSON); reads stdin when absent or `-`.
    file: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Seed for `random-skew`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coefficient characteristic, overriding the job file.
    #[arg(long = "char")]
    characteristic: Option<u64>,
    /// Lower end of the twist window.
    #[arg(long, allow_hyphen_values = true)]
    tmin: Option<i64>,
    /// Upper end of the twist window.
    #[arg(long, allow_hyphen_values = true)]
    tmax: Option<i64>,
    /// Maximum number of syzygy steps for `resolve`.
    #[arg(long)]
    length_bound: Option<usize>,
    /// `pf`: compute the signed sub-Pfaffians of an odd-size matrix.
    #[arg(long)]
    sub: bool,
}

fn read_job(path: Option<&PathBuf>) -> Result<Value, InputError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| InputError::new("", format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| InputError::new("", format!("stdin: {e}")))?;
        }
    }
    serde_json::from_str(&text).map_err(|e| InputError::new("", format!("invalid JSON: {e}")))
}

fn dispatch(cli: &Cli, doc: &Value, spec: &RingSpec, opts: &Options) -> Result<Report, InputError> {
    let cmd = cli.command;
    match spec.characteristic {
        0 => commands::run::<QQ>(cmd, doc, spec, opts),
        2 => commands::run::<GF2>(cmd, doc, spec, opts),
        3 => commands::run::<GF3>(cmd, doc, spec, opts),
        5 => commands::run::<Fp<5>>(cmd, doc, spec, opts),
        7 => commands::run::<Fp<7>>(cmd, doc, spec, opts),
        11 => commands::run::<Fp<11>>(cmd, doc, spec, opts),
        13 => commands::run::<Fp<13>>(cmd, doc, spec, opts),
        101 => commands::run::<GF101>(cmd, doc, spec, opts),
        32003 => commands::run::<GF32003>(cmd, doc, spec, opts),
        p => Err(InputError::new(
            "/ring/char",
            format!("unsupported characteristic {p}; supported: 0, 2, 3, 5, 7, 11, 13, 101, 32003"),
        )),
    }
}

fn job(cli: &Cli) -> Result<Report, InputError> {
    let doc = read_job(cli.file.as_ref())?;
    let mut spec = RingSpec::parse(&doc)?;
    if let Some(p) = cli.characteristic {
        spec.characteristic = p;
    }
    let opts = Options {
        seed: cli.seed,
        tmin: cli.tmin,
        tmax: cli.tmax,
        length_bound: cli.length_bound,
        sub: cli.sub,
    };
    dispatch(cli, &doc, &spec, &opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match job(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                let err = json!({"error": e.message, "path": e.path});
                println!("{}", serde_json::to_string_pretty(&err).expect("errors serialize"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
