use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torskur::report::{Report, Status};

mod eval;
mod suites;

#[derive(Parser)]
#[command(name = "torskur", version, about = "Exact computations with Schur and KLR algebras on polynomial rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply an operator word to a polynomial given as JSON
    Eval {
        /// read the request from this file instead of stdin
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run one verification suite
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        /// dimension vector as `a,b`
        #[arg(long, value_parser = parse_alpha)]
        alpha: Option<(usize, usize)>,
        /// cohomological degree bound (twice the polynomial weight)
        #[arg(long)]
        deg: Option<usize>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every suite and emit one combined report
    ReportAll {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_alpha(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn emit(r: &Report, out: Option<PathBuf>) -> ExitCode {
    let text = r.to_json();
    let _ = writeln!(std::io::stdout(), "{text}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    match r.status() {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => {
            if let Some(c) = r.first_failure() {
                eprintln!("FAIL {}: {}", c.id, c.witness.as_deref().unwrap_or(""));
            }
            ExitCode::from(1)
        }
        Status::Inconclusive => ExitCode::from(4),
    }
}

fn main() -> ExitCode {
    if let Some(t) = std::env::var("TORSKUR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match Cli::parse().cmd {
        Cmd::Eval { input } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display())),
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| e.to_string())
                }
            };
            let text = match text {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match eval::eval(&text) {
                Ok(v) => {
                    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&v).unwrap());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {}", e.message());
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Cmd::Verify { suite, n, alpha, deg, prime, out } => match suites::run(&suite, &suites::Params { n, alpha, deg, prime }) {
            Ok(r) => emit(&r, out),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Cmd::ReportAll { max_n, max_deg, prime, out } => match suites::report_all(max_n, max_deg, prime) {
            Ok(r) => emit(&r, out),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
