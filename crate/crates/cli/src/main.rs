//! `storop`: reduce terms, certify storage operators, check derivations and
//! translate formulas.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or parse error,
//! 3 fuel exhausted.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use storop::formula::{
    adequacy_lint, bot_transform, display_formula, forget_first_order, godel_star,
    parse_equations, parse_formula, polarity, EquationSet, Signature,
};
use storop::machine::{behavioral_check, certify, theta_corpus, FailureReason, Mode};
use storop::reduce::{head_reduce_traced, normalize_traced, Status, DEFAULT_FUEL};
use storop::term::{parse_term, print_folded, Term};
use storop::typing::{check_derivation, check_fperp, parse_derivation};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const FUEL: u8 = 3;

#[derive(Parser)]
#[command(name = "storop", version, about = "Storage operators for Church numerals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a term (text or @builtin) and print the result.
    Reduce {
        term: String,
        #[arg(long, value_enum, default_value_t = Strategy::Head)]
        strategy: Strategy,
        /// Step budget; defaults to $STOROP_FUEL or 100000.
        #[arg(long)]
        fuel: Option<u64>,
        /// Print every intermediate term.
        #[arg(long)]
        trace: bool,
    },
    /// Certify a closed term as a storage operator for n = 0..=max-n.
    Certify {
        term: String,
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        #[arg(long)]
        fuel: Option<u64>,
        /// Number of β-representations of n tried per n.
        #[arg(long, default_value_t = 4)]
        corpus: usize,
        /// Write the certificates to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a derivation file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Fragment::Af2bot)]
        fragment: Fragment,
        /// Equation file used by eq nodes.
        #[arg(long)]
        equations: Option<PathBuf>,
    },
    /// Apply a translation to a formula.
    Translate {
        formula: String,
        #[arg(long, value_enum)]
        op: Op,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Head,
    Normal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fragment {
    Af2bot,
    Fperp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Star,
    Bot,
    Forget,
    Polarity,
}

fn fuel_or_default(fuel: Option<u64>) -> Result<u64, String> {
    if let Some(f) = fuel {
        return Ok(f);
    }
    match std::env::var("STOROP_FUEL") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("STOROP_FUEL must be a non-negative integer, found {v:?}")),
        Err(_) => Ok(DEFAULT_FUEL),
    }
}

fn term_arg(src: &str) -> Result<Term, String> {
    parse_term(src).map_err(|e| format!("cannot parse term: {e}"))
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn reduce(src: &str, strategy: Strategy, fuel: Option<u64>, trace: bool) -> Result<u8, String> {
    let t = term_arg(src)?;
    let fuel = fuel_or_default(fuel)?;
    let mut i = 0;
    let mut visit = |u: &Term| {
        if trace {
            i += 1;
            println!("{i}: {}", print_folded(u));
        }
    };
    let out = match strategy {
        Strategy::Head => head_reduce_traced(&t, fuel, &mut visit),
        Strategy::Normal => normalize_traced(&t, fuel, &mut visit),
    };
    println!("{}", print_folded(&out.result));
    println!("steps: {}", out.steps);
    println!("status: {}", out.status.as_str());
    Ok(if out.status == Status::FuelExhausted { FUEL } else { OK })
}

fn certify_cmd(src: &str, max_n: u64, fuel: Option<u64>, corpus: usize, out: Option<PathBuf>) -> Result<u8, String> {
    let t = term_arg(src)?;
    if !t.is_closed() {
        return Err("the operator must be a closed term".into());
    }
    let fuel = fuel_or_default(fuel)?;
    let mut written = String::new();
    let mut code = OK;
    for n in 0..=max_n {
        match certify(&t, n, fuel, Mode::Strict) {
            Err(e) => {
                println!("n={n} failed: {}", e.reason);
                code = if e.reason == FailureReason::FuelExhausted { FUEL } else { NEGATIVE };
                break;
            }
            Ok(cert) => {
                let report = behavioral_check(&t, &cert, &theta_corpus(n, corpus), fuel);
                let passed = report.entries.iter().filter(|e| e.verdict == storop::machine::EntryVerdict::Ok).count();
                println!(
                    "n={n} ok tau={} steps={} total-h={} behavioral={passed}/{}",
                    print_folded(&cert.tau),
                    cert.steps.len(),
                    cert.total_h,
                    report.entries.len()
                );
                written.push_str(&cert.to_string());
                written.push('\n');
                if !report.all_ok() {
                    println!("n={n} failed: behavioral check");
                    code = NEGATIVE;
                    break;
                }
            }
        }
    }
    if let Some(path) = out {
        fs::write(&path, written).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(code)
}

fn check_cmd(file: &PathBuf, fragment: Fragment, equations: Option<PathBuf>) -> Result<u8, String> {
    let sig = Signature::default();
    let d = parse_derivation(&read(file)?, &sig).map_err(|e| format!("{}: {e}", file.display()))?;
    let eqs = match &equations {
        Some(p) => {
            let set = parse_equations(&read(p)?, &sig).map_err(|e| format!("{}: {e}", p.display()))?;
            let lint = adequacy_lint(&set, 4);
            if lint.is_refuted() {
                eprintln!("warning: equations are not adequate, {lint}");
            }
            set
        }
        None => EquationSet::default(),
    };
    let report = match fragment {
        Fragment::Af2bot => check_derivation(&d, &eqs),
        Fragment::Fperp => check_fperp(&d),
    };
    println!("{report}");
    Ok(if report.is_ok() { OK } else { NEGATIVE })
}

fn translate(src: &str, op: Op) -> Result<u8, String> {
    let f = parse_formula(src).map_err(|e| format!("cannot parse formula: {e}"))?;
    let out = match op {
        Op::Star => display_formula(&godel_star(&f).map_err(|e| e.to_string())?),
        Op::Bot => display_formula(&bot_transform(&f).map_err(|e| e.to_string())?),
        Op::Forget => display_formula(&forget_first_order(&f)),
        Op::Polarity => polarity(&f).as_str().to_string(),
    };
    println!("{out}");
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Reduce { term, strategy, fuel, trace } => reduce(&term, strategy, fuel, trace),
        Command::Certify { term, max_n, fuel, corpus, out } => certify_cmd(&term, max_n, fuel, corpus, out),
        Command::Check { file, fragment, equations } => check_cmd(&file, fragment, equations),
        Command::Translate { formula, op } => translate(&formula, op),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
