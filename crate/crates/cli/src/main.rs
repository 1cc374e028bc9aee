use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use onm_core::covariant::{check_not_power, factor_into_f};
use onm_core::permrep::{refute_equality, OracleVerdict};
use onm_core::verify::{parse_check_list, run_verify, CheckId, VerifyConfig};
use onm_core::{equals, parse_element, parse_groupword, Context, Element, Verdict};

const USAGE: u8 = 64;
const DEFAULT_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "onm", version, about = "Exact symbolic verifier for the algebra O(n,m)")]
struct Cli {
    /// Number of s generators.
    #[arg(long, global = true, default_value_t = 2)]
    n: u32,
    /// Number of t generators.
    #[arg(long, global = true, default_value_t = 2)]
    m: u32,
    /// Spanning-set depth (default 3, or ONM_DEPTH).
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity corpus C1..C21.
    Verify {
        /// Comma separated check ids, e.g. C1,C16.
        #[arg(long)]
        checks: Option<String>,
        /// Longest monomial examined by the tameness monitor (C21).
        #[arg(long, default_value_t = 6)]
        tame_len: usize,
    },
    /// Print the normal form of an expression.
    Eval {
        expr: String,
        /// Compare with a second expression.
        #[arg(long)]
        equals: Option<String>,
    },
    /// Print the Fourier coefficient at a free-group element.
    Fourier {
        expr: String,
        #[arg(long)]
        at: String,
    },
    /// Factor a corner monomial over F and F'.
    Factor { word: String },
    /// Try to separate two expressions in concrete models.
    Oracle {
        left: String,
        right: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Decide whether R is a power partial isometry.
    Notpower,
}

struct Failure {
    code: u8,
    msg: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: USAGE, msg: msg.into() }
}

fn resolve_depth(flag: Option<usize>) -> Result<usize, Failure> {
    let depth = match flag {
        Some(d) => d,
        None => match std::env::var("ONM_DEPTH") {
            Ok(v) => v.trim().parse().map_err(|_| usage(format!("ONM_DEPTH is not a number: {v:?}")))?,
            Err(_) => DEFAULT_DEPTH,
        },
    };
    if depth == 0 {
        return Err(usage("depth must be at least 1"));
    }
    Ok(depth)
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Equal => "Equal".into(),
        Verdict::NotEqual(w) => format!("NotEqual\nwitness: {w}"),
        Verdict::Unconfirmed(r) => format!("Unconfirmed\nreason: {r}"),
    }
}

fn verdict_json(v: &Verdict) -> serde_json::Value {
    match v {
        Verdict::Equal => json!({"verdict": "Equal"}),
        Verdict::NotEqual(w) => json!({"verdict": "NotEqual", "witness": w.to_string()}),
        Verdict::Unconfirmed(r) => json!({"verdict": "Unconfirmed", "reason": r}),
    }
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json output")),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let ctx = Context::new(cli.n, cli.m).map_err(|e| usage(e.to_string()))?;
    let depth = resolve_depth(cli.depth)?;
    let format = cli.format;
    match cli.command {
        Command::Verify { checks, tame_len } => {
            let checks = match checks {
                Some(s) => parse_check_list(&s).map_err(|e| usage(e.to_string()))?,
                None => CheckId::ALL.to_vec(),
            };
            let cfg = VerifyConfig { depth, seed: cli.seed, checks, tame_len, ..Default::default() };
            let report = run_verify(&ctx, &cfg);
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(report.exit_code() as u8)
        }
        Command::Eval { expr, equals: other } => {
            let x = parse_element(&expr, &ctx)?;
            match other {
                None => {
                    emit(format, x.to_string(), json!({"element": x.to_string()}));
                    Ok(0)
                }
                Some(other) => {
                    let y = parse_element(&other, &ctx)?;
                    let v = equals(&x, &y)?;
                    emit(format, verdict_text(&v), verdict_json(&v));
                    Ok(if v.is_unconfirmed() { 2 } else { 0 })
                }
            }
        }
        Command::Fourier { expr, at } => {
            let x = parse_element(&expr, &ctx)?;
            let g = parse_groupword(&at, &ctx)?;
            let c = x.fourier(&g);
            emit(format, c.to_string(), json!({"group": g.to_string(), "coefficient": c.to_string()}));
            Ok(0)
        }
        Command::Factor { word } => {
            let x = parse_element(&word, &ctx)?;
            let mut terms = x.terms();
            let w = match (terms.next(), terms.next()) {
                (Some((w, c)), None) if c.is_one() => w.clone(),
                _ => return Err(Failure { code: 1, msg: format!("{x} is not a single monomial") }),
            };
            let f = factor_into_f(&ctx, &w)?;
            let product = f.element(&ctx);
            let ok = equals(&product, &Element::from_monomial(ctx, w))?;
            if !ok.is_equal() {
                return Err(Failure { code: 1, msg: format!("factorization {f} does not multiply back: {}", verdict_text(&ok)) });
            }
            emit(format, f.to_string(), json!({"factors": f.to_string(), "verified": true}));
            Ok(0)
        }
        Command::Oracle { left, right, trials } => {
            let x = parse_element(&left, &ctx)?;
            let y = parse_element(&right, &ctx)?;
            let v = refute_equality(&x, &y, trials, cli.seed)?;
            let value = match &v {
                OracleVerdict::Refuted { model, basis } => json!({"verdict": "Refuted", "model": model, "basis": basis}),
                OracleVerdict::NotRefuted => json!({"verdict": "NotRefuted", "trials": trials, "seed": cli.seed}),
            };
            emit(format, v.to_string(), value);
            Ok(0)
        }
        Command::Notpower => {
            let r = check_not_power(&ctx)?;
            let holds = r.holds();
            let text = if r.degenerate {
                format!("{r}\nR^2 is a partial isometry")
            } else {
                format!("{r}\nR^2 is not a partial isometry, so R is not a power partial isometry")
            };
            emit(format, text, json!({"degenerate": r.degenerate, "report": r.to_string(), "consistent": holds}));
            Ok(if holds { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
