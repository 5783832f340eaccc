use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use prm_hull::formulas;
use prm_hull::linalg::{self, MatrixFq};
use prm_hull::monomial::{self, IntervalParams};
use prm_hull::sweep::{self, Execution, Mode};
use prm_hull::{Error, FiniteField};
use serde_json::{json, Value};

const HULL_KEYS: &str = "\
JSON keys:
  q, m, v        parameters
  case           ZeroDegree | SelfOrthogonalBoundary | LowerOpen | UpperOpenDual |
                 UpperBoundarySongLuo | EndpointLCD | FullSpace
  code_dim       dimension k of PRM(q, m, v)
  r              interval index of the defect degree, or null
  dual_degree    mQ - v in the upper half, or null
  defect         Delta_r when hull_dim = k - Delta_r, or null
  hull_dim       dimension of the hull
Integers that do not fit in 64 bits are written as decimal strings.";

const DIM_KEYS: &str = "JSON keys: q, m, v, code_dim";
const DELTA_KEYS: &str = "JSON keys: q, r, v, delta (r is derived from v; v must lie in an open interval)";
const A_KEYS: &str = "JSON keys: q, r, v, a_count (r is derived from v; v must lie in an open interval)";
const VERIFY_COLUMNS: &str = "\
TSV columns: mode, q, m, r, v, formula, oracle, match, elapsed_ms
  r is '-' for hull and dim; recursion, schur and blocks report m = r + 1.
  hull       formula hull dimension vs k - rank(G1 G1^T) (also checks k)
  dim        Sorensen dimension vs rank(G1) (also checks |G|)
  recursion  Delta_r(v) vs support-block rank (also checks the one-step recursion)
  schur      C P^-1 B = 0 and D = R H R^T; formula 1, oracle 1 when both hold
  blocks     |E_r(v)| = Delta_r(v) vs rank of the E block
Exit status is 1 if any row has match = false.";
const EXPORT_FORMAT: &str = "\
Matrices are written one row per line as space-separated element indices
(base-p coefficient packing, constant term least significant). E is written as
one local exponent vector per line, comma-separated.
S, P, W and E use the interval I_r containing v, which must be open with r < m.";

#[derive(Parser)]
#[command(name = "prm-hull", version, about = "Hull dimensions of projective Reed-Muller codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Point {
    /// Field order (prime power up to 256)
    #[arg(short)]
    q: u32,
    /// Projective dimension
    #[arg(short)]
    m: u32,
    /// Degree
    #[arg(short)]
    v: u32,
}

#[derive(Args)]
struct LocalPoint {
    /// Field order (prime power up to 256)
    #[arg(short)]
    q: u32,
    /// Degree, inside an open interval I_r
    #[arg(short)]
    v: u32,
}

#[derive(Args)]
struct Output {
    /// Write to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hull dimension of PRM(q, m, v) with its case report
    #[command(after_help = HULL_KEYS)]
    Hull {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        out: Output,
    },
    /// Dimension of PRM(q, m, v)
    #[command(after_help = DIM_KEYS)]
    Dim {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        out: Output,
    },
    /// Hull defect Delta_r(v)
    #[command(after_help = DELTA_KEYS)]
    Delta {
        #[command(flatten)]
        point: LocalPoint,
        #[command(flatten)]
        out: Output,
    },
    /// Top-layer count A_r(v) added by one recursion step
    #[command(name = "a-count", after_help = A_KEYS)]
    ACount {
        #[command(flatten)]
        point: LocalPoint,
        #[command(flatten)]
        out: Output,
    },
    /// Sweep formula against oracle and print TSV
    #[command(after_help = VERIFY_COLUMNS)]
    Verify {
        /// hull, dim, recursion, schur or blocks
        #[arg(long, default_value = "hull")]
        mode: Mode,
        /// Comma-separated field orders
        #[arg(short, value_delimiter = ',', default_value = "2,3,4,5,7,8,9")]
        q: Vec<u32>,
        /// Largest ambient dimension
        #[arg(short, default_value_t = 3)]
        m: u32,
        /// Worker threads (1 runs sequentially; default uses all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Write a generator matrix or structured block as text
    #[command(after_help = EXPORT_FORMAT)]
    Export {
        #[command(flatten)]
        point: Point,
        what: Selector,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Selector {
    #[value(name = "G")]
    G,
    #[value(name = "G1")]
    G1,
    #[value(name = "S")]
    S,
    #[value(name = "P")]
    P,
    #[value(name = "W")]
    W,
    #[value(name = "E")]
    E,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn open(out: &Output) -> io::Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    let mut w = open(out)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn emit_json<T: serde::Serialize>(out: &Output, value: &T) -> Result<(), Failure> {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")))
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
fn number(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(n) => json!(n),
        Err(_) => json!(x.to_string()),
    }
}

fn field(q: u32) -> Result<Arc<FiniteField>, Failure> {
    Ok(Arc::new(FiniteField::new(q)?))
}

fn local(q: u32, v: u32) -> Result<IntervalParams, Failure> {
    field(q)?;
    IntervalParams::for_degree(q, v)
        .filter(|_| v > 0)
        .ok_or_else(|| Failure::Usage(format!("degree {v} does not lie in an open interval for q = {q}")))
}

fn export(point: &Point, what: Selector) -> Result<String, Failure> {
    let Point { q, m, v } = *point;
    let f = field(q)?;
    if m == 0 {
        return Err(Error::ZeroDimension.into());
    }
    let blocks = || -> Result<IntervalParams, Failure> {
        let p = local(q, v)?;
        if p.r() >= m {
            return Err(Failure::Usage(format!("interval I_{} needs m > {}", p.r(), p.r())));
        }
        Ok(p)
    };
    let matrix: MatrixFq = match what {
        Selector::G => linalg::generator_matrix(&f, m, v)?,
        Selector::G1 => linalg::full_monomial_matrix(&f, m, v),
        Selector::S => linalg::support_block(&f, &blocks()?),
        Selector::P => linalg::top_pairing_matrix(&f, &blocks()?),
        Selector::W => linalg::working_block(&f, &blocks()?)?.matrix,
        Selector::E => {
            let mut text = String::new();
            for e in monomial::e_set(&blocks()?) {
                text.push_str(&e.to_string());
                text.push('\n');
            }
            return Ok(text);
        }
    };
    Ok(matrix.to_text())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Hull { point, out } => {
            let report = formulas::hull_dim(point.q, point.m, point.v)?;
            emit_json(&out, &report)?;
        }
        Command::Dim { point, out } => {
            let Point { q, m, v } = point;
            field(q)?;
            if m == 0 {
                return Err(Error::ZeroDimension.into());
            }
            let k = formulas::code_dim(q, m, v)?;
            emit_json(&out, &json!({ "q": q, "m": m, "v": v, "code_dim": number(&k) }))?;
        }
        Command::Delta { point, out } => {
            let p = local(point.q, point.v)?;
            let d = formulas::delta(p.q(), p.r(), p.v())?;
            emit_json(&out, &json!({ "q": p.q(), "r": p.r(), "v": p.v(), "delta": number(&d) }))?;
        }
        Command::ACount { point, out } => {
            let p = local(point.q, point.v)?;
            let a = formulas::a_formula(p.q(), p.r(), p.v())?;
            emit_json(&out, &json!({ "q": p.q(), "r": p.r(), "v": p.v(), "a_count": number(&a) }))?;
        }
        Command::Verify { mode, q, m, jobs, out } => {
            if m == 0 {
                return Err(Error::ZeroDimension.into());
            }
            let exec = match jobs {
                Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
                Some(1) => Execution::Sequential,
                jobs => Execution::Parallel { jobs },
            };
            let results = sweep::run(mode, &q, m, exec)?;
            let mut w = open(&out)?;
            sweep::write_tsv(&mut w, &results)?;
            w.flush()?;
            return Ok(results.iter().all(|r| r.matched));
        }
        Command::Export { point, what, out } => {
            let text = export(&point, what)?;
            emit(&out, &text)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
