//! Verification sweeps: formula against oracle over a grid of parameter
//! points, rendered as TSV.
//!
//! Points are independent. With the `parallel` feature they are evaluated
//! on a rayon pool; results always come back in parameter order.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;

use crate::error::Result;
use crate::formulas;
use crate::gf::FiniteField;
use crate::linalg;
use crate::monomial::{self, interval_index, IntervalIndex, IntervalParams};
use crate::oracle;

/// What a sweep compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Hull dimension formula against `k - rank(G1 G1^T)`.
    Hull,
    /// Sørensen's dimension against `rank(G1)` and `|G|`.
    Dim,
    /// `Delta_r(v)` recursion against the support-block rank.
    Recursion,
    /// `C P^{-1} B = 0` and `D = R H R^T`.
    Schur,
    /// `E_r(v)` has size `Delta_r(v)` and an invertible principal block.
    Blocks,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Hull, Mode::Dim, Mode::Recursion, Mode::Schur, Mode::Blocks];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Hull => "hull",
            Mode::Dim => "dim",
            Mode::Recursion => "recursion",
            Mode::Schur => "schur",
            Mode::Blocks => "blocks",
        }
    }

    /// Whether points are indexed by the interval `r` rather than the
    /// ambient dimension.
    pub fn is_local(self) -> bool {
        matches!(self, Mode::Recursion | Mode::Schur | Mode::Blocks)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode {s:?}; expected one of hull, dim, recursion, schur, blocks"))
    }
}

/// One parameter point. Local modes set `r` and report `m = r + 1`, the
/// least ambient dimension in which `I_r` lies in the lower half.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepPoint {
    pub q: u32,
    pub m: u32,
    pub r: Option<u32>,
    pub v: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub mode: Mode,
    pub params: SweepPoint,
    pub formula: BigUint,
    pub oracle: BigUint,
    pub matched: bool,
    pub elapsed_ms: u128,
}

/// How to schedule the points of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    /// One thread, including inside matrix kernels.
    Sequential,
    /// A rayon pool with the given number of threads (all cores if `None`).
    /// Falls back to sequential without the `parallel` feature.
    Parallel { jobs: Option<usize> },
}

/// The parameter grid of a sweep over `qs` and ambient dimensions up to
/// `m_max`.
pub fn points(mode: Mode, qs: &[u32], m_max: u32) -> Vec<SweepPoint> {
    let mut out = Vec::new();
    for &q in qs {
        let big_q = q - 1;
        if mode.is_local() {
            let r_min = if mode == Mode::Schur { 2 } else { 0 };
            for r in r_min..m_max {
                for v in 1..=(r + 1) * big_q / 2 {
                    if interval_index(q, v) == IntervalIndex::Open(r) {
                        out.push(SweepPoint { q, m: r + 1, r: Some(r), v });
                    }
                }
            }
        } else {
            for m in 1..=m_max {
                let top = m * big_q;
                let degrees: Vec<u32> = match mode {
                    Mode::Dim => (1..=top).collect(),
                    _ => (0..=top + 1).collect(),
                };
                out.extend(degrees.into_iter().map(|v| SweepPoint { q, m, r: None, v }));
            }
        }
    }
    out
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

/// Evaluates one point: the formula side, the oracle side, and whether
/// every stated identity holds.
pub fn evaluate(mode: Mode, field: &Arc<FiniteField>, pt: SweepPoint) -> Result<SweepResult> {
    let start = Instant::now();
    let SweepPoint { q, m, v, r } = pt;
    let (formula, oracle, matched) = match mode {
        Mode::Hull => {
            let report = formulas::hull_dim(q, m, v)?;
            let o = oracle::hull_oracle(field, m, v);
            let ok = report.hull_dim == big(o.hull_dim) && report.code_dim == big(o.code_dim);
            (report.hull_dim, big(o.hull_dim), ok)
        }
        Mode::Dim => {
            let k = formulas::sorensen_dim(q, m, v)?;
            let rank = oracle::dim_oracle(field, m, v);
            let basis = monomial::enumerate_g(q, m, v)?.len();
            let ok = k == big(rank) && k == big(basis);
            (k, big(rank), ok)
        }
        Mode::Recursion => {
            let r = r.expect("local point");
            let p = IntervalParams::new(q, r, v)?;
            let d = formulas::delta(q, r, v)?;
            let step_ok = match p.descend() {
                Some(lower) => d == formulas::a_formula(q, r, v)? + formulas::delta(q, lower.r(), lower.v())?,
                None => true,
            };
            let rank = linalg::support_block(field, &p).rank();
            let ok = step_ok && d == big(rank);
            (d, big(rank), ok)
        }
        Mode::Schur => {
            let r = r.expect("local point");
            let p = IntervalParams::new(q, r, v)?;
            let schur = linalg::verify_schur_zero(field, &p)?;
            let w = linalg::working_block(field, &p)?;
            let red = linalg::reduction_matrix(field, &p)?;
            let h = linalg::lower_gram(field, &p);
            let factored = red.mul(&h)?.mul(&red.transpose())? == w.d();
            let ok = schur && factored;
            (big(1), big(ok as usize), ok)
        }
        Mode::Blocks => {
            let r = r.expect("local point");
            let p = IntervalParams::new(q, r, v)?;
            let d = formulas::delta(q, r, v)?;
            let block = linalg::e_principal_block(field, &p);
            let rank = block.rank();
            let ok = big(block.rows()) == d && rank == block.rows();
            (d, big(rank), ok)
        }
    };
    Ok(SweepResult { mode, params: pt, formula, oracle, matched, elapsed_ms: start.elapsed().as_millis() })
}

/// Runs every point of the grid and returns results in grid order.
pub fn run(mode: Mode, qs: &[u32], m_max: u32, exec: Execution) -> Result<Vec<SweepResult>> {
    let fields: Vec<(u32, Arc<FiniteField>)> =
        qs.iter().map(|&q| FiniteField::new(q).map(|f| (q, Arc::new(f)))).collect::<Result<_>>()?;
    let grid = points(mode, qs, m_max);
    let field_of = |q: u32| fields.iter().find(|(fq, _)| *fq == q).map(|(_, f)| f).expect("validated");
    let eval = |pt: &SweepPoint| evaluate(mode, field_of(pt.q), *pt);

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let threads = match exec {
            Execution::Sequential => 1,
            Execution::Parallel { jobs } => jobs.unwrap_or(0),
        };
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("rayon thread pool");
        pool.install(|| grid.par_iter().map(eval).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = exec;
        grid.iter().map(eval).collect()
    }
}

pub const TSV_HEADER: &str = "mode\tq\tm\tr\tv\tformula\toracle\tmatch\telapsed_ms";

impl SweepResult {
    /// One TSV row matching [`TSV_HEADER`]; `r` is `-` for ambient modes.
    pub fn tsv_row(&self) -> String {
        let p = &self.params;
        let r = p.r.map_or_else(|| "-".to_string(), |r| r.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.mode, p.q, p.m, r, p.v, self.formula, self.oracle, self.matched, self.elapsed_ms
        )
    }
}

pub fn write_tsv<W: Write>(out: &mut W, results: &[SweepResult]) -> io::Result<()> {
    writeln!(out, "{TSV_HEADER}")?;
    for r in results {
        writeln!(out, "{}", r.tsv_row())?;
    }
    Ok(())
}
