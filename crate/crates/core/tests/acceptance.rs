//! Acceptance criteria, all at exact equality. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use prm_hull::formulas::{self, CaseTag};
use prm_hull::linalg;
use prm_hull::monomial::{self, interval_index, IntervalIndex, IntervalParams};
use prm_hull::oracle;
use prm_hull::FiniteField;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const DIM_QS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];
const LOCAL_QS: [u32; 5] = [4, 5, 7, 8, 9];

fn field(q: u32) -> Arc<FiniteField> {
    Arc::new(FiniteField::new(q).expect("prime power"))
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

/// Every integer `v` in the open interval `I_r`.
fn interval(q: u32, r: u32) -> Vec<IntervalParams> {
    (1..=(r + 1) * (q - 1) / 2)
        .filter(|&v| interval_index(q, v) == IntervalIndex::Open(r))
        .map(|v| IntervalParams::new(q, r, v).unwrap())
        .collect()
}

fn recursion_range() -> Vec<IntervalParams> {
    LOCAL_QS.iter().flat_map(|&q| (2..=4).flat_map(move |r| interval(q, r))).collect()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn dimension() -> Outcome {
    let mut points = 0;
    for q in DIM_QS {
        let f = field(q);
        for m in 1..=3 {
            for v in 1..=m * (q - 1) {
                let k = formulas::sorensen_dim(q, m, v).map_err(|e| e.to_string())?;
                let rank = oracle::dim_oracle(&f, m, v);
                let basis = monomial::enumerate_g(q, m, v).unwrap().len();
                check(k == big(rank) && k == big(basis), || {
                    format!("q={q} m={m} v={v}: formula {k}, rank {rank}, |G| {basis}")
                })?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} points"))
}

fn hull() -> Outcome {
    let mut points = 0;
    for q in DIM_QS {
        let f = field(q);
        for m in 1..=3 {
            for v in 0..=m * (q - 1) + 1 {
                let report = formulas::hull_dim(q, m, v).map_err(|e| e.to_string())?;
                let o = oracle::hull_oracle(&f, m, v);
                check(report.hull_dim == big(o.hull_dim) && report.code_dim == big(o.code_dim), || {
                    format!(
                        "q={q} m={m} v={v} {:?}: formula k={} hull={}, oracle k={} hull={}",
                        report.case, report.code_dim, report.hull_dim, o.code_dim, o.hull_dim
                    )
                })?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} points"))
}

fn recursion() -> Outcome {
    let range = recursion_range();
    for p in &range {
        let (q, r, v) = (p.q(), p.r(), p.v());
        let d = formulas::delta(q, r, v).unwrap();
        let lower = p.descend().unwrap();
        let stepped = formulas::a_formula(q, r, v).unwrap() + formulas::delta(q, lower.r(), lower.v()).unwrap();
        let rank = linalg::support_block(&field(q), p).rank();
        check(d == stepped && d == big(rank), || {
            format!("q={q} r={r} v={v}: delta {d}, A + lower {stepped}, rank {rank}")
        })?;
    }
    Ok(format!("{} points", range.len()))
}

fn a_count() -> Outcome {
    let mut points = 0;
    // A_r(v) depends on q only through Q, so q = 6 is included.
    for q in 3..=9 {
        for r in 0..=5 {
            for p in interval(q, r).into_iter().filter(|p| p.v() <= 40) {
                let formula = formulas::a_formula(q, r, p.v()).unwrap();
                let counted = formulas::a_enumerate(q, r, p.v()).unwrap();
                check(formula == counted, || format!("q={q} r={r} v={}: {formula} vs {counted}", p.v()))?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} points"))
}

fn top_layer() -> Outcome {
    let range = recursion_range();
    for p in &range {
        let f = field(p.q());
        let pr = linalg::top_pairing_matrix(&f, p);
        let tails = monomial::top_tails(p);
        let level = |k: usize| tails[k].iter().sum::<u32>() as i64;
        let sign = if p.r() % 2 == 0 { f.one() } else { f.minus_one() };
        let (upper, lower) = (p.upper() as i64, p.lower());
        let label = || format!("q={} r={} v={}", p.q(), p.r(), p.v());
        check(pr.inverse().is_some(), || format!("{}: singular", label()))?;
        for i in 0..pr.rows() {
            for j in 0..pr.cols() {
                let x = pr.get(i, j);
                if level(i) == level(j) {
                    let want = if i == j { sign } else { f.zero() };
                    check(x == want, || format!("{}: diagonal block entry ({i},{j}) = {x}", label()))?;
                } else if !(level(i) == upper && level(j) == lower) {
                    check(x.is_zero(), || format!("{}: entry ({i},{j}) = {x} outside the blocks", label()))?;
                }
            }
        }
    }
    Ok(format!("{} points", range.len()))
}

fn schur() -> Outcome {
    let range = recursion_range();
    for p in &range {
        let f = field(p.q());
        let label = || format!("q={} r={} v={}", p.q(), p.r(), p.v());
        let vanishes = linalg::verify_schur_zero(&f, p).map_err(|e| format!("{}: {e}", label()))?;
        check(vanishes, || format!("{}: C P^-1 B != 0", label()))?;
        let d = linalg::working_block(&f, p).unwrap().d();
        let red = linalg::reduction_matrix(&f, p).unwrap();
        let rhr = red.mul(&linalg::lower_gram(&f, p)).unwrap().mul(&red.transpose()).unwrap();
        check(d == rhr, || format!("{}: D != R H R^T", label()))?;
    }
    Ok(format!("{} points", range.len()))
}

fn principal_blocks() -> Outcome {
    let range = recursion_range();
    for p in &range {
        let f = field(p.q());
        let d = formulas::delta(p.q(), p.r(), p.v()).unwrap();
        let e = monomial::e_set(p);
        let block = linalg::e_principal_block(&f, p);
        check(big(e.len()) == d && block.inverse().is_some(), || {
            format!("q={} r={} v={}: |E| {} vs delta {d}", p.q(), p.r(), p.v(), e.len())
        })?;
    }
    Ok(format!("{} points", range.len()))
}

fn duality() -> Outcome {
    let mut points = 0;
    for q in [3, 4, 5] {
        let f = field(q);
        for m in 1..=3 {
            let top = m * (q - 1);
            for v in (1..top).filter(|v| v % (q - 1) != 0) {
                let vanishes = oracle::dual_product_vanishes(&f, m, v).map_err(|e| e.to_string())?;
                check(vanishes, || format!("q={q} m={m} v={v}: G_v G_mu^T != 0"))?;
                points += 1;
            }
        }
    }
    let report = formulas::hull_dim(3, 3, 4).unwrap();
    let expected = formulas::sorensen_dim(3, 3, 2).unwrap();
    let o = oracle::hull_oracle(&field(3), 3, 4);
    check(
        report.case == CaseTag::UpperBoundarySongLuo && report.hull_dim == expected && expected == big(o.hull_dim),
        || format!("(3,3,4): {:?} hull {}, k(2) {expected}, oracle {}", report.case, report.hull_dim, o.hull_dim),
    )?;
    Ok(format!("{points} products, (3,3,4) hull = {expected}"))
}

fn base_anchors() -> Outcome {
    let mut points = 0;
    for q in LOCAL_QS {
        let f = field(q);
        for r in 0..=1 {
            for p in interval(q, r) {
                let v = p.v();
                let expected = if r == 0 { 1 } else { (2 * v + 1 - (q - 1)) as usize };
                let d = formulas::delta(q, r, v).unwrap();
                let a = formulas::a_formula(q, r, v).unwrap();
                let rank = linalg::support_block(&f, &p).rank();
                check(d == big(expected) && a == big(expected) && rank == expected, || {
                    format!("q={q} r={r} v={v}: expected {expected}, delta {d}, A {a}, rank {rank}")
                })?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} points"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 dimension oracle", dimension),
        ("2 hull oracle", hull),
        ("3 defect recursion", recursion),
        ("4 top-layer count", a_count),
        ("5 top pairing structure", top_layer),
        ("6 schur vanishing and D factorization", schur),
        ("7 principal blocks", principal_blocks),
        ("8 duality", duality),
        ("9 base anchors", base_anchors),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
