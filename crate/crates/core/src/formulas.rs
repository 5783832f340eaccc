//! Exact integer formulas: binomials, the top-layer count `A_r(v)`,
//! Sørensen's dimension `k_{q,m}(v)`, the defect `Delta_r(v)` and the
//! complete hull-dimension case analysis.
//!
//! All sums are carried out in arbitrary-precision integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::monomial::{interval_index, IntervalIndex, IntervalParams};
use crate::projspace::point_count;

/// `C(n, k)`, zero when `k < 0` or `n < k` (including negative `n`).
pub fn binom(n: i64, k: i64) -> BigUint {
    if k < 0 || n < k {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

fn signed_binom(n: i64, k: i64) -> BigInt {
    BigInt::from(binom(n, k))
}

fn to_natural(x: BigInt) -> BigUint {
    match x.sign() {
        Sign::Minus => panic!("combinatorial count evaluated to a negative number: {x}"),
        _ => x.magnitude().clone(),
    }
}

/// `sum_{t=lo}^{hi} sum_{j=0}^{r} (-1)^j C(r,j) C(t - jq + r - 1, r - 1)`:
/// the number of tails in `[0, q-1]^r` with sum in `[lo, hi]`.
fn bounded_tail_count(q: i64, r: i64, lo: i64, hi: i64) -> BigInt {
    let mut total = BigInt::zero();
    for t in lo..=hi {
        for j in 0..=r {
            let term = signed_binom(r, j) * signed_binom(t - j * q + r - 1, r - 1);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    total
}

/// `A_r(v)` by the signed double sum, with `A_0(v) = 1`.
pub fn a_formula(q: u32, r: u32, v: u32) -> Result<BigUint> {
    let p = IntervalParams::new(q, r, v)?;
    if r == 0 {
        return Ok(BigUint::one());
    }
    Ok(to_natural(bounded_tail_count(q as i64, r as i64, p.lower(), p.upper() as i64)))
}

/// `A_r(v)` by direct enumeration of `a in [0, Q]^r` with `L <= |a| <= U`.
pub fn a_enumerate(q: u32, r: u32, v: u32) -> Result<BigUint> {
    let p = IntervalParams::new(q, r, v)?;
    if r == 0 {
        return Ok(BigUint::one());
    }
    let big_q = q - 1;
    let mut tail = vec![0u32; r as usize];
    let mut count: u64 = 0;
    loop {
        let s: u32 = tail.iter().sum();
        if s as i64 >= p.lower() && s <= p.upper() {
            count += 1;
        }
        // Odometer over [0, Q]^r.
        let Some(k) = tail.iter().rposition(|&x| x < big_q) else { break };
        tail[k] += 1;
        tail[k + 1..].iter_mut().for_each(|x| *x = 0);
    }
    Ok(BigUint::from(count))
}

/// Sørensen's dimension of `PRM(q, m, v)` for `1 <= v <= m(q-1)`.
pub fn sorensen_dim(q: u32, m: u32, v: u32) -> Result<BigUint> {
    let big_q = q - 1;
    let max = m * big_q;
    if v < 1 || v > max {
        return Err(Error::DegreeOutOfRange { v, max });
    }
    let (q, m) = (q as i64, m as i64);
    let mut total = BigInt::zero();
    for t in (1..=v as i64).filter(|t| (v as i64 - t) % big_q as i64 == 0) {
        for j in 0..=m {
            let term = signed_binom(m + 1, j) * signed_binom(t - j * q + m, m);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(to_natural(total))
}

/// `Delta_r(v)` by the interval recursion `Delta_r(v) = A_r(v) +
/// Delta_{r-2}(v - Q)`, anchored at `Delta_0 = 1` and
/// `Delta_1(v) = 2v - Q + 1`.
pub fn delta(q: u32, r: u32, v: u32) -> Result<BigUint> {
    let p = IntervalParams::new(q, r, v)?;
    match r {
        0 => Ok(BigUint::one()),
        1 => Ok(BigUint::from(2 * v + 1 - (q - 1))),
        _ => {
            let lower = p.descend().expect("r >= 2");
            Ok(a_formula(q, r, v)? + delta(q, lower.r(), lower.v())?)
        }
    }
}

/// `Delta_r(v)` as the unrolled chain `A_r(v) + A_{r-2}(v-Q) + ...`,
/// ending in `A_0 = 1` (even `r`) or `A_1` (odd `r`).
pub fn delta_chain(q: u32, r: u32, v: u32) -> Result<BigUint> {
    IntervalParams::new(q, r, v)?;
    let big_q = q - 1;
    let mut total = BigUint::zero();
    for i in 0..=r / 2 {
        total += a_formula(q, r - 2 * i, v - i * big_q)?;
    }
    Ok(total)
}

/// `Delta_r(v)` from the fully substituted triple sums.
pub fn delta_triple_sum(q: u32, r: u32, v: u32) -> Result<BigUint> {
    IntervalParams::new(q, r, v)?;
    let (qi, big_q, v) = (q as i64, q as i64 - 1, v as i64);
    let ell = (r / 2) as i64;
    let mut total = BigInt::zero();
    if r.is_multiple_of(2) {
        total += 1;
        for s in 1..=ell {
            let lo = (s + ell) * big_q - v;
            let hi = v - (ell - s) * big_q;
            total += bounded_tail_count(qi, 2 * s, lo, hi);
        }
    } else {
        for s in 0..=ell {
            let lo = (s + ell + 1) * big_q - v;
            let hi = v - (ell - s) * big_q;
            total += bounded_tail_count(qi, 2 * s + 1, lo, hi);
        }
    }
    Ok(to_natural(total))
}

/// Which item of the complete case analysis a degree falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `v = 0`: the code is spanned by the all-ones word.
    ZeroDegree,
    /// `0 < v <= mQ/2`, `Q | 2v`: self-orthogonal.
    SelfOrthogonalBoundary,
    /// `0 < v < mQ/2`, `Q ∤ 2v`: hull dimension `k - Delta_r(v)`.
    LowerOpen,
    /// `mQ/2 < v < mQ`, `Q ∤ v`: same hull dimension as degree `mQ - v`.
    UpperOpenDual,
    /// `mQ/2 < v < mQ`, `Q | v`: the hull is `PRM(q, m, mQ - v)`.
    UpperBoundarySongLuo,
    /// `v = mQ`: LCD.
    EndpointLCD,
    /// `v > mQ`: the code is the whole space.
    FullSpace,
}

impl CaseTag {
    pub fn classify(q: u32, m: u32, v: u32) -> CaseTag {
        let big_q = q - 1;
        let top = m * big_q;
        if v == 0 {
            CaseTag::ZeroDegree
        } else if v > top {
            CaseTag::FullSpace
        } else if v == top {
            CaseTag::EndpointLCD
        } else if 2 * v <= top && (2 * v).is_multiple_of(big_q) {
            CaseTag::SelfOrthogonalBoundary
        } else if 2 * v < top {
            CaseTag::LowerOpen
        } else if !v.is_multiple_of(big_q) {
            CaseTag::UpperOpenDual
        } else {
            CaseTag::UpperBoundarySongLuo
        }
    }
}

/// Case-analyzed hull dimension of `PRM(q, m, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullReport {
    pub q: u32,
    pub m: u32,
    pub v: u32,
    pub case: CaseTag,
    #[serde(serialize_with = "big::natural")]
    pub code_dim: BigUint,
    /// Interval index `r` of the degree whose defect was used.
    pub r: Option<u32>,
    /// `mQ - v` for the two upper-half cases.
    pub dual_degree: Option<u32>,
    /// `Delta_r` when the hull dimension is `k - Delta_r`.
    #[serde(serialize_with = "big::optional")]
    pub defect: Option<BigUint>,
    #[serde(serialize_with = "big::natural")]
    pub hull_dim: BigUint,
}

/// Code dimension for every `v >= 0`.
pub fn code_dim(q: u32, m: u32, v: u32) -> Result<BigUint> {
    let top = m * (q - 1);
    if v == 0 {
        Ok(BigUint::one())
    } else if v > top {
        Ok(BigUint::from(point_count(q, m)?))
    } else {
        sorensen_dim(q, m, v)
    }
}

pub fn hull_dim(q: u32, m: u32, v: u32) -> Result<HullReport> {
    if q > crate::gf::MAX_ORDER {
        return Err(Error::TooLarge(q));
    }
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if m == 0 {
        return Err(Error::ZeroDimension);
    }
    let case = CaseTag::classify(q, m, v);
    let k = code_dim(q, m, v)?;
    let top = m * (q - 1);
    let mut report = HullReport {
        q,
        m,
        v,
        case,
        code_dim: k.clone(),
        r: None,
        dual_degree: None,
        defect: None,
        hull_dim: BigUint::zero(),
    };
    match case {
        CaseTag::ZeroDegree | CaseTag::EndpointLCD | CaseTag::FullSpace => {}
        CaseTag::SelfOrthogonalBoundary => report.hull_dim = k,
        CaseTag::LowerOpen => {
            let IntervalIndex::Open(r) = interval_index(q, v) else {
                unreachable!("open lower-half degree on a boundary")
            };
            let d = delta(q, r, v)?;
            report.r = Some(r);
            report.hull_dim = k - &d;
            report.defect = Some(d);
        }
        CaseTag::UpperOpenDual => {
            let mu = top - v;
            let dual = hull_dim(q, m, mu)?;
            report.dual_degree = Some(mu);
            report.r = dual.r;
            report.defect = dual.defect;
            report.hull_dim = dual.hull_dim;
        }
        CaseTag::UpperBoundarySongLuo => {
            let mu = top - v;
            report.dual_degree = Some(mu);
            report.hull_dim = sorensen_dim(q, m, mu)?;
        }
    }
    Ok(report)
}

mod big {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    /// JSON number when it fits in 64 bits, decimal string otherwise.
    pub fn natural<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match x.to_u64() {
            Some(n) => s.serialize_u64(n),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn optional<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => natural(x, s),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn open_degrees(q: u32, r: u32) -> impl Iterator<Item = u32> {
        let big_q = q - 1;
        (1..=(r + 1) * big_q / 2).filter(move |&v| interval_index(q, v) == IntervalIndex::Open(r))
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(5, 2), n(10));
        assert_eq!(binom(3, 5), n(0));
        assert_eq!(binom(4, -1), n(0));
        assert_eq!(binom(-3, 2), n(0));
        assert_eq!(binom(0, 0), n(1));
        assert_eq!(binom(60, 30), "118264581564861424".parse::<BigUint>().unwrap());
        assert_eq!(binom(200, 100).to_string(), "90548514656103281165404177077484163874504589675413336841320");
    }

    #[test]
    fn a_examples() {
        for q in [4, 5, 7] {
            assert_eq!(a_formula(q, 0, 1).unwrap(), n(1));
            assert_eq!(a_enumerate(q, 0, 1).unwrap(), n(1));
        }
        assert_eq!(a_formula(4, 1, 2).unwrap(), n(2));
        assert_eq!(a_enumerate(4, 1, 2).unwrap(), n(2));
        assert_eq!(a_formula(4, 2, 4).unwrap(), n(10));
        // a in [0,4]^2 with 3 <= |a| <= 5: 4 + 5 + 4.
        assert_eq!(a_enumerate(5, 2, 5).unwrap(), n(13));
        assert_eq!(a_formula(5, 2, 5).unwrap(), n(13));
        assert_eq!(a_formula(4, 2, 3), Err(Error::IntervalMismatch { q: 4, r: 2, v: 3 }));
    }

    #[test]
    fn a_formula_matches_enumeration() {
        for q in 3..=9 {
            if prime_power(q).is_none() {
                continue;
            }
            for r in 1..=5 {
                for v in open_degrees(q, r).filter(|&v| v <= 40) {
                    assert_eq!(a_formula(q, r, v).unwrap(), a_enumerate(q, r, v).unwrap(), "q={q} r={r} v={v}");
                }
            }
        }
    }

    #[test]
    fn sorensen_examples() {
        assert_eq!(sorensen_dim(2, 2, 1).unwrap(), n(3));
        assert_eq!(sorensen_dim(3, 2, 1).unwrap(), n(3));
        assert_eq!(sorensen_dim(2, 2, 2).unwrap(), n(6));
        // The top degree gives all but one coordinate.
        assert_eq!(sorensen_dim(3, 2, 4).unwrap(), n(12));
        assert_eq!(sorensen_dim(3, 2, 0), Err(Error::DegreeOutOfRange { v: 0, max: 4 }));
        assert_eq!(sorensen_dim(3, 2, 5), Err(Error::DegreeOutOfRange { v: 5, max: 4 }));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(4, 0, 1).unwrap(), n(1));
        assert_eq!(delta(4, 1, 2).unwrap(), n(2));
        assert_eq!(delta(4, 2, 4).unwrap(), n(11));
        assert!(delta(4, 2, 3).is_err());
    }

    #[test]
    fn delta_routes_agree() {
        for q in [3, 4, 5, 7, 8, 9] {
            for r in 0..=6 {
                for v in open_degrees(q, r).filter(|&v| v <= 40) {
                    let rec = delta(q, r, v).unwrap();
                    assert_eq!(rec, delta_chain(q, r, v).unwrap(), "chain q={q} r={r} v={v}");
                    assert_eq!(rec, delta_triple_sum(q, r, v).unwrap(), "triple q={q} r={r} v={v}");
                    if r == 1 {
                        assert_eq!(rec, a_formula(q, 1, v).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn hull_examples() {
        let r = hull_dim(3, 2, 0).unwrap();
        assert_eq!((r.case, r.code_dim.clone(), r.hull_dim.clone()), (CaseTag::ZeroDegree, n(1), n(0)));

        let r = hull_dim(5, 2, 4).unwrap();
        assert_eq!(r.case, CaseTag::SelfOrthogonalBoundary);
        assert_eq!(r.hull_dim, sorensen_dim(5, 2, 4).unwrap());

        let r = hull_dim(3, 3, 4).unwrap();
        assert_eq!(r.case, CaseTag::UpperBoundarySongLuo);
        assert_eq!(r.hull_dim, sorensen_dim(3, 3, 2).unwrap());
        assert_eq!(r.dual_degree, Some(2));

        let r = hull_dim(4, 3, 4).unwrap();
        assert_eq!(r.case, CaseTag::LowerOpen);
        assert_eq!((r.r, r.defect.clone()), (Some(2), Some(n(11))));

        assert_eq!(hull_dim(6, 2, 1), Err(Error::NotPrimePower(6)));
        assert_eq!(hull_dim(3, 0, 1), Err(Error::ZeroDimension));
    }

    #[test]
    fn case_partition_covers_every_degree() {
        use CaseTag::*;
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let big_q = q - 1;
            for m in 1..=4 {
                let top = m * big_q;
                for v in 0..=top + 2 {
                    let tag = CaseTag::classify(q, m, v);
                    let expected = match v {
                        0 => ZeroDegree,
                        v if v > top => FullSpace,
                        v if v == top => EndpointLCD,
                        v if 2 * v <= top && (2 * v) % big_q == 0 => SelfOrthogonalBoundary,
                        v if 2 * v < top => LowerOpen,
                        v if v % big_q != 0 => UpperOpenDual,
                        _ => UpperBoundarySongLuo,
                    };
                    assert_eq!(tag, expected);
                    if q == 2 {
                        assert!(!matches!(tag, LowerOpen | UpperOpenDual));
                    }
                }
            }
        }
    }

    #[test]
    fn hull_dims_are_bounded_and_dual_symmetric() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let big_q = q - 1;
            for m in 1..=4 {
                let top = m * big_q;
                let len = BigUint::from(point_count(q, m).unwrap());
                for v in 0..=top + 1 {
                    let r = hull_dim(q, m, v).unwrap();
                    assert!(r.hull_dim <= r.code_dim);
                    assert!(r.hull_dim <= &len - &r.code_dim + 1u32, "q={q} m={m} v={v}");
                    if (1..top).contains(&v) && v % big_q != 0 {
                        assert_eq!(r.hull_dim, hull_dim(q, m, top - v).unwrap().hull_dim);
                    }
                }
            }
        }
    }
}
