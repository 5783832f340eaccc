//! Monomial index sets.
//!
//! Monomials are exponent vectors. Ambient monomials in `x_0..x_m` have
//! length `m + 1`; local monomials in the active variables `z_0..z_r` have
//! length `r + 1` and embed into any ambient dimension `m >= r` by padding
//! with `m - r` leading zeros.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Embeds into `len` variables by prepending zeros.
    pub fn padded(&self, len: usize) -> ExponentVector {
        assert!(len >= self.len(), "cannot pad {} variables down to {len}", self.len());
        let mut exps = vec![0; len - self.len()];
        exps.extend_from_slice(&self.0);
        ExponentVector(exps)
    }

    /// Exponents after the first (`z_0`) variable.
    pub fn tail(&self) -> &[u32] {
        &self.0[1..]
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Classification of a degree against the intervals
/// `I_r = (rQ/2, (r+1)Q/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalIndex {
    Open(u32),
    /// `Q | 2v`: the degree sits on an interval endpoint.
    Boundary,
}

pub fn interval_index(q: u32, v: u32) -> IntervalIndex {
    let big_q = q - 1;
    if (2 * v).is_multiple_of(big_q) {
        IntervalIndex::Boundary
    } else {
        IntervalIndex::Open(2 * v / big_q)
    }
}

/// A degree `v` inside the open interval `I_r`, with the derived
/// quantities `2v = rQ + beta`, `L = rQ - v` and `U = v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalParams {
    q: u32,
    r: u32,
    v: u32,
}

impl IntervalParams {
    pub fn new(q: u32, r: u32, v: u32) -> Result<Self> {
        if q < 2 || interval_index(q, v) != IntervalIndex::Open(r) {
            return Err(Error::IntervalMismatch { q, r, v });
        }
        Ok(IntervalParams { q, r, v })
    }

    /// Parameters for the unique interval containing `v`, if it is open.
    pub fn for_degree(q: u32, v: u32) -> Option<Self> {
        match interval_index(q, v) {
            IntervalIndex::Open(r) => Some(IntervalParams { q, r, v }),
            IntervalIndex::Boundary => None,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn big_q(&self) -> u32 {
        self.q - 1
    }

    pub fn beta(&self) -> u32 {
        2 * self.v - self.r * self.big_q()
    }

    /// `L = rQ - v`; negative only for `r = 0`.
    pub fn lower(&self) -> i64 {
        (self.r * self.big_q()) as i64 - self.v as i64
    }

    pub fn upper(&self) -> u32 {
        self.v
    }

    /// `(r - 2, v - Q)`, the interval the recursion descends to.
    pub fn descend(&self) -> Option<IntervalParams> {
        (self.r >= 2).then(|| IntervalParams { q: self.q, r: self.r - 2, v: self.v - self.big_q() })
    }
}

/// All vectors of `parts` entries in `[0, max]` summing to `total`, in
/// ascending lexicographic order.
fn bounded_compositions(total: u32, parts: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            if total <= max {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 0..=total.min(max) {
            if total - first > max * (parts as u32 - 1) {
                continue;
            }
            prefix.push(first);
            go(total - first, parts - 1, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, max, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// All degree-`v` monomials in `nvars` variables, descending lexicographic.
pub(crate) fn monomials_desc(nvars: usize, v: u32) -> Vec<ExponentVector> {
    let mut all = bounded_compositions(v, nvars, v);
    all.reverse();
    all.into_iter().map(ExponentVector).collect()
}

/// The full monomial set G1 of degree `v` in `x_0..x_m`, descending lex
/// with `x_0` most significant.
pub fn enumerate_g1(m: u32, v: u32) -> Vec<ExponentVector> {
    monomials_desc(m as usize + 1, v)
}

/// Membership in the reduced set G: every exponent after the first
/// positive one is at most `q - 1`.
pub fn is_reduced(q: u32, a: &ExponentVector) -> bool {
    match a.exps().iter().position(|&x| x > 0) {
        Some(first) => a.exps()[first + 1..].iter().all(|&x| x < q),
        None => true,
    }
}

/// The reduced monomial basis G, in the order induced from G1.
pub fn enumerate_g(q: u32, m: u32, v: u32) -> Result<Vec<ExponentVector>> {
    let max = m * (q - 1);
    if v < 1 || v > max {
        return Err(Error::DegreeOutOfRange { v, max });
    }
    Ok(enumerate_g1(m, v).into_iter().filter(|a| is_reduced(q, a)).collect())
}

/// Tail vectors `a in [0,Q]^r` with `L <= |a| <= U`, ordered by `|a|` and
/// then lexicographically within each level.
/// For `r = 0` this is the single empty tail, so `T_0(v) = {z_0^v}`.
pub fn top_tails(p: &IntervalParams) -> Vec<Vec<u32>> {
    let lo = p.lower().max(0) as u32;
    (lo..=p.upper()).flat_map(|s| bounded_compositions(s, p.r() as usize, p.big_q())).collect()
}

/// The monomial `z_0^(v-|a|) z_1^a_1 ... z_r^a_r` of a top-layer tail.
pub fn top_monomial(p: &IntervalParams, tail: &[u32]) -> ExponentVector {
    let size: u32 = tail.iter().sum();
    let mut exps = Vec::with_capacity(tail.len() + 1);
    exps.push(p.v() - size);
    exps.extend_from_slice(tail);
    ExponentVector(exps)
}

/// The top layer `T_r(v)`, as local monomials in `z_0..z_r`.
pub fn top_layer(p: &IntervalParams) -> Vec<ExponentVector> {
    top_tails(p).iter().map(|a| top_monomial(p, a)).collect()
}

/// Tail complement `a -> (Q - a_1, ..., Q - a_r)`.
pub fn complement(p: &IntervalParams, tail: &[u32]) -> Vec<u32> {
    tail.iter().map(|&a| p.big_q() - a).collect()
}

pub fn is_top(p: &IntervalParams, a: &ExponentVector) -> bool {
    let size: u32 = a.tail().iter().sum();
    a.tail().iter().all(|&x| x <= p.big_q()) && (size as i64) >= p.lower() && size <= p.upper()
}

/// Nonzero-entry criterion for the Gram entry of two degree-`v` monomials
/// with `v` in an open interval, applied to the exponent sums `c`.
///
/// Returns the position `s` of the first positive sum when `c_s = beta`
/// mod `Q` and every later sum is a positive multiple of `Q`; the entry is
/// then `(-1)^(m - s)`. Returns `None` exactly when the entry vanishes.
pub fn nonzero_position(c: &[u32], big_q: u32, beta: u32) -> Option<usize> {
    let s = c.iter().position(|&x| x > 0)?;
    if c[s] % big_q != beta % big_q {
        return None;
    }
    c[s + 1..].iter().all(|&x| x > 0 && x % big_q == 0).then_some(s)
}

/// Whether `a` pairs nonzero with some degree-`v` monomial in `z_0..z_r`.
///
/// For each admissible leading position `s`, the cheapest partner raises
/// every later exponent to the next positive multiple of `Q` and puts the
/// remaining degree on `z_s`; the residue at `s` is then forced to be
/// `beta`.
pub fn is_active(p: &IntervalParams, a: &ExponentVector) -> bool {
    let exps = a.exps();
    let big_q = p.big_q();
    let first = exps.iter().position(|&x| x > 0).unwrap_or(exps.len() - 1);
    (0..=first).any(|s| {
        let needed: u32 = exps[s + 1..].iter().map(|&x| x.max(1).div_ceil(big_q) * big_q - x).sum();
        needed <= p.v()
    })
}

/// The active set `A_r(v)`: top layer first (in top-layer order), then the
/// remaining active monomials in descending lexicographic order.
pub fn active_set(p: &IntervalParams) -> Vec<ExponentVector> {
    let mut set = top_layer(p);
    set.extend(remainder_set(p));
    set
}

/// Active monomials outside the top layer, descending lex.
pub fn remainder_set(p: &IntervalParams) -> Vec<ExponentVector> {
    monomials_desc(p.r() as usize + 1, p.v()).into_iter().filter(|a| !is_top(p, a) && is_active(p, a)).collect()
}

/// `Lambda(M)`: add `Q` to the rightmost positive exponent.
pub fn rightmost_lift(big_q: u32, m: &ExponentVector) -> Result<ExponentVector> {
    let rho = m.exps().iter().rposition(|&x| x > 0).ok_or(Error::ConstantMonomial)?;
    let mut exps = m.0.clone();
    exps[rho] += big_q;
    Ok(ExponentVector(exps))
}

/// `red(Y)`: subtract `Q` from the rightmost tail exponent exceeding `Q`.
pub fn reduce(big_q: u32, y: &ExponentVector) -> Result<ExponentVector> {
    let eta =
        (1..y.len()).rev().find(|&j| y.exps()[j] > big_q).ok_or_else(|| Error::NotReducible(y.exps().to_vec()))?;
    let mut exps = y.0.clone();
    exps[eta] -= big_q;
    Ok(ExponentVector(exps))
}

/// `M_r(u)`: degree `u = v - Q` monomials in `z_1..z_r`, as local vectors
/// with a zero `z_0` exponent, descending lex.
pub fn lower_monomials(p: &IntervalParams) -> Vec<ExponentVector> {
    let u = p.v().saturating_sub(p.big_q());
    monomials_desc(p.r() as usize, u).into_iter().map(|a| a.padded(p.r() as usize + 1)).collect()
}

/// The recursive principal-block family `E_r(v)`: the top layer for
/// `r <= 1`, and the top layer followed by the rightmost
/// lifts of `E_{r-2}(v - Q)` otherwise.
pub fn e_set(p: &IntervalParams) -> Vec<ExponentVector> {
    match p.r() {
        0 | 1 => top_layer(p),
        r => {
            let lower = p.descend().expect("r >= 2");
            let mut set = top_layer(p);
            for m in e_set(&lower) {
                let lifted = rightmost_lift(p.big_q(), &m.padded(r as usize + 1))
                    .expect("lower family monomials have positive degree");
                set.push(lifted);
            }
            set
        }
    }
}
