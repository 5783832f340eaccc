//! Dense matrices over GF(q) and the structured Gram blocks.
//!
//! Gram blocks on local monomials in `z_0..z_r` are computed with the
//! closed-form entry formula in ambient dimension `m = r`; the support
//! block does not depend on the ambient dimension once `m >= r + 1`, and
//! the formula itself is valid for any `m`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::monomial::{self, ExponentVector, IntervalParams};
use crate::parallel;
use crate::projspace::enumerate_points;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        f.write_str(&self.to_text())
    }
}

impl MatrixFq {
    pub fn zeros(field: &Arc<FiniteField>, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(field: &Arc<FiniteField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    pub fn from_fn<F>(field: &Arc<FiniteField>, rows: usize, cols: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> FieldElement + Sync + Send,
    {
        let data = parallel::map_range(rows, rows * cols, |i| (0..cols).map(|j| f(i, j)).collect::<Vec<_>>())
            .into_iter()
            .flatten()
            .collect();
        MatrixFq { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Arc<FiniteField>, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        let n = rows.len();
        Ok(MatrixFq { field: field.clone(), rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> MatrixFq {
        MatrixFq::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixFq {
        MatrixFq::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn principal(&self, indices: &[usize]) -> MatrixFq {
        self.submatrix(indices, indices)
    }

    pub fn add(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let f = &self.field;
        Ok(MatrixFq {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    /// Dot product of two equal-length slices.
    fn dot(field: &FiniteField, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        let products = a.iter().zip(b).map(|(&x, &y)| field.mul(x, y));
        if field.characteristic() == 2 {
            // Addition of packed GF(2) coefficients is XOR.
            FieldElement::from_raw(products.fold(0u8, |acc, x| acc ^ x.index() as u8))
        } else if field.is_prime() {
            let s: u64 = products.map(|x| x.index() as u64).sum();
            field.reduce_digit_sums(&[s])
        } else {
            // Coefficientwise sums, reduced mod p once at the end.
            let mut sums = vec![0u64; field.degree() as usize];
            for x in products {
                for (s, &d) in sums.iter_mut().zip(field.digits_of(x)) {
                    *s += d as u64;
                }
            }
            field.reduce_digit_sums(&sums)
        }
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        // Row i of the product accumulates a_ik * (row k of other); zero
        // entries of self are skipped, which matters for the sparse blocks.
        let f = &*self.field;
        let n = other.cols;
        let data = parallel::map_range(self.rows, self.rows * self.cols * n, |i| {
            let mut acc = vec![FieldElement::ZERO; n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if !a.is_zero() {
                    axpy(f, a, other.row(k), &mut acc, 0);
                }
            }
            acc
        })
        .into_iter()
        .flatten()
        .collect();
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows, cols: n, data })
    }

    /// `M M^T`.
    pub fn gram(&self) -> MatrixFq {
        let f = &*self.field;
        let n = self.rows;
        let upper = parallel::map_range(n, n * n * self.cols / 2, |i| {
            (i..n).map(|j| Self::dot(f, self.row(i), self.row(j))).collect::<Vec<_>>()
        });
        let mut g = MatrixFq::zeros(&self.field, n, n);
        for (i, row) in upper.into_iter().enumerate() {
            for (k, x) in row.into_iter().enumerate() {
                g.set(i, i + k, x);
                g.set(i + k, i, x);
            }
        }
        g
    }

    /// Drops repeated rows, keeping first occurrences. Rank is unchanged.
    pub fn distinct_rows(&self) -> MatrixFq {
        let mut seen = HashSet::new();
        let mut data = Vec::new();
        for i in 0..self.rows {
            if seen.insert(self.row(i)) {
                data.extend_from_slice(self.row(i));
            }
        }
        let rows = seen.len();
        MatrixFq { field: self.field.clone(), rows, cols: self.cols, data }
    }

    /// Rank over GF(q) by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        eliminate(&self.field, &mut work, self.rows, self.cols, self.cols)
    }

    /// Inverse by Gauss-Jordan elimination on `[M | I]`; `None` if singular
    /// or not square.
    pub fn inverse(&self) -> Option<MatrixFq> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let width = 2 * n;
        let mut aug = vec![FieldElement::ZERO; n * width];
        for i in 0..n {
            aug[i * width..i * width + n].copy_from_slice(self.row(i));
            aug[i * width + n + i] = FieldElement::ONE;
        }
        if eliminate(&self.field, &mut aug, n, width, n) < n {
            return None;
        }
        // Back substitution: pivots sit on the diagonal after forward
        // elimination with normalized pivot rows.
        let f = &*self.field;
        for col in (0..n).rev() {
            let (above, rest) = aug.split_at_mut(col * width);
            let pivot_row = &rest[..width];
            for row in above.chunks_mut(width) {
                let factor = row[col];
                if !factor.is_zero() {
                    axpy(f, f.neg(factor), pivot_row, row, col);
                }
            }
        }
        let data = aug.chunks(width).flat_map(|r| r[n..].iter().copied()).collect();
        Some(MatrixFq { field: self.field.clone(), rows: n, cols: n, data })
    }

    /// Rows of space-separated element indices, one line per row.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.index().to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `dst[from..] += factor * src[from..]`.
#[inline]
fn axpy(f: &FiniteField, factor: FieldElement, src: &[FieldElement], dst: &mut [FieldElement], from: usize) {
    let mul = f.mul_row(factor);
    for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
        *d = FieldElement::from_raw(f.add_row(*d)[mul[s.index()] as usize]);
    }
}

/// Forward elimination over the first `pivot_cols` columns of a row-major
/// `rows x cols` buffer. Pivot rows are normalized to a leading one and
/// pivots land at `(k, col_k)` with increasing columns. Returns the rank of
/// the leading `pivot_cols` block.
fn eliminate(f: &FiniteField, data: &mut [FieldElement], rows: usize, cols: usize, pivot_cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..pivot_cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !data[i * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                data.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(data[rank * cols + col]).expect("pivot is nonzero");
        let mul = f.mul_row(inv);
        for x in &mut data[rank * cols + col..(rank + 1) * cols] {
            *x = FieldElement::from_raw(mul[x.index()]);
        }
        let (head, below) = data.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        let work = (rows - rank - 1) * (cols - col);
        parallel::for_each_chunk_mut(below, cols, work, |_, row| {
            let factor = row[col];
            if !factor.is_zero() {
                axpy(f, f.neg(factor), pivot_row, row, col);
            }
        });
        rank += 1;
    }
    rank
}

/// Evaluates each monomial at the standard representatives of P^m(F_q),
/// with `0^0 = 1`.
pub fn evaluation_matrix(field: &Arc<FiniteField>, m: u32, monomials: &[ExponentVector]) -> Result<MatrixFq> {
    let len = m as usize + 1;
    if let Some(bad) = monomials.iter().find(|a| a.len() != len) {
        return Err(Error::DimensionMismatch { expected: len, found: bad.len() });
    }
    let points = enumerate_points(field, m);
    let f = &**field;
    Ok(MatrixFq::from_fn(field, monomials.len(), points.len(), |i, j| {
        monomials[i]
            .exps()
            .iter()
            .zip(points[j].coords())
            .fold(FieldElement::ONE, |acc, (&a, &x)| f.mul(acc, f.pow(x, a as u64)))
    }))
}

/// Generator matrix over the reduced basis G.
pub fn generator_matrix(field: &Arc<FiniteField>, m: u32, v: u32) -> Result<MatrixFq> {
    let g = monomial::enumerate_g(field.order(), m, v)?;
    evaluation_matrix(field, m, &g)
}

/// Evaluation matrix over every degree-`v` monomial (G1).
pub fn full_monomial_matrix(field: &Arc<FiniteField>, m: u32, v: u32) -> MatrixFq {
    evaluation_matrix(field, m, &monomial::enumerate_g1(m, v)).expect("G1 monomials have m + 1 entries")
}

/// `<ev(x^a), ev(x^b)>` from the stratified closed form
/// `sum_j (prod_{i<j} 0^{c_i}) prod_{t>j} sigma(c_t)` with `c = a + b`.
pub fn gram_entry(field: &FiniteField, m: u32, a: &ExponentVector, b: &ExponentVector) -> Result<FieldElement> {
    let len = m as usize + 1;
    for x in [a, b] {
        if x.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: x.len() });
        }
    }
    Ok(entry_from_sums(field, a.exps(), b.exps()))
}

fn entry_from_sums(field: &FiniteField, a: &[u32], b: &[u32]) -> FieldElement {
    let c: Vec<u64> = a.iter().zip(b).map(|(&x, &y)| (x + y) as u64).collect();
    let mut total = FieldElement::ZERO;
    for j in 0..c.len() {
        // prod_{i<j} 0^{c_i} is nonzero only if every earlier sum is zero.
        if c[..j].iter().any(|&x| x > 0) {
            break;
        }
        let term = c[j + 1..].iter().fold(FieldElement::ONE, |acc, &d| field.mul(acc, field.sigma_closed(d)));
        total = field.add(total, term);
    }
    total
}

/// Gram matrix of a family of local monomials, entries by closed form.
pub fn local_gram(field: &Arc<FiniteField>, family: &[ExponentVector]) -> MatrixFq {
    let f = &**field;
    MatrixFq::from_fn(field, family.len(), family.len(), |i, j| entry_from_sums(f, family[i].exps(), family[j].exps()))
}

/// The support block `S_r^sym(v)` on the active set in its standard order.
pub fn support_block(field: &Arc<FiniteField>, p: &IntervalParams) -> MatrixFq {
    local_gram(field, &monomial::active_set(p))
}

/// `P_r(v)`: rows `M_a`, columns the complement partners `M_{bar b}`, both
/// in top-layer order.
pub fn top_pairing_matrix(field: &Arc<FiniteField>, p: &IntervalParams) -> MatrixFq {
    let tails = monomial::top_tails(p);
    let rows: Vec<_> = tails.iter().map(|a| monomial::top_monomial(p, a)).collect();
    let cols: Vec<_> = tails.iter().map(|b| monomial::top_monomial(p, &monomial::complement(p, b))).collect();
    let f = &**field;
    MatrixFq::from_fn(field, rows.len(), cols.len(), |i, j| entry_from_sums(f, rows[i].exps(), cols[j].exps()))
}

/// `W_r(v) = S_r^sym(v) diag(Pi, I)` with its top-layer size.
#[derive(Debug, Clone)]
pub struct WorkingBlock {
    pub matrix: MatrixFq,
    pub split: usize,
    /// Top-layer tails in row order; column `k < split` holds the partner of
    /// `tails[k]`.
    pub tails: Vec<Vec<u32>>,
}

impl WorkingBlock {
    fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> MatrixFq {
        let r: Vec<_> = rows.collect();
        let c: Vec<_> = cols.collect();
        self.matrix.submatrix(&r, &c)
    }

    pub fn p(&self) -> MatrixFq {
        self.slice(0..self.split, 0..self.split)
    }

    pub fn b(&self) -> MatrixFq {
        self.slice(0..self.split, self.split..self.matrix.cols())
    }

    pub fn c(&self) -> MatrixFq {
        self.slice(self.split..self.matrix.rows(), 0..self.split)
    }

    pub fn d(&self) -> MatrixFq {
        self.slice(self.split..self.matrix.rows(), self.split..self.matrix.cols())
    }
}

pub fn working_block(field: &Arc<FiniteField>, p: &IntervalParams) -> Result<WorkingBlock> {
    if p.r() < 2 {
        return Err(Error::BelowRecursion(p.r()));
    }
    let active = monomial::active_set(p);
    let tails = monomial::top_tails(p);
    let split = tails.len();
    let position: HashMap<&[u32], usize> = tails.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    // Column permutation: top column k takes the partner of row k.
    let perm: Vec<usize> =
        tails.iter().map(|a| position[monomial::complement(p, a).as_slice()]).chain(split..active.len()).collect();
    let s = local_gram(field, &active);
    let rows: Vec<usize> = (0..active.len()).collect();
    Ok(WorkingBlock { matrix: s.submatrix(&rows, &perm), split, tails })
}

/// Computes `C P^{-1} B` exactly and reports whether it vanishes.
pub fn verify_schur_zero(field: &Arc<FiniteField>, p: &IntervalParams) -> Result<bool> {
    let w = working_block(field, p)?;
    let p_inv = w.p().inverse().ok_or(Error::SingularP)?;
    Ok(w.c().mul(&p_inv)?.mul(&w.b())?.is_zero())
}

/// The 0-1 matrix sending each remainder monomial `Y` (rows, remainder
/// order) to `red(Y)` among `M_r(u)` (columns, descending lex).
pub fn reduction_matrix(field: &Arc<FiniteField>, p: &IntervalParams) -> Result<MatrixFq> {
    if p.r() < 2 {
        return Err(Error::BelowRecursion(p.r()));
    }
    let remainder = monomial::remainder_set(p);
    let lower = monomial::lower_monomials(p);
    let col: HashMap<&ExponentVector, usize> = lower.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut r = MatrixFq::zeros(field, remainder.len(), lower.len());
    for (i, y) in remainder.iter().enumerate() {
        let red = monomial::reduce(p.big_q(), y)?;
        r.set(i, col[&red], FieldElement::ONE);
    }
    Ok(r)
}

/// `H_r(u)`: the full Gram matrix of `M_r(u)`.
pub fn lower_gram(field: &Arc<FiniteField>, p: &IntervalParams) -> MatrixFq {
    local_gram(field, &monomial::lower_monomials(p))
}

/// Principal submatrix of the support block indexed by `E_r(v)`.
pub fn e_principal_block(field: &Arc<FiniteField>, p: &IntervalParams) -> MatrixFq {
    local_gram(field, &monomial::e_set(p))
}
