//! Table-driven arithmetic in GF(q), q = p^e <= 256.
//!
//! Elements are indexed `0..q`. An index packs the coefficients of a
//! polynomial of degree `< e` over GF(p) in base p, constant term in the
//! least significant digit. Index 0 is zero and index 1 is one.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(transparent)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw constructor; callers guarantee `index < q`.
    #[inline]
    pub(crate) fn from_raw(index: u8) -> Self {
        FieldElement(index)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Immutable operation tables for one finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    digits: Vec<u8>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

/// Splits `q` as `p^e`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Polynomials over GF(p) as coefficient vectors, constant term first.

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dl = den.len();
    let lead_inv = mod_inv(*den.last().unwrap(), p);
    while r.len() >= dl {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - dl;
            for (i, &d) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - f * d % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero residue mod a prime")
}

/// Digits of `n` in base `p`, little endian, padded to `len`.
fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = n % p;
        n /= p;
    }
    d
}

fn monic(coeffs_low: Vec<u32>) -> Vec<u32> {
    let mut m = coeffs_low;
    m.push(1);
    m
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let factor = monic(digits(low, p, d));
            if poly_rem(poly, &factor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `e` over GF(p), with
/// candidates compared coefficient by coefficient from the constant term up.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let len = e as usize;
    // Counting in base p with the constant term as the most significant
    // digit enumerates candidates in the required order.
    (0..p.pow(e))
        .map(|n| {
            let mut c = digits(n, p, len);
            c.reverse();
            monic(c)
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// Builds GF(q) for a prime power `2 <= q <= 256`.
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::TooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = if e == 1 { vec![0, 1] } else { smallest_irreducible(p, e) };
        let qs = q as usize;
        let len = e as usize;
        let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c) as u8;

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a, p, len);
            for b in 0..q {
                let db = digits(b, p, len);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum);

                let mut prod = vec![0u32; 2 * len - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly_rem(&prod, &modulus, p);
                red.resize(len, 0);
                mul[(a * q + b) as usize] = encode(&red);
            }
        }

        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .expect("nonzero element without inverse: modulus is reducible") as u8;
            }
        }

        let digits = (0..q).flat_map(|a| digits(a, p, len)).map(|d| d as u8).collect();

        Ok(FiniteField { p, e, q, modulus, add, mul, neg, inv, digits })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn is_prime(&self) -> bool {
        self.e == 1
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first; monic of degree `e`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `Q = q - 1`, the order of the multiplicative group.
    pub fn q_minus_one(&self) -> u32 {
        self.q - 1
    }

    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index as u8))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| FieldElement(i as u8))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn minus_one(&self) -> FieldElement {
        self.neg(FieldElement::ONE)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q as usize + b.index()])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| FieldElement(self.inv[a.index()]))
    }

    /// `a^d` with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, d: u64) -> FieldElement {
        if d == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        // a^(q-1) = 1 for nonzero a.
        let mut e = (d - 1) % self.q_minus_one() as u64 + 1;
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Embeds a small integer via repeated addition of one.
    pub fn from_integer(&self, n: u64) -> FieldElement {
        let k = n % self.p as u64;
        (0..k).fold(FieldElement::ZERO, |acc, _| self.add(acc, FieldElement::ONE))
    }

    /// Row of the multiplication table for `a`, indexed by element index.
    #[inline]
    pub(crate) fn mul_row(&self, a: FieldElement) -> &[u8] {
        let q = self.q as usize;
        &self.mul[a.index() * q..(a.index() + 1) * q]
    }

    #[inline]
    pub(crate) fn add_row(&self, a: FieldElement) -> &[u8] {
        let q = self.q as usize;
        &self.add[a.index() * q..(a.index() + 1) * q]
    }

    /// Base-p coefficients of `a`, constant term first.
    #[inline]
    pub(crate) fn digits_of(&self, a: FieldElement) -> &[u8] {
        let e = self.e as usize;
        &self.digits[a.index() * e..(a.index() + 1) * e]
    }

    /// Element whose coefficients are the given integers reduced mod p.
    pub(crate) fn reduce_digit_sums(&self, sums: &[u64]) -> FieldElement {
        let p = self.p as u64;
        let index = sums.iter().rev().fold(0u64, |acc, &s| acc * p + s % p);
        FieldElement(index as u8)
    }

    /// Power sum `sum_{x in F_q} x^d`, computed by summation (`0^0 = 1`).
    pub fn sigma(&self, d: u64) -> FieldElement {
        self.elements().fold(FieldElement::ZERO, |acc, x| self.add(acc, self.pow(x, d)))
    }

    /// Closed form of [`sigma`](Self::sigma): `-1` when `d > 0` and
    /// `q - 1 | d`, zero otherwise.
    pub fn sigma_closed(&self, d: u64) -> FieldElement {
        if d > 0 && d.is_multiple_of(self.q_minus_one() as u64) {
            self.minus_one()
        } else {
            FieldElement::ZERO
        }
    }
}
