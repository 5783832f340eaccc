//! Standard representatives of P^m(F_q).
//!
//! Points are listed stratum by stratum: first by the position `j` of the
//! first nonzero coordinate (which is 1), then lexicographically by element
//! index over the free coordinates `j+1..=m`.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    /// Accepts only standard representatives.
    pub fn new(coords: Vec<FieldElement>) -> Option<Self> {
        let first = coords.iter().find(|c| !c.is_zero())?;
        (*first == FieldElement::ONE).then_some(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Position of the leading 1.
    pub fn stratum(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }
}

/// `(q^(m+1) - 1) / (q - 1)`.
pub fn point_count(q: u32, m: u32) -> Result<u128> {
    if m == 0 {
        return Err(Error::ZeroDimension);
    }
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    // 1 + q + ... + q^m, checked.
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for i in 0..=m {
        total = total.checked_add(power).ok_or(Error::Overflow { q, m })?;
        if i < m {
            power = power.checked_mul(q as u128).ok_or(Error::Overflow { q, m })?;
        }
    }
    Ok(total)
}

pub fn enumerate_points(field: &FiniteField, m: u32) -> Vec<ProjectivePoint> {
    let q = field.order() as usize;
    let len = m as usize + 1;
    let mut points = Vec::new();
    for j in 0..len {
        // Counting in base q with coordinate j+1 as the most significant
        // digit walks the free coordinates in lexicographic order.
        for mut n in 0..q.pow((len - j - 1) as u32) {
            let mut coords = vec![FieldElement::ZERO; len];
            coords[j] = FieldElement::ONE;
            for slot in coords[j + 1..].iter_mut().rev() {
                *slot = FieldElement::from_raw((n % q) as u8);
                n /= q;
            }
            points.push(ProjectivePoint { coords });
        }
    }
    points
}
