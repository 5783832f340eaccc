//! Brute-force linear-algebra oracles. Nothing here uses the combinatorial
//! formulas: every number comes from evaluating monomials at the points of
//! P^m(F_q) and eliminating over GF(q).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::linalg::{full_monomial_matrix, generator_matrix};

/// Code dimension and Gram rank of `PRM(q, m, v)` from its full monomial
/// evaluation matrix `G1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HullOracle {
    pub code_dim: usize,
    pub gram_rank: usize,
    pub hull_dim: usize,
}

/// `rank(G1)`.
pub fn dim_oracle(field: &Arc<FiniteField>, m: u32, v: u32) -> usize {
    full_monomial_matrix(field, m, v).distinct_rows().rank()
}

/// `k = rank(G1)` and `dim Hull = k - rank(G1 G1^T)`.
///
/// Repeated rows of `G1` are dropped first. The deduplicated matrix has the
/// same row space and `G1` is a full-column-rank selection of it, so both
/// ranks are unchanged.
pub fn hull_oracle(field: &Arc<FiniteField>, m: u32, v: u32) -> HullOracle {
    let g1 = full_monomial_matrix(field, m, v).distinct_rows();
    let code_dim = g1.rank();
    let gram_rank = g1.gram().rank();
    HullOracle { code_dim, gram_rank, hull_dim: code_dim - gram_rank }
}

/// Whether `G_v G_mu^T = 0` for `mu = m(q-1) - v`.
pub fn dual_product_vanishes(field: &Arc<FiniteField>, m: u32, v: u32) -> Result<bool> {
    let top = m * field.q_minus_one();
    if v < 1 || v >= top {
        return Err(Error::DegreeOutOfRange { v, max: top - 1 });
    }
    let gv = generator_matrix(field, m, v)?;
    let gmu = generator_matrix(field, m, top - v)?;
    Ok(gv.mul(&gmu.transpose())?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_codes() {
        let f = Arc::new(FiniteField::new(2).unwrap());
        // The [7,3] simplex code is self-orthogonal.
        assert_eq!(hull_oracle(&f, 2, 1), HullOracle { code_dim: 3, gram_rank: 0, hull_dim: 3 });
        let f3 = Arc::new(FiniteField::new(3).unwrap());
        // v = 0: the all-ones word of length 13, <1,1> = 1.
        assert_eq!(hull_oracle(&f3, 2, 0), HullOracle { code_dim: 1, gram_rank: 1, hull_dim: 0 });
        // Beyond the top degree the code is F_3^13.
        assert_eq!(hull_oracle(&f3, 2, 5).code_dim, 13);
        assert_eq!(dim_oracle(&f3, 2, 1), 3);
    }

    #[test]
    fn duality_on_small_codes() {
        let f = Arc::new(FiniteField::new(4).unwrap());
        assert!(dual_product_vanishes(&f, 2, 1).unwrap());
        assert!(dual_product_vanishes(&f, 2, 3).unwrap());
        assert!(dual_product_vanishes(&f, 2, 6).is_err());
    }
}
