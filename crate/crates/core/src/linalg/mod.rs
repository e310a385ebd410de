//! Exact integer and rational linear algebra.

mod elim;
mod matrix;
mod poly;
mod smith;

pub use elim::{rank, rank_kernel, rank_of_vectors, solve, EchelonBasis, RankKernel};
pub use matrix::{IntMatrix, RatMatrix};
pub use poly::{
    char_poly, cyclotomic, factor_monic, is_cyclotomic_product, totient, IntPolynomial, PolyFactor,
};
pub use smith::{cokernel, smith_normal_form, AbelianGroup, SmithForm};

use crate::error::{Error, Result};

/// Jordan structure of a square integer matrix at the eigenvalue 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JordanAtOne {
    NoEigenvalueOne,
    AllBlocksSizeOne,
    BlockOfSizeGeTwo,
}

/// Decides the Jordan structure at 1 from `rank(M − I)` and `rank((M − I)²)`.
pub fn jordan_block_at_one(m: &IntMatrix) -> Result<JordanAtOne> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let shifted = (m - &IntMatrix::identity(n)).to_rational();
    let r1 = rank(&shifted);
    if r1 == n {
        return Ok(JordanAtOne::NoEigenvalueOne);
    }
    let r2 = rank(&(&shifted * &shifted));
    Ok(if r1 == r2 {
        JordanAtOne::AllBlocksSizeOne
    } else {
        JordanAtOne::BlockOfSizeGeTwo
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_examples() {
        let heis = IntMatrix::from_i64(&[[1, 1], [0, 1]]);
        assert_eq!(jordan_block_at_one(&heis).unwrap(), JordanAtOne::BlockOfSizeGeTwo);
        assert_eq!(
            jordan_block_at_one(&IntMatrix::identity(3)).unwrap(),
            JordanAtOne::AllBlocksSizeOne
        );
        let minus = IntMatrix::from_i64(&[[-1, 0], [0, -1]]);
        assert_eq!(jordan_block_at_one(&minus).unwrap(), JordanAtOne::NoEigenvalueOne);
        assert!(jordan_block_at_one(&IntMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn determinant() {
        let m = IntMatrix::from_i64(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        assert_eq!(m.det().unwrap(), 18.into());
        let swap = IntMatrix::from_i64(&[[0, 1], [1, 0]]);
        assert_eq!(swap.det().unwrap(), (-1).into());
    }
}
