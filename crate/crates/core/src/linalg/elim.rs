//! Fraction-free Gaussian elimination over the rationals.
//!
//! Rows are first cleared of denominators, then reduced with Bareiss'
//! algorithm so every intermediate value is an integer minor of the input.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use crate::{Int, Rat};

/// Rank of a rational matrix together with a basis of its right kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<Vec<Rat>>,
}

/// Integer row echelon form produced by Bareiss elimination.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<Int>>,
    pub pivots: Vec<usize>,
}

pub(crate) fn clear_denominators(row: &[Rat]) -> Vec<Int> {
    let lcm = row
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Bareiss elimination on integer rows of equal length `cols`. Only the
/// first `limit` columns are used as pivot columns.
pub(crate) fn bareiss(mut a: Vec<Vec<Int>>, cols: usize, limit: usize) -> Echelon {
    let n = a.len();
    let mut prev = Int::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..limit.min(cols) {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                // (p * x - 0 * y) / prev
                if !prev.is_one() || !pivot_row[c].is_one() {
                    for x in row[c + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x = &pivot_row[c] * &*x / &prev;
                        }
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = Int::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

fn echelon_of(m: &RatMatrix) -> Echelon {
    let rows = (0..m.rows()).map(|i| clear_denominators(m.row(i))).collect();
    bareiss(rows, m.cols(), m.cols())
}

/// Back substitution in an echelon system. `value_of_free` supplies the
/// values of non-pivot unknowns; `rhs` (if any) is the augmented column.
fn back_substitute(
    e: &Echelon,
    unknowns: usize,
    free_values: &[Rat],
    rhs: Option<&[Int]>,
) -> Vec<Rat> {
    let mut x = free_values.to_vec();
    for (i, &p) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[i];
        let mut acc = match rhs {
            Some(b) => Rat::from_integer(b[i].clone()),
            None => Rat::zero(),
        };
        for j in p + 1..unknowns {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= &x[j] * Rat::from_integer(row[j].clone());
            }
        }
        x[p] = acc / Rat::from_integer(row[p].clone());
    }
    x
}

/// Exact rank over the rationals and a basis of the right kernel.
///
/// Kernel vectors are indexed by the free columns in increasing order; the
/// vector for free column `f` has a `1` in position `f` and zeros in every
/// other free position.
pub fn rank_kernel(m: &RatMatrix) -> RankKernel {
    let e = echelon_of(m);
    let cols = m.cols();
    let rank = e.pivots.len();
    let mut is_pivot = alloc::vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut free = alloc::vec![Rat::zero(); cols];
            free[f] = Rat::one();
            back_substitute(&e, cols, &free, None)
        })
        .collect();
    RankKernel { rank, kernel }
}

pub fn rank(m: &RatMatrix) -> usize {
    echelon_of(m).pivots.len()
}

/// Rank of a list of rational vectors of common length `dim`.
pub fn rank_of_vectors(vectors: &[Vec<Rat>], dim: usize) -> usize {
    let rows = vectors.iter().map(|v| clear_denominators(v)).collect();
    bareiss(rows, dim, dim).pivots.len()
}

/// One particular solution of `m x = rhs`, with every free unknown set to
/// zero, or `None` when the system is inconsistent.
pub fn solve(m: &RatMatrix, rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rhs.len(), m.rows(), "right-hand side length must equal row count");
    let cols = m.cols();
    let rows = (0..m.rows())
        .map(|i| {
            let mut r: Vec<Rat> = m.row(i).to_vec();
            r.push(rhs[i].clone());
            clear_denominators(&r)
        })
        .collect();
    let mut e = bareiss(rows, cols + 1, cols + 1);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let b: Vec<Int> = e.rows.iter_mut().map(|r| r.pop().unwrap_or_default()).collect();
    let zeros = alloc::vec![Rat::zero(); cols];
    Some(back_substitute(&e, cols, &zeros, Some(&b)))
}

/// Incrementally maintained basis of a subspace of `Q^dim`, kept in reduced
/// row echelon form so membership tests are a single reduction.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    /// (pivot column, normalized row with a 1 at the pivot)
    rows: Vec<(usize, Vec<Rat>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current basis; the residual is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, r));
        true
    }

    pub fn basis(&self) -> Vec<Vec<Rat>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn unipotent_minus_identity() {
        let m = RatMatrix::from_i64(&[[0, 1], [0, 0]]);
        let rk = rank_kernel(&m);
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel, alloc::vec![alloc::vec![q(1), q(0)]]);
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let rk = rank_kernel(&RatMatrix::zeros(3, 3));
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 3);
    }

    #[test]
    fn rank_one_kernel_is_multiple_of_two_minus_one() {
        let m = RatMatrix::from_i64(&[[2, 4], [1, 2]]);
        let rk = rank_kernel(&m);
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel.len(), 1);
        let k = &rk.kernel[0];
        // proportional to (2, -1)
        assert_eq!(&k[0] * q(-1), &k[1] * q(2));
        assert!(m.mul_vec(k).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMatrix::from_i64(&[[1, 2], [2, 4]]);
        let x = solve(&m, &[q(3), q(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), alloc::vec![q(3), q(6)]);
        assert!(solve(&m, &[q(3), q(7)]).is_none());
    }

    #[test]
    fn rational_entries_are_handled() {
        let half = Rat::new(1.into(), 2.into());
        let m = RatMatrix::from_rows(
            alloc::vec![alloc::vec![half.clone(), q(1)], alloc::vec![q(1), q(2)]],
            2,
        )
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&[q(1), q(1), q(0)]));
        assert!(b.insert(&[q(0), q(1), q(1)]));
        assert!(!b.insert(&[q(1), q(2), q(1)]));
        assert!(b.contains(&[q(1), q(0), q(-1)]));
        assert!(!b.contains(&[q(0), q(0), q(1)]));
        assert_eq!(b.dim(), 2);
    }
}
