//! The degree-one cup product `μ: Λ²H¹ → H²` as an exact tensor.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, RatMatrix};
use crate::Rat;

/// Position of the pair `(i, j)`, `i < j`, in the lexicographic list of pairs.
pub fn pair_index(b1: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < b1);
    i * (2 * b1 - i - 1) / 2 + (j - i - 1)
}

/// All pairs `i < j < b1` in lexicographic order.
pub fn pairs(b1: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..b1).flat_map(move |i| (i + 1..b1).map(move |j| (i, j)))
}

pub fn pair_count(b1: usize) -> usize {
    b1 * b1.saturating_sub(1) / 2
}

/// Cup product data: Betti numbers `b1`, `b2` and, for each pair `i < j`,
/// the coordinates of `μ(e_i ∧ e_j)` in a basis of `H²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupData {
    b1: usize,
    b2: usize,
    mu: Vec<Vec<Rat>>,
}

impl CupData {
    /// `mu` lists `μ(e_i ∧ e_j)` for `i < j` in lexicographic pair order.
    pub fn new(b1: usize, b2: usize, mu: Vec<Vec<Rat>>) -> Result<Self> {
        if mu.len() != pair_count(b1) {
            return Err(Error::DimensionMismatch { expected: pair_count(b1), found: mu.len() });
        }
        if let Some(v) = mu.iter().find(|v| v.len() != b2) {
            return Err(Error::DimensionMismatch { expected: b2, found: v.len() });
        }
        Ok(Self { b1, b2, mu })
    }

    /// Builds the tensor from sparse `(i, j) ↦ vector` entries; pairs with
    /// `i > j` are stored with the opposite sign, unlisted pairs are zero.
    pub fn from_entries(
        b1: usize,
        b2: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<Rat>)>,
    ) -> Result<Self> {
        let mut mu = alloc::vec![alloc::vec![Rat::zero(); b2]; pair_count(b1)];
        for ((i, j), v) in entries {
            if i == j || i >= b1 || j >= b1 {
                return Err(Error::InvalidParameter(alloc::format!(
                    "cup entry ({}, {}) is not a pair of distinct indices below {}",
                    i, j, b1
                )));
            }
            if v.len() != b2 {
                return Err(Error::DimensionMismatch { expected: b2, found: v.len() });
            }
            let (k, sign) = if i < j {
                (pair_index(b1, i, j), Rat::one())
            } else {
                (pair_index(b1, j, i), -Rat::one())
            };
            for (slot, x) in mu[k].iter_mut().zip(v) {
                *slot += &sign * x;
            }
        }
        Ok(Self { b1, b2, mu })
    }

    /// Free group `F_n`: every cup product vanishes and `H² = 0`.
    pub fn zero(b1: usize) -> Self {
        Self { b1, b2: 0, mu: alloc::vec![Vec::new(); pair_count(b1)] }
    }

    /// Zero tensor with a prescribed (nonzero) `H²`.
    pub fn zero_with_h2(b1: usize, b2: usize) -> Self {
        Self { b1, b2, mu: alloc::vec![alloc::vec![Rat::zero(); b2]; pair_count(b1)] }
    }

    /// Closed orientable surface of genus `g`, basis `x_1, y_1, …, x_g, y_g`
    /// with `x_i ∪ y_i = ω`.
    pub fn surface(g: usize) -> Self {
        let b1 = 2 * g;
        let entries = (0..g).map(|i| ((2 * i, 2 * i + 1), alloc::vec![Rat::one()]));
        Self::from_entries(b1, 1, entries).expect("surface tensor is well formed")
    }

    /// Torus `T^n`: `H²` has the basis `e_i ∧ e_j`.
    pub fn torus(n: usize) -> Self {
        let p = pair_count(n);
        let mu = (0..p)
            .map(|k| {
                let mut v = alloc::vec![Rat::zero(); p];
                v[k] = Rat::one();
                v
            })
            .collect();
        Self { b1: n, b2: p, mu }
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn b2(&self) -> usize {
        self.b2
    }

    /// `μ(e_i ∧ e_j)` for any `i, j`.
    pub fn mu(&self, i: usize, j: usize) -> Vec<Rat> {
        use core::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.mu[pair_index(self.b1, i, j)].clone(),
            Greater => self.mu[pair_index(self.b1, j, i)].iter().map(|x| -x).collect(),
            Equal => alloc::vec![Rat::zero(); self.b2],
        }
    }

    /// Entries in lexicographic pair order.
    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.mu
    }

    pub fn is_zero(&self) -> bool {
        self.mu.iter().flatten().all(Zero::is_zero)
    }

    /// `μ(x ∧ y)` for arbitrary classes `x, y ∈ H¹`.
    pub fn cup(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert!(x.len() == self.b1 && y.len() == self.b1, "class length must equal b1");
        let mut out = alloc::vec![Rat::zero(); self.b2];
        for (k, (i, j)) in pairs(self.b1).enumerate() {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(&self.mu[k]) {
                if !m.is_zero() {
                    *o += &c * m;
                }
            }
        }
        out
    }

    /// The `b2 × b1` matrix of `λ_x = μ(x ∧ ·): H¹ → H²`.
    pub fn lambda(&self, x: &[Rat]) -> Result<RatMatrix> {
        if x.len() != self.b1 {
            return Err(Error::DimensionMismatch { expected: self.b1, found: x.len() });
        }
        let mut m = RatMatrix::zeros(self.b2, self.b1);
        for j in 0..self.b1 {
            for i in 0..self.b1 {
                if i == j || x[i].is_zero() {
                    continue;
                }
                let v = self.mu(i, j);
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        *m.get_mut(k, j) += &x[i] * c;
                    }
                }
            }
        }
        Ok(m)
    }

    /// The tensor as a `b2 × C(b1, 2)` matrix (columns are pairs).
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.b2, self.mu.len(), |k, p| self.mu[p][k].clone())
    }

    /// Dimension of the image of `μ`.
    pub fn rank(&self) -> usize {
        rank(&self.matrix())
    }

    /// Cup data of a product of spaces: `H¹ = H¹_1 ⊕ H¹_2` and
    /// `H² ⊇ H²_1 ⊕ H²_2 ⊕ (H¹_1 ⊗ H¹_2)` (Künneth in degrees ≤ 2).
    pub fn direct_product(&self, other: &Self) -> Self {
        let b1 = self.b1 + other.b1;
        let b2 = self.b2 + other.b2 + self.b1 * other.b1;
        let mut entries = Vec::new();
        for (i, j) in pairs(self.b1) {
            let mut v = alloc::vec![Rat::zero(); b2];
            v[..self.b2].clone_from_slice(&self.mu(i, j));
            entries.push(((i, j), v));
        }
        for (i, j) in pairs(other.b1) {
            let mut v = alloc::vec![Rat::zero(); b2];
            v[self.b2..self.b2 + other.b2].clone_from_slice(&other.mu(i, j));
            entries.push(((self.b1 + i, self.b1 + j), v));
        }
        for i in 0..self.b1 {
            for j in 0..other.b1 {
                let mut v = alloc::vec![Rat::zero(); b2];
                v[self.b2 + other.b2 + i * other.b1 + j] = Rat::one();
                entries.push(((i, self.b1 + j), v));
            }
        }
        Self::from_entries(b1, b2, entries).expect("product tensor is well formed")
    }

    /// Re-expresses the tensor in the basis of `H¹` given by the columns of
    /// the invertible matrix `p`.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<Self> {
        if p.rows() != self.b1 || p.cols() != self.b1 {
            return Err(Error::DimensionMismatch { expected: self.b1, found: p.rows() });
        }
        if rank(p) != self.b1 {
            return Err(Error::InvalidParameter("basis change matrix is singular".into()));
        }
        let cols: Vec<Vec<Rat>> = (0..self.b1).map(|j| p.column(j)).collect();
        let mu = pairs(self.b1).map(|(i, j)| self.cup(&cols[i], &cols[j])).collect();
        Ok(Self { b1: self.b1, b2: self.b2, mu })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn pair_indexing_is_lexicographic() {
        let b1 = 5;
        for (k, (i, j)) in pairs(b1).enumerate() {
            assert_eq!(pair_index(b1, i, j), k);
        }
        assert_eq!(pair_count(5), 10);
        assert_eq!(pair_count(0), 0);
    }

    #[test]
    fn surface_tensor() {
        let c = CupData::surface(2);
        assert_eq!((c.b1(), c.b2()), (4, 1));
        assert_eq!(c.mu(0, 1), alloc::vec![q(1)]);
        assert_eq!(c.mu(1, 0), alloc::vec![q(-1)]);
        assert_eq!(c.mu(2, 3), alloc::vec![q(1)]);
        assert_eq!(c.mu(0, 2), alloc::vec![q(0)]);
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn lambda_matches_cup() {
        let c = CupData::torus(3);
        let x = alloc::vec![q(1), q(2), q(-1)];
        let l = c.lambda(&x).unwrap();
        for j in 0..3 {
            let mut e = alloc::vec![q(0); 3];
            e[j] = q(1);
            assert_eq!(l.column(j), c.cup(&x, &e));
        }
    }

    #[test]
    fn product_of_free_groups() {
        let f2 = CupData::zero(2);
        let p = f2.direct_product(&f2);
        assert_eq!((p.b1(), p.b2()), (4, 4));
        assert!(p.mu(0, 1).iter().all(Zero::is_zero));
        assert!(!p.mu(0, 2).iter().all(Zero::is_zero));
    }

    #[test]
    fn bad_entries_rejected() {
        assert!(CupData::from_entries(2, 1, [((0, 0), alloc::vec![q(1)])]).is_err());
        assert!(CupData::new(3, 1, alloc::vec![alloc::vec![q(1)]]).is_err());
    }
}
