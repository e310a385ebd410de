use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// Dense rational matrix. Entries are `BigRational`, which keeps every value
/// in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

macro_rules! shared_matrix_impl {
    ($ty:ident, $elem:ty) => {
        impl $ty {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self {
                    rows,
                    cols,
                    data: (0..rows * cols).map(|_| <$elem>::zero()).collect(),
                }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m.data[i * n + i] = <$elem>::one();
                }
                m
            }

            pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> $elem) -> Self {
                let mut data = Vec::with_capacity(rows * cols);
                for i in 0..rows {
                    for j in 0..cols {
                        data.push(f(i, j));
                    }
                }
                Self { rows, cols, data }
            }

            /// Builds a matrix from row vectors; all rows must have length `cols`.
            pub fn from_rows(rows: Vec<Vec<$elem>>, cols: usize) -> Result<Self> {
                let r = rows.len();
                let mut data = Vec::with_capacity(r * cols);
                for row in rows {
                    if row.len() != cols {
                        return Err(Error::DimensionMismatch {
                            expected: cols,
                            found: row.len(),
                        });
                    }
                    data.extend(row);
                }
                Ok(Self { rows: r, cols, data })
            }

            #[inline]
            pub fn rows(&self) -> usize {
                self.rows
            }

            #[inline]
            pub fn cols(&self) -> usize {
                self.cols
            }

            #[inline]
            pub fn is_square(&self) -> bool {
                self.rows == self.cols
            }

            #[inline]
            pub fn get(&self, i: usize, j: usize) -> &$elem {
                &self.data[i * self.cols + j]
            }

            #[inline]
            pub fn get_mut(&mut self, i: usize, j: usize) -> &mut $elem {
                &mut self.data[i * self.cols + j]
            }

            #[inline]
            pub fn set(&mut self, i: usize, j: usize, value: $elem) {
                self.data[i * self.cols + j] = value;
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn column(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self.get(i, j).clone()).collect()
            }

            pub fn to_rows(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i).to_vec()).collect()
            }

            pub fn entries(&self) -> &[$elem] {
                &self.data
            }

            pub fn is_zero(&self) -> bool {
                self.data.iter().all(Zero::is_zero)
            }

            pub fn transpose(&self) -> Self {
                Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
            }

            pub fn trace(&self) -> $elem {
                let n = self.rows.min(self.cols);
                (0..n).fold(<$elem>::zero(), |acc, i| acc + self.get(i, i))
            }

            pub fn scale(&self, s: &$elem) -> Self {
                Self {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().map(|x| x * s).collect(),
                }
            }

            pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
                if self.cols != rhs.rows {
                    return Err(Error::DimensionMismatch {
                        expected: self.cols,
                        found: rhs.rows,
                    });
                }
                let mut out = Self::zeros(self.rows, rhs.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..rhs.cols {
                            let b = rhs.get(k, j);
                            if !b.is_zero() {
                                *out.get_mut(i, j) += a * b;
                            }
                        }
                    }
                }
                Ok(out)
            }

            pub fn mul_vec(&self, v: &[$elem]) -> Vec<$elem> {
                assert_eq!(v.len(), self.cols, "vector length must equal column count");
                (0..self.rows)
                    .map(|i| {
                        self.row(i)
                            .iter()
                            .zip(v)
                            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                            .fold(<$elem>::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect()
            }

            pub fn pow(&self, mut e: u32) -> Result<Self> {
                if !self.is_square() {
                    return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
                }
                let mut base = self.clone();
                let mut acc = Self::identity(self.rows);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                Ok(acc)
            }

            /// Block-diagonal sum of square or rectangular blocks.
            pub fn block_sum(blocks: &[Self]) -> Self {
                let rows = blocks.iter().map(|b| b.rows).sum();
                let cols = blocks.iter().map(|b| b.cols).sum();
                let mut out = Self::zeros(rows, cols);
                let (mut r0, mut c0) = (0, 0);
                for b in blocks {
                    for i in 0..b.rows {
                        for j in 0..b.cols {
                            out.set(r0 + i, c0 + j, b.get(i, j).clone());
                        }
                    }
                    r0 += b.rows;
                    c0 += b.cols;
                }
                out
            }

            #[allow(dead_code)]
            pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
                if a == b {
                    return;
                }
                for j in 0..self.cols {
                    self.data.swap(a * self.cols + j, b * self.cols + j);
                }
            }

            #[allow(dead_code)]
            pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
                if a == b {
                    return;
                }
                for i in 0..self.rows {
                    self.data.swap(i * self.cols + a, i * self.cols + b);
                }
            }

            /// row[dst] -= q * row[src]
            #[allow(dead_code)]
            pub(crate) fn row_sub_multiple(&mut self, dst: usize, src: usize, q: &$elem) {
                if q.is_zero() {
                    return;
                }
                for j in 0..self.cols {
                    let s = &self.data[src * self.cols + j];
                    if !s.is_zero() {
                        let t = s * q;
                        self.data[dst * self.cols + j] -= t;
                    }
                }
            }

            /// col[dst] -= q * col[src]
            #[allow(dead_code)]
            pub(crate) fn col_sub_multiple(&mut self, dst: usize, src: usize, q: &$elem) {
                if q.is_zero() {
                    return;
                }
                for i in 0..self.rows {
                    let s = &self.data[i * self.cols + src];
                    if !s.is_zero() {
                        let t = s * q;
                        self.data[i * self.cols + dst] -= t;
                    }
                }
            }

            #[allow(dead_code)]
            pub(crate) fn negate_row(&mut self, i: usize) {
                for j in 0..self.cols {
                    let v = &mut self.data[i * self.cols + j];
                    *v = -core::mem::take(v);
                }
            }
        }

        impl<'a> Mul<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn mul(self, rhs: &'a $ty) -> $ty {
                self.try_mul(rhs).expect("matrix dimensions must agree")
            }
        }

        impl<'a> Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix shapes must agree");
                $ty {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
                }
            }
        }

        impl<'a> Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix shapes must agree");
                $ty {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
                }
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().map(|a| -a).collect(),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("[")?;
                for i in 0..self.rows {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for (j, x) in self.row(i).iter().enumerate() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", x)?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
        }
    };
}

shared_matrix_impl!(IntMatrix, Int);
shared_matrix_impl!(RatMatrix, Rat);

impl IntMatrix {
    /// Convenience constructor from small integer literals.
    pub fn from_i64<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_fn(rows.len(), C, |i, j| Int::from(rows[i][j]))
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| Rat::from_integer(self.get(i, j).clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.to_rows();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(d) if d.abs().is_one())
    }
}

impl RatMatrix {
    pub fn from_i64<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_fn(rows.len(), C, |i, j| Rat::from_integer(Int::from(rows[i][j])))
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        m.to_rational()
    }
}
