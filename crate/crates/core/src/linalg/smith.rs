use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::Int;

/// Smith normal form `U * M * V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `d`, each dividing the next.
    pub divisors: Vec<Int>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

fn min_abs_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                _ => {
                    if x.abs().is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// Smith normal form over the integers.
///
/// Pivots are chosen as the entry of least absolute value in the remaining
/// block, which keeps coefficient growth in check.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.row_sub_multiple(i, t, &q);
                u.row_sub_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.col_sub_multiple(j, t, &q);
                v.col_sub_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                // A remainder survived: move the smallest entry of the pivot
                // row/column into the pivot and repeat.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = a.get(i, t);
                    if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = a.get(t, j);
                    if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let p = a.get(t, t).clone();
            let bad_row = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p))
            });
            match bad_row {
                Some(i) => {
                    let minus_one = -Int::one();
                    a.row_sub_multiple(t, i, &minus_one);
                    u.row_sub_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }

        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let divisors = (0..rows.min(cols))
        .map(|i| a.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithForm { u, d: a, v, divisors }
}

/// Finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with
/// `t_i | t_{i+1}` and every `t_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// Builds the group from an invariant-factor list, dropping unit factors.
    pub fn from_invariants(rank: usize, factors: impl IntoIterator<Item = Int>) -> Self {
        let mut torsion: Vec<Int> = factors.into_iter().map(|d| d.abs()).filter(|d| *d > Int::one()).collect();
        torsion.sort();
        Self { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Direct sum; torsion is re-normalised into invariant-factor form.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let all: Vec<Int> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let diag = IntMatrix::block_sum(
            &all.iter()
                .map(|d| IntMatrix::from_fn(1, 1, |_, _| d.clone()))
                .collect::<Vec<_>>(),
        );
        let snf = smith_normal_form(&diag);
        Self::from_invariants(self.rank + other.rank, snf.divisors)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{}", r)),
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{}", t));
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// The cokernel `Z^rows / im(M)`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    AbelianGroup::from_invariants(m.rows() - snf.rank(), snf.divisors)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn check_identity(m: &IntMatrix, s: &SmithForm) {
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        for w in s.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn identity_minus_a3() {
        let m = IntMatrix::from_i64(&[[-4, 1], [-1, 1]]);
        let s = smith_normal_form(&m);
        check_identity(&m, &s);
        assert_eq!(s.divisors, ints(&[1, 3]));
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).divisors, ints(&[1, 1, 1]));
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.divisors.is_empty());
        check_identity(&z, &s);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) has invariant factors (1, 6)
        let m = IntMatrix::from_i64(&[[2, 0], [0, 3]]);
        let s = smith_normal_form(&m);
        check_identity(&m, &s);
        assert_eq!(s.divisors, ints(&[1, 6]));
    }

    #[test]
    fn cokernels() {
        let g = cokernel(&IntMatrix::from_i64(&[[-4, 1], [-1, 1]]));
        assert_eq!(g, AbelianGroup { rank: 0, torsion: ints(&[3]) });
        assert_eq!(cokernel(&IntMatrix::zeros(2, 2)), AbelianGroup::free(2));
        assert!(cokernel(&IntMatrix::identity(2)).is_trivial());
        let g = cokernel(&IntMatrix::from_i64(&[[2, 0], [0, 2]]));
        assert_eq!(g.torsion, ints(&[2, 2]));
    }

    #[test]
    fn display() {
        let g = AbelianGroup { rank: 2, torsion: ints(&[3, 3]) };
        assert_eq!(alloc::format!("{}", g), "Z^2 ⊕ Z/3 ⊕ Z/3");
        assert_eq!(alloc::format!("{}", AbelianGroup::trivial()), "0");
        assert_eq!(alloc::format!("{}", AbelianGroup::free(1)), "Z");
    }

    #[test]
    fn direct_sum_renormalises() {
        let a = AbelianGroup { rank: 1, torsion: ints(&[2]) };
        let b = AbelianGroup { rank: 0, torsion: ints(&[3]) };
        assert_eq!(a.direct_sum(&b), AbelianGroup { rank: 1, torsion: ints(&[6]) });
    }
}
