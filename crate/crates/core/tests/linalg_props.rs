use formality_core::linalg::{
    char_poly, cokernel, cyclotomic, is_cyclotomic_product, jordan_block_at_one, rank, smith_normal_form, IntMatrix,
    IntPolynomial, JordanAtOne,
};
use formality_core::Int;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-bound..=bound, rows * cols)
        .prop_map(move |v| IntMatrix::from_fn(rows, cols, |i, j| Int::from(v[i * cols + j])))
}

fn any_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| matrix(r, c, bound))
}

fn square(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(move |n| matrix(n, n, bound))
}

/// Product of elementary row operations, described by `(i, j, k)` triples.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            for c in 0..n {
                let v = -m.get(i, c).clone();
                m.set(i, c, v);
            }
            continue;
        }
        for c in 0..n {
            let v = m.get(i, c) + Int::from(k) * m.get(j, c);
            m.set(i, c, v);
        }
    }
    m
}

/// `rank((M − I)^k)` for `k = 1..=n`, read off directly.
fn jordan_oracle(m: &IntMatrix) -> JordanAtOne {
    let n = m.rows();
    let s = (m - &IntMatrix::identity(n)).to_rational();
    let mut ranks = vec![rank(&s)];
    let mut p = s.clone();
    for _ in 1..n {
        p = &p * &s;
        ranks.push(rank(&p));
    }
    if ranks[0] == n {
        JordanAtOne::NoEigenvalueOne
    } else if ranks.windows(2).all(|w| w[0] == w[1]) {
        JordanAtOne::AllBlocksSizeOne
    } else {
        JordanAtOne::BlockOfSizeGeTwo
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_identities(m in any_matrix(6, 12)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert!(s.divisors.iter().all(|d| d.is_positive()));
        for w in s.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if m.is_square() {
            let prod: Int = if s.divisors.len() == m.rows() { s.divisors.iter().product() } else { Int::zero() };
            prop_assert_eq!(m.det().unwrap().abs(), prod);
        }
    }

    #[test]
    fn cokernel_is_unimodular_invariant(
        m in any_matrix(5, 8),
        left in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..12),
        right in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..12),
    ) {
        let p = unimodular(m.rows(), &left);
        let q = unimodular(m.cols(), &right);
        prop_assert_eq!(cokernel(&(&(&p * &m) * &q)), cokernel(&m));
    }

    #[test]
    fn cayley_hamilton(m in square(6, 7)) {
        let p = char_poly(&m).unwrap();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(m.rows()));
        prop_assert!(p.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn cyclotomic_products_are_multiplicative(
        f_idx in proptest::collection::vec(1usize..=12, 0..3),
        g_idx in proptest::collection::vec(1usize..=12, 0..3),
        f_extra in prop::option::of(-3i64..=3),
        g_extra in prop::option::of(-3i64..=3),
    ) {
        let build = |idx: &[usize], extra: Option<i64>| {
            let mut p = IntPolynomial::one();
            for &k in idx {
                p = &p * &cyclotomic(k);
            }
            // t² + a t + 1 is cyclotomic iff |a| ≤ 2
            if let Some(a) = extra {
                p = &p * &IntPolynomial::from_i64(&[1, a, 1]);
            }
            p
        };
        let f = build(&f_idx, f_extra);
        let g = build(&g_idx, g_extra);
        let fg = &f * &g;
        prop_assert_eq!(
            is_cyclotomic_product(&fg).unwrap(),
            is_cyclotomic_product(&f).unwrap() && is_cyclotomic_product(&g).unwrap()
        );
    }

    #[test]
    fn jordan_matches_power_ranks(m in square(5, 2)) {
        prop_assert_eq!(jordan_block_at_one(&m).unwrap(), jordan_oracle(&m));
    }

    #[test]
    fn jordan_on_unipotent_conjugates(
        ops in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..8),
        upper in proptest::collection::vec(-1i64..=1, 6),
    ) {
        // an upper unitriangular matrix conjugated by a unimodular one
        let mut u = IntMatrix::identity(4);
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                u.set(i, j, Int::from(upper[k]));
                k += 1;
            }
        }
        let p = unimodular(4, &ops);
        let s = smith_normal_form(&p);
        // p⁻¹ = V D⁻¹ U with D = ±I
        let inv = &(&s.v * &s.d) * &s.u;
        prop_assert!((&inv * &p) == IntMatrix::identity(4));
        let m = &(&inv * &u) * &p;
        prop_assert_eq!(jordan_block_at_one(&m).unwrap(), jordan_oracle(&m));
        let expected = if upper.iter().all(|&x| x == 0) { JordanAtOne::AllBlocksSizeOne } else { JordanAtOne::BlockOfSizeGeTwo };
        prop_assert_eq!(jordan_block_at_one(&m).unwrap(), expected);
    }
}

#[test]
fn det_of_unimodular_product_is_unit() {
    let p = unimodular(4, &[(0, 1, 3), (2, 3, -2), (1, 1, 0), (3, 0, 5)]);
    assert!(p.det().unwrap().abs().is_one());
}
