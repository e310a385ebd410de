use formality_core::cdga::{
    cohomology, exterior_algebra, extract_cup_data, heisenberg, massey_triple, massey_triple_with_offsets, surface,
    torus, wedge_of_circles, FiniteCdga,
};
use formality_core::Rat;
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Generators a, b, c, z with `dz = α ab + β ac + γ bc` and `d = 0` elsewhere.
fn nilpotent(alpha: i64, beta: i64, gamma: i64) -> FiniteCdga {
    let dz: Vec<(Vec<usize>, Rat)> =
        [(vec![0, 1], alpha), (vec![0, 2], beta), (vec![1, 2], gamma)].into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, q(c))).collect();
    exterior_algebra(&["a", "b", "c", "z"], &[vec![], vec![], vec![], dz]).unwrap()
}

fn models() -> Vec<FiniteCdga> {
    vec![heisenberg(), torus(3).unwrap(), surface(2).unwrap(), wedge_of_circles(3).unwrap(), nilpotent(1, 0, 1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nilpotent_models_are_valid(alpha in -2i64..=2, beta in -2i64..=2, gamma in -2i64..=2) {
        let a = nilpotent(alpha, beta, gamma);
        prop_assert_eq!(a.validate(), Ok(()));
        let h = cohomology(&a);
        // Euler characteristic of an exterior algebra on 4 generators is 0
        let chi: i64 = h.betti().iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi, 0);
    }

    #[test]
    fn massey_verdict_ignores_particular_solutions(
        alpha in -2i64..=2, beta in -2i64..=2, gamma in -2i64..=2,
        i in 0usize..3, j in 0usize..3, k in 0usize..3,
        y in proptest::collection::vec(-3i64..=3, 3),
        z in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let a = nilpotent(alpha, beta, gamma);
        let h = cohomology(&a);
        let b1 = h.dim(1);
        let classes: Vec<_> = (0..b1).map(|t| h.basis_class(&a, 1, t).unwrap()).collect();
        let (i, j, k) = (i % b1, j % b1, k % b1);
        let base = massey_triple(&a, &h, [&classes[i], &classes[j], &classes[k]]).unwrap();
        // offsets are degree-1 cocycles: combinations of the class representatives
        let combo = |w: &[i64]| {
            let mut v = a.zero_element();
            for (t, c) in classes.iter().enumerate() {
                for (s, r) in v.iter_mut().zip(&c.representative) {
                    *s += q(w[t % w.len()]) * r;
                }
            }
            v
        };
        let (yo, zo) = (combo(&y), combo(&z));
        let moved = massey_triple_with_offsets(&a, &h, [&classes[i], &classes[j], &classes[k]], Some(&yo), Some(&zo)).unwrap();
        prop_assert_eq!(base.defined, moved.defined);
        prop_assert_eq!(base.vanishes, moved.vanishes);
        prop_assert_eq!(base.indeterminacy_dim, moved.indeterminacy_dim);
    }

    #[test]
    fn cup_is_bilinear_and_graded_commutative(
        m in 0usize..5,
        x in proptest::collection::vec(-3i64..=3, 6),
        y in proptest::collection::vec(-3i64..=3, 6),
        s in -3i64..=3,
    ) {
        let a = &models()[m];
        let h = cohomology(a);
        let b1 = h.dim(1);
        if b1 == 0 || a.top_degree() < 2 {
            return Ok(());
        }
        let class = |w: &[i64]| h.class(a, 1, w[..b1].iter().map(|&c| q(c)).collect()).unwrap();
        let (cx, cy) = (class(&x), class(&y));
        let xy = h.cup(a, &cx, &cy).unwrap();
        let yx = h.cup(a, &cy, &cx).unwrap();
        for (p, r) in xy.coords.iter().zip(&yx.coords) {
            prop_assert_eq!(p, &-r);
        }
        let sum: Vec<i64> = x.iter().zip(&y).map(|(p, r)| s * p + r).collect();
        let lhs = h.cup(a, &class(&sum), &cy).unwrap();
        let rhs: Vec<Rat> = xy.coords.iter().map(|c| q(s) * c).collect();
        prop_assert_eq!(lhs.coords, rhs);
    }
}

#[test]
fn zero_differential_massey_products_vanish() {
    for a in [torus(3).unwrap(), surface(2).unwrap(), wedge_of_circles(3).unwrap(), nilpotent(0, 0, 0)] {
        let h = cohomology(&a);
        let b1 = h.dim(1);
        let classes: Vec<_> = (0..b1).map(|t| h.basis_class(&a, 1, t).unwrap()).collect();
        for i in 0..b1 {
            for j in 0..b1 {
                for k in 0..b1 {
                    let v = massey_triple(&a, &h, [&classes[i], &classes[j], &classes[k]]).unwrap();
                    assert!(!v.defined || v.vanishes, "{:?} ({i},{j},{k})", a.names());
                }
            }
        }
    }
}

#[test]
fn cup_tensor_zero_iff_all_products_vanish() {
    for a in models().into_iter().chain([nilpotent(1, 1, 1), nilpotent(0, 0, 0)]) {
        let h = cohomology(&a);
        let b1 = h.dim(1);
        let classes: Vec<_> = (0..b1).map(|t| h.basis_class(&a, 1, t).unwrap()).collect();
        let all_vanish = a.top_degree() < 2
            || classes.iter().all(|x| classes.iter().all(|y| h.cup(&a, x, y).unwrap().coords.iter().all(Zero::is_zero)));
        assert_eq!(extract_cup_data(&a).unwrap().is_zero(), all_vanish, "{:?}", a.names());
    }
}
