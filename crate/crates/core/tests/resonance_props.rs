use formality_core::cup::CupData;
use formality_core::resonance::{
    alexander_single_variable, isotropicity, membership, position_obstruction, subspace_in_resonance,
    AlexanderVerdict, Isotropy, LaurentPoly, LinearSubspace, PositionVerdict,
};
use formality_core::{Error, Int, Rat};
use num_traits::Zero;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn cup_strategy() -> impl Strategy<Value = CupData> {
    (2usize..=5, 1usize..=4).prop_flat_map(|(b1, b2)| {
        proptest::collection::vec(
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], b2),
            b1 * (b1 - 1) / 2,
        )
        .prop_map(move |mu| CupData::new(b1, b2, mu.into_iter().map(|v| v.into_iter().map(q).collect()).collect()).unwrap())
    })
}

fn vectors(b1: usize, k: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    proptest::collection::vec(proptest::collection::vec((-3i64..=3).prop_map(q), b1), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn symbolic_containment_implies_pointwise(
        (c, vs, ts) in cup_strategy().prop_flat_map(|c| {
            let b1 = c.b1();
            (Just(c), (1..=b1).prop_flat_map(move |k| vectors(b1, k)), proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 100))
        }),
        d in 1usize..=2,
    ) {
        let l = LinearSubspace::span(c.b1(), &vs).unwrap();
        prop_assume!(l.dim() > 0);
        if subspace_in_resonance(&c, &l, d).unwrap() {
            for t in ts {
                let t: Vec<Rat> = t[..l.dim()].iter().map(|&x| q(x)).collect();
                prop_assert!(membership(&c, &l.point(&t), d).unwrap());
            }
        }
    }

    #[test]
    fn isotropicity_ignores_basis_of_subspace(
        (c, vs) in cup_strategy().prop_flat_map(|c| {
            let b1 = c.b1();
            (Just(c), (1..=b1.min(3)).prop_flat_map(move |k| vectors(b1, k)))
        }),
        shears in proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
    ) {
        let l = LinearSubspace::span(c.b1(), &vs).unwrap();
        prop_assume!(l.dim() > 0);
        let mut basis = l.basis().to_vec();
        let k = basis.len();
        for (i, j, s) in shears {
            let (i, j) = (i % k, j % k);
            if i != j {
                let add: Vec<Rat> = basis[j].iter().map(|x| q(s) * x).collect();
                for (a, b) in basis[i].iter_mut().zip(add) {
                    *a += b;
                }
            }
        }
        basis.reverse();
        let other = LinearSubspace::new(c.b1(), basis).unwrap();
        let (a, b) = (isotropicity(&c, &l).unwrap(), isotropicity(&c, &other).unwrap());
        prop_assert_eq!(a.kind, b.kind);
        prop_assert_eq!(a.image_dim, b.image_dim);
    }

    #[test]
    fn univariate_alexander_polynomials_embed(
        coeffs in proptest::collection::vec(-4i64..=4, 1..6),
        nvars in 1usize..=4,
        var in 0usize..4,
        step in 1i64..=3,
        shift in proptest::collection::vec(-2i64..=2, 4),
    ) {
        let var = var % nvars;
        let terms: Vec<(Vec<i64>, Int)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let mut e: Vec<i64> = shift[..nvars].to_vec();
                e[var] += step * k as i64;
                (e, Int::from(c))
            })
            .collect();
        let delta = LaurentPoly::new(nvars, terms).unwrap();
        match alexander_single_variable(&delta) {
            AlexanderVerdict::SingleVariable { p, e, shift } => {
                // rebuild t^shift · P(t^e) and compare
                let mut rebuilt: BTreeMap<Vec<i64>, Int> = BTreeMap::new();
                for (k, a) in p.coeffs().iter().enumerate() {
                    if !a.is_zero() {
                        let x: Vec<i64> = shift.iter().zip(&e).map(|(s, d)| s + k as i64 * d).collect();
                        rebuilt.insert(x, a.clone());
                    }
                }
                prop_assert_eq!(&rebuilt, delta.terms());
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn position_test_on_surfaces() {
    for g in 2..=4 {
        let c = CupData::surface(g);
        assert_eq!(position_obstruction(&c, &[LinearSubspace::whole(2 * g)]).unwrap(), PositionVerdict::Pass);
    }
    // genus one: R_1 = {0}, so there is no positive-dimensional component
    let c = CupData::surface(1);
    assert_eq!(position_obstruction(&c, &[]).unwrap(), PositionVerdict::Pass);
    assert!(matches!(position_obstruction(&c, &[LinearSubspace::whole(2)]), Err(Error::Precondition(_))));
}

#[test]
fn isotropicity_of_standard_tensors() {
    let v = isotropicity(&CupData::surface(2), &LinearSubspace::whole(4)).unwrap();
    assert_eq!(v.kind, Isotropy::OneIsotropic);
    let v = isotropicity(&CupData::torus(3), &LinearSubspace::coordinate(3, &[0, 1]).unwrap()).unwrap();
    assert_eq!(v.image_dim, 1);
    let v = isotropicity(&CupData::zero(3), &LinearSubspace::whole(3)).unwrap();
    assert_eq!(v.kind, Isotropy::ZeroIsotropic);
}

#[test]
fn two_essential_variables_are_detected() {
    let d = LaurentPoly::from_i64(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]).unwrap();
    assert!(matches!(alexander_single_variable(&d), AlexanderVerdict::MultipleVariables { .. }));
}
