use formality_core::cup::CupData;
use formality_core::graph::{maximal_cliques, raag_cup_data, SimpleGraph};
use formality_core::lie::{holonomy_ranks, lyndon_basis, witt, FreeLie, LieElement};
use formality_core::linalg::RatMatrix;
use formality_core::Rat;
use num_traits::Zero;
use proptest::prelude::*;

fn neg(u: &LieElement) -> LieElement {
    LieElement { degree: u.degree, coords: u.coords.iter().map(|c| -c).collect() }
}

#[test]
fn bracket_is_antisymmetric_and_satisfies_jacobi() {
    for n in 2..=3 {
        let lie = FreeLie::new(n, 4).unwrap();
        let all: Vec<LieElement> =
            (1..=4).flat_map(|d| (0..lie.dim(d)).map(move |i| (d, i))).map(|(d, i)| lie.basis_element(d, i)).collect();
        for u in &all {
            for v in &all {
                if u.degree + v.degree > 4 {
                    continue;
                }
                assert_eq!(lie.bracket(u, v).unwrap(), neg(&lie.bracket(v, u).unwrap()));
            }
        }
        for u in &all {
            for v in &all {
                for w in &all {
                    if u.degree + v.degree + w.degree > 4 {
                        continue;
                    }
                    let a = lie.bracket(u, &lie.bracket(v, w).unwrap()).unwrap();
                    let b = lie.bracket(v, &lie.bracket(w, u).unwrap()).unwrap();
                    let c = lie.bracket(w, &lie.bracket(u, v).unwrap()).unwrap();
                    assert!(lie.add(&lie.add(&a, &b).unwrap(), &c).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn tensor_round_trip_on_basis() {
    let lie = FreeLie::new(3, 5).unwrap();
    for d in 1..=5 {
        for i in 0..lie.dim(d) {
            let u = lie.basis_element(d, i);
            assert_eq!(lie.from_tensor(d, lie.to_tensor(&u).unwrap()).unwrap(), u);
        }
    }
}

#[test]
fn lyndon_counts_are_witt_numbers() {
    for n in 1..=4 {
        for d in 1..=7 {
            assert_eq!(lyndon_basis(n, d).unwrap().len() as u128, witt(n, d).unwrap());
        }
    }
}

/// Coefficients of `∏(1 − t^d)^{φ_d}` up to `t^D`.
fn lcs_series(phi: &[usize], max: usize) -> Vec<i64> {
    let mut s = vec![0i64; max + 1];
    s[0] = 1;
    for (d, &p) in phi.iter().enumerate().map(|(i, p)| (i + 1, p)) {
        for _ in 0..p {
            for k in (d..=max).rev() {
                s[k] -= s[k - d];
            }
        }
    }
    s
}

/// Clique polynomial `Σ_σ (−t)^{|σ|}` over all cliques, counted by subsets.
fn clique_series(g: &SimpleGraph, max: usize) -> Vec<i64> {
    let n = g.n();
    let mut s = vec![0i64; max + 1];
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let clique = vs.iter().enumerate().all(|(a, &u)| vs[a + 1..].iter().all(|&v| g.has_edge(u, v)));
        if clique && vs.len() <= max {
            s[vs.len()] += if vs.len().is_multiple_of(2) { 1 } else { -1 };
        }
    }
    s
}

#[test]
fn raag_holonomy_matches_clique_polynomial() {
    const D: usize = 4;
    let mut checked = 0;
    for n in 1..=5 {
        for mask in 0..(1u64 << (n * (n - 1) / 2)) {
            let g = SimpleGraph::from_edge_mask(n, mask);
            let r = holonomy_ranks(&raag_cup_data(&g), D).unwrap();
            assert_eq!(lcs_series(r.ranks(), D), clique_series(&g, D), "n={n} mask={mask:#x}");
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 2 + 8 + 64 + 1024);
    // sanity: the clique enumerator agrees on a triangle
    assert_eq!(maximal_cliques(&SimpleGraph::complete(3)).len(), 1);
}

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn cup_strategy() -> impl Strategy<Value = CupData> {
    (2usize..=4, 0usize..=3).prop_flat_map(|(b1, b2)| {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, b2), b1 * (b1 - 1) / 2).prop_map(move |mu| {
            CupData::new(b1, b2, mu.into_iter().map(|v| v.into_iter().map(q).collect()).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn holonomy_ranks_are_basis_independent(
        c in cup_strategy(),
        ops in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..10),
    ) {
        let n = c.b1();
        let mut p = RatMatrix::identity(n);
        for (i, j, k) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            for col in 0..n {
                let v = p.get(i, col) + q(k) * p.get(j, col);
                p.set(i, col, v);
            }
        }
        let changed = c.change_basis(&p).unwrap();
        prop_assert_eq!(holonomy_ranks(&c, 4).unwrap(), holonomy_ranks(&changed, 4).unwrap());
    }

    #[test]
    fn holonomy_ranks_are_bounded_by_witt(c in cup_strategy()) {
        let r = holonomy_ranks(&c, 4).unwrap();
        prop_assert_eq!(r.phi(1), c.b1());
        prop_assert_eq!(r.phi(2), c.b1() * (c.b1() - 1) / 2 - c.rank());
        for d in 1..=4 {
            prop_assert!(r.phi(d) as u128 <= witt(c.b1(), d).unwrap());
        }
    }
}

#[test]
fn zero_element_is_zero() {
    let lie = FreeLie::new(2, 3).unwrap();
    assert!(lie.zero(3).coords.iter().all(Zero::is_zero));
}
