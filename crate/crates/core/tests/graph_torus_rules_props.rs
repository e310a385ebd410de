use formality_core::graph::{
    barycentric_subdivision, classify_raag, complete_multipartite, flag_complex, simplicial_homology, SimpleGraph,
    SimplicialComplex,
};
use formality_core::linalg::IntMatrix;
use formality_core::rules::{infer, Fact, FactSet, RuleConclusion, RULES};
use formality_core::torus::{b1_mapping_torus, b_gn, standard_symplectic_form, wang_h1, MonodromyMatrix};
use formality_core::Int;
use num_traits::Zero;
use proptest::prelude::*;

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(1u32..(1 << n), 1..5).prop_map(move |masks| {
            let facets: Vec<Vec<usize>> =
                masks.iter().map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
            SimplicialComplex::from_facets(n, &facets).unwrap()
        })
    })
}

fn reduced_euler(k: &SimplicialComplex) -> i64 {
    let top = k.dim().unwrap_or(0);
    simplicial_homology(k, top)
        .iter()
        .enumerate()
        .map(|(i, h)| if i % 2 == 0 { h.rank as i64 } else { -(h.rank as i64) })
        .sum()
}

fn graph_strategy(max: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max).prop_flat_map(|n| {
        (0u64..(1 << (n * (n - 1) / 2))).prop_map(move |mask| SimpleGraph::from_edge_mask(n, mask))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn euler_characteristic_is_consistent(k in complex_strategy()) {
        let faces: i64 = k.f_vector().iter().enumerate().map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum();
        prop_assert_eq!(reduced_euler(&k) + 1, faces);
        prop_assert_eq!(k.euler_characteristic(), faces);
    }

    #[test]
    fn subdivision_preserves_homology(k in complex_strategy()) {
        let sd = barycentric_subdivision(&k).unwrap();
        prop_assert!(sd.is_flag());
        let top = k.dim().unwrap_or(0);
        prop_assert_eq!(simplicial_homology(&sd, top), simplicial_homology(&k, top));
        prop_assert_eq!(sd.dim(), k.dim());
    }

    #[test]
    fn flag_complexes_have_all_cliques(g in graph_strategy(6)) {
        let k = flag_complex(&g).unwrap();
        prop_assert!(k.is_flag());
        let n = g.n();
        let cliques = (1u32..(1 << n))
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .count();
        prop_assert_eq!(k.face_count(), cliques);
    }

    #[test]
    fn multipartite_raag_verdict_agrees(g in graph_strategy(6)) {
        prop_assert_eq!(classify_raag(&g).quasi_kahler, complete_multipartite(&g).is_some());
        if let Some(parts) = complete_multipartite(&g) {
            prop_assert_eq!(parts.iter().sum::<usize>(), g.n());
        }
    }

    #[test]
    fn mapping_torus_b1_and_determinant(h in unimodular_strategy()) {
        let m = MonodromyMatrix::new(h.clone()).unwrap();
        let n = h.rows();
        let det = (&IntMatrix::identity(n) - &h).det().unwrap();
        prop_assert_eq!(b1_mapping_torus(&m) == 1, !det.is_zero());
        prop_assert_eq!(wang_h1(&m).rank, b1_mapping_torus(&m));
    }

    #[test]
    fn inference_only_uses_known_premises(
        seed in proptest::collection::vec((0usize..17, any::<bool>()), 0..8),
    ) {
        let mut inputs = FactSet::new();
        for (i, v) in seed {
            let _ = inputs.set(Fact::ALL[i % Fact::ALL.len()], v);
        }
        let Ok(r) = infer(&inputs) else { return Ok(()) };
        for d in &r.derived {
            let rule = RULES.iter().find(|x| x.id == d.rule).unwrap();
            prop_assert!(rule.premises.iter().all(|&p| r.facts.holds(p)));
            prop_assert_eq!(rule.conclusion, RuleConclusion::Derive(d.literal));
            prop_assert!(r.replay(d.literal.fact));
        }
        for l in inputs.literals() {
            prop_assert!(r.facts.holds(l));
        }
    }
}

fn unimodular_strategy() -> impl Strategy<Value = IntMatrix> {
    (prop_oneof![Just(2usize), Just(4usize)], proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..8))
        .prop_map(|(n, ops)| {
            let mut m = IntMatrix::identity(n);
            for (i, j, k) in ops {
                let (i, j) = (i % n, j % n);
                if i == j {
                    continue;
                }
                for c in 0..n {
                    let v = m.get(i, c) + Int::from(k) * m.get(j, c);
                    m.set(i, c, v);
                }
            }
            m
        })
}

#[test]
fn family_monodromy_is_symplectic() {
    for g in 1..=5 {
        for n in 2..=20 {
            let b = b_gn(g, n);
            let j = standard_symplectic_form(g);
            assert_eq!(&(&b.transpose() * &j) * &b, j);
            assert!(MonodromyMatrix::new(b).unwrap().is_symplectic());
        }
    }
}
