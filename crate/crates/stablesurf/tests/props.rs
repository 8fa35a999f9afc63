//! Property tests: round trips, relabeling invariance, and the agreement
//! between independent computation routes.

use proptest::prelude::*;
use stablesurf::classify::classify;
use stablesurf::discrepancy::discrepancies;
use stablesurf::graph::{self, CurveVertex, DualGraph};
use stablesurf::linalg::{branch_determinant, determinant, is_negative_definite, solve, SymMatrix};
use stablesurf::rat::{int, Rat};

/// A random connected graph: a spanning tree plus a few extra edges, with
/// weights in -6..=-1 and an occasional genus-1 vertex.
fn arb_graph() -> impl Strategy<Value = DualGraph> {
    (2usize..=6)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(-6i64..=-1, n),
                proptest::collection::vec(0usize..n.max(1), n - 1),
                proptest::collection::vec((0usize..n, 0usize..n, 1u64..=2), 0..3),
                proptest::collection::vec(0u32..=1, n),
            )
        })
        .prop_map(|(weights, tree, extra, genus)| {
            let n = weights.len();
            let mut g = DualGraph::new(
                (0..n)
                    .map(|i| CurveVertex {
                        id: format!("E{i}"),
                        self_intersection: weights[i],
                        genus: genus[i],
                    })
                    .collect(),
            )
            .unwrap();
            for (k, &anchor) in tree.iter().enumerate() {
                let child = k + 1;
                let parent = anchor % child;
                g.add_edge(&format!("E{parent}"), &format!("E{child}"), 1)
                    .unwrap();
            }
            for (a, b, m) in extra {
                if a != b {
                    g.add_edge(&format!("E{a}"), &format!("E{b}"), m).unwrap();
                }
            }
            g
        })
}

proptest! {
    #[test]
    fn graph_files_round_trip(g in arb_graph()) {
        let text = graph::serialize(&g);
        let back = graph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        // a second pass is byte-identical
        prop_assert_eq!(graph::serialize(&back), text);
    }

    #[test]
    fn intersection_matrix_is_symmetric(g in arb_graph()) {
        let m = g.intersection_matrix();
        for i in 0..g.len() {
            for j in 0..g.len() {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }

    #[test]
    fn shape_is_relabeling_invariant(g in arb_graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.len()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let permuted = g.permuted(&perm);
        let kind = |s: &graph::Shape| match s {
            graph::Shape::String(_) => 0,
            graph::Shape::Cycle(_) => 1,
            graph::Shape::SingleFork { .. } => 2,
            graph::Shape::DoubleFork { .. } => 3,
            graph::Shape::Other => 4,
        };
        prop_assert_eq!(
            kind(&g.shape().unwrap()),
            kind(&permuted.shape().unwrap())
        );
    }

    #[test]
    fn classification_and_discrepancies_are_relabeling_invariant(
        g in arb_graph(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.len()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let permuted = g.permuted(&perm);
        match (classify(&g), classify(&permuted)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "classify diverged: {:?} vs {:?}", a, b),
        }
        if let (Ok(p), Ok(q)) = (discrepancies(&g), discrepancies(&permuted)) {
            let mut a: Vec<Rat> = p.coefficients().to_vec();
            let mut b: Vec<Rat> = q.coefficients().to_vec();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn discrepancies_satisfy_the_defining_identity(g in arb_graph()) {
        if let Ok(p) = discrepancies(&g) {
            let m = g.intersection_matrix();
            let b: Vec<Rat> = g
                .vertices()
                .iter()
                .map(|v| int(2 * v.genus as i64 - 2 - v.self_intersection))
                .collect();
            prop_assert_eq!(m.mul_vec(p.coefficients()), b);
        }
    }

    #[test]
    fn branch_determinant_matches_dense_determinant(
        weights in proptest::collection::vec(2u64..=9, 1..=8)
    ) {
        let n = weights.len();
        let m = SymMatrix::from_fn(n, |i, j| {
            if i == j {
                int(weights[i] as i64)
            } else if j == i + 1 {
                int(-1)
            } else {
                int(0)
            }
        });
        prop_assert_eq!(
            Rat::from_integer(branch_determinant(&weights).unwrap()),
            determinant(&m)
        );
    }

    #[test]
    fn solve_reproduces_rhs(
        entries in proptest::collection::vec(-9i64..=9, 36),
        rhs in proptest::collection::vec(-9i64..=9, 6),
        n in 1usize..=6,
    ) {
        let m = SymMatrix::from_fn(n, |i, j| int(entries[i * 6 + j.max(i)]));
        let b: Vec<Rat> = rhs[..n].iter().map(|&v| int(v)).collect();
        if determinant(&m) != int(0) {
            let x = solve(&m, &b).unwrap();
            prop_assert_eq!(m.mul_vec(&x), b);
        }
    }

    #[test]
    fn negative_definite_graphs_have_fundamental_cycles(g in arb_graph()) {
        if is_negative_definite(&g.intersection_matrix()) && g.is_connected() {
            let z = stablesurf::cycles::fundamental_cycle(&g).unwrap();
            for i in 0..g.len() {
                prop_assert!(z.dot_vertex(&g, i) <= 0);
            }
            prop_assert!(z.coefficients().iter().all(|&c| c >= 1));
        }
    }
}

#[test]
fn fifty_graph_serialization_corpus() {
    // the taxonomy corpus doubles as the round-trip corpus
    let corpus = stablesurf::corpus::taxonomy_corpus();
    assert!(corpus.len() >= 50);
    for e in corpus {
        let text = graph::serialize(&e.graph);
        assert_eq!(graph::parse(&text).unwrap(), e.graph, "{}", e.name);
    }
}

#[test]
fn volume_is_contraction_order_invariant() {
    use stablesurf::volume::{volume, ContractionSpec};
    for name in ["6.1c1", "6.1c1-ade", "6.1b", "5.2"] {
        let sc = stablesurf::catalog::build(name, &Default::default()).unwrap();
        let base = volume(&sc.spec).unwrap();
        let mut reversed = sc.spec.contracted.clone();
        reversed.reverse();
        let flipped = volume(&ContractionSpec {
            lattice: sc.spec.lattice.clone(),
            contracted: reversed,
        })
        .unwrap();
        assert_eq!(base.volume, flipped.volume, "{name}");
    }
}
