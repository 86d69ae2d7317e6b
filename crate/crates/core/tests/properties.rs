//! Property tests for the invariants of graphs, transforms and numerics.

mod common;

use proptest::prelude::*;

use spectra::distance::{distance_energy, distance_spectrum};
use spectra::expr::{parse, GraphExpr};
use spectra::graph::{complement, disjoint_union, line_graph, make_cycle, Graph};
use spectra::numlin::{eigen_decompose, eigen_sym, multiset_compare, SymmetricMatrix, DEFAULT_EIGEN_TOL};
use spectra::transforms::{double_join, merged_subdivision, H1Kind, H2Kind};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut b = bits.iter();
            for i in 0..n {
                for j in i + 1..n {
                    if *b.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_symmetric(max_n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-10.0f64..10.0, n * n)
            .prop_map(move |v| SymmetricMatrix::from_fn(n, |i, j| v[i * n + j]))
    })
}

fn arb_expr() -> impl Strategy<Value = GraphExpr> {
    let leaf = prop_oneof![
        (3usize..9).prop_map(GraphExpr::Cycle),
        (1usize..9).prop_map(GraphExpr::Complete),
        (1usize..9).prop_map(GraphExpr::Empty),
        proptest::collection::vec(3usize..7, 1..4).prop_map(GraphExpr::Cycles),
    ];
    let graph = leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| GraphExpr::Comp(Box::new(e))),
            inner.clone().prop_map(|e| GraphExpr::Line(Box::new(e))),
            proptest::collection::vec(inner, 1..4).prop_map(GraphExpr::Union),
        ]
    });
    let h1 = proptest::sample::select(H1Kind::ALL.to_vec());
    let h2 = proptest::sample::select(H2Kind::ALL.to_vec());
    (graph.clone(), h1, h2, graph.clone(), graph, any::<u8>()).prop_map(|(base, h1, h2, g1, g2, pick)| {
        let msub = GraphExpr::Msub { base: Box::new(base.clone()), h1, h2 };
        match pick % 3 {
            0 => base,
            1 => msub,
            _ => GraphExpr::Djoin { core: Box::new(msub), g1: Box::new(g1), g2: Box::new(g2) },
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_reconstructs_and_is_orthogonal(a in arb_symmetric(14)) {
        let n = a.order();
        let d = eigen_decompose(&a, DEFAULT_EIGEN_TOL).unwrap();
        let norm = a.frobenius_norm().max(1.0);
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n).map(|k| d.vectors[i * n + k] * d.values[k] * d.vectors[j * n + k]).sum();
                prop_assert!((r - a.get(i, j)).abs() <= 1e-9 * norm);
                let o: f64 = (0..n).map(|k| d.vectors[k * n + i] * d.vectors[k * n + j]).sum();
                let delta = if i == j { 1.0 } else { 0.0 };
                prop_assert!((o - delta).abs() <= 1e-10);
            }
        }
        prop_assert!(d.values.windows(2).all(|w| w[0] >= w[1]));
        let sum: f64 = d.values.iter().sum();
        prop_assert!((sum - a.trace()).abs() <= 1e-8 * norm);
    }

    #[test]
    fn jacobi_matches_nalgebra(a in arb_symmetric(12)) {
        let ours = eigen_sym(&a, DEFAULT_EIGEN_TOL).unwrap().values;
        let theirs = common::nalgebra_eigenvalues(common::to_nalgebra(&a));
        prop_assert!(multiset_compare(&ours, &theirs, 1e-9).unwrap().equal);
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(10)) {
        prop_assert_eq!(complement(&complement(&g)), g.clone());
        let n = g.order();
        prop_assert_eq!(g.size() + complement(&g).size(), n * (n - 1) / 2);
    }

    #[test]
    fn energy_is_invariant_under_relabelling(g in arb_graph(9), seed in any::<u64>()) {
        prop_assume!(g.is_connected());
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = Graph::from_edges(n, g.edges().iter().map(|&(i, j)| (perm[i], perm[j]))).unwrap();
        let (e1, e2) = (distance_energy(&g).unwrap(), distance_energy(&h).unwrap());
        prop_assert!((e1 - e2).abs() <= 1e-9 * e1.max(1.0));
    }

    #[test]
    fn line_graph_of_regular_graph_spectrum(n in 3usize..12) {
        // L(C_n) = C_n, and for r-regular G the eigenvalues λ + r − 2 appear
        let c = make_cycle(n).unwrap();
        let l = line_graph(&c).unwrap();
        let a = c.adjacency_spectrum().unwrap().values;
        let b = l.adjacency_spectrum().unwrap().values;
        prop_assert!(multiset_compare(&a, &b, 1e-9).unwrap().equal);
    }

    #[test]
    fn union_spectrum_is_concatenation(a in arb_graph(6), b in arb_graph(6)) {
        let u = disjoint_union(&[a.clone(), b.clone()]).unwrap();
        let mut want = a.adjacency_spectrum().unwrap().values;
        want.extend(b.adjacency_spectrum().unwrap().values);
        let got = u.adjacency_spectrum().unwrap().values;
        prop_assert!(multiset_compare(&got, &want, 1e-9).unwrap().equal);
    }

    #[test]
    fn parse_print_round_trip(e in arb_expr()) {
        let text = e.to_string();
        let parsed = parse(&text).unwrap();
        prop_assert_eq!(&parsed, &e);
        prop_assert_eq!(parse(&parsed.to_string()).unwrap(), e);
    }

    #[test]
    fn double_join_trace_is_zero_and_diameter_small(
        n in 3usize..7, p in 3usize..6, q in 3usize..6,
        h1 in proptest::sample::select(H1Kind::ALL.to_vec()),
        h2 in proptest::sample::select(H2Kind::ALL.to_vec()),
    ) {
        let core = merged_subdivision(&make_cycle(n).unwrap(), h1, h2).unwrap();
        let bg = double_join(&core, &make_cycle(p).unwrap(), &make_cycle(q).unwrap()).unwrap();
        let s = distance_spectrum(bg.graph()).unwrap();
        prop_assert!(s.sum().abs() <= 1e-8 * s.values[0]);
        prop_assert!(spectra::distance::diameter(bg.graph()).unwrap() <= 3);
    }
}
