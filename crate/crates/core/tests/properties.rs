use conecross::book::{circle_graph, count_crossings, BookDrawing, CyclicOrder};
use conecross::budget::Budget;
use conecross::cert::{convex_certificate, verify_certificate};
use conecross::formats::{graph_from_json, graph_to_json};
use conecross::graph::{disjoint_union, subdivide_edge, Multigraph};
use conecross::maxcut::{edwards_bound, maxcut_exact};
use conecross::pages::{one_to_two, outerplanar_cr, two_page_bound_met};
use conecross::planarity::{is_planar, is_planar_edges};
use conecross::solver::{cr_exact, cr_lower};
use proptest::prelude::*;

fn graph(max_n: usize, max_mult: u32) -> impl Strategy<Value = Multigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(0..=max_mult, pairs).prop_map(move |mults| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let entries: Vec<_> = all
                .zip(mults)
                .filter(|&(_, m)| m > 0)
                .map(|((u, v), m)| (u, v, m))
                .collect();
            Multigraph::new(n, entries).unwrap()
        })
    })
}

fn with_perm(max_n: usize, max_mult: u32) -> impl Strategy<Value = (Multigraph, Vec<usize>)> {
    graph(max_n, max_mult).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn one_page_count_is_rotation_and_reflection_invariant((g, perm) in with_perm(9, 2), by in 0usize..9) {
        let order = CyclicOrder::new(perm).unwrap();
        let base = count_crossings(&BookDrawing::one_page(g.clone(), order.clone()).unwrap());
        let rotated = order.rotated(by % order.len().max(1));
        prop_assert_eq!(count_crossings(&BookDrawing::one_page(g.clone(), rotated).unwrap()), base);
        prop_assert_eq!(count_crossings(&BookDrawing::one_page(g.clone(), order.reflected()).unwrap()), base);
        prop_assert_eq!(circle_graph(&g, &order).graph().edge_count(), base);
    }

    #[test]
    fn two_page_conversion_meets_bound((g, perm) in with_perm(10, 2)) {
        let order = CyclicOrder::new(perm).unwrap();
        let out = one_to_two(&g, &order);
        prop_assert_eq!(out.crossings, out.k - out.cut_size);
        prop_assert_eq!(count_crossings(&out.drawing), out.crossings);
        prop_assert!(two_page_bound_met(out.k, out.crossings));
        prop_assert_eq!(out.drawing.order(), &order);
    }

    #[test]
    fn exact_cut_beats_half_the_edges(g in graph(11, 1)) {
        let s = g.simplification();
        let simple = conecross::simple::SimpleGraph::new(
            s.vertex_count(),
            s.pairs().iter().map(|p| (p.u, p.v)).collect(),
        ).unwrap();
        let cut = maxcut_exact(&simple).unwrap();
        let m = simple.edge_count();
        prop_assert!(edwards_bound(m).is_met_by(cut.size));
        if m > 0 {
            prop_assert!(2 * cut.size > m);
        }
    }

    #[test]
    fn planarity_invariant_under_relabeling((g, perm) in with_perm(8, 1)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(is_planar(&g), is_planar(&h));
    }

    #[test]
    fn planarity_invariant_under_subdivision(g in graph(8, 1), pick in any::<prop::sample::Index>(), t in 1usize..3) {
        prop_assume!(g.edge_count() > 0);
        let e = pick.index(g.edge_count());
        let h = subdivide_edge(&g, e, t).unwrap();
        prop_assert_eq!(is_planar(&g), is_planar(&h));
    }

    #[test]
    fn euler_condition_implies_nonplanar(g in graph(9, 1)) {
        let n = g.vertex_count();
        let m = g.edge_count();
        if n >= 3 && m > 3 * n - 6 {
            prop_assert!(!is_planar(&g));
        }
        let edges: Vec<_> = g.instances().iter().map(|e| (e.u, e.v)).rev().collect();
        prop_assert_eq!(is_planar_edges(n, &edges), is_planar(&g));
    }

    #[test]
    fn convex_certificate_is_valid((g, perm) in with_perm(8, 2)) {
        let order = CyclicOrder::new(perm).unwrap();
        let cert = convex_certificate(&g, &order);
        let count = count_crossings(&BookDrawing::one_page(g.clone(), order).unwrap());
        prop_assert_eq!(verify_certificate(&g, &cert), (count, true));
    }

    #[test]
    fn graph_file_round_trips(g in graph(8, 3)) {
        prop_assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solver_brackets_are_consistent((g, perm) in with_perm(6, 2)) {
        let r = cr_exact(&g, None, Budget::unlimited());
        prop_assert!(r.is_exact());
        let cert = r.certificate.clone().unwrap();
        prop_assert_eq!(verify_certificate(&g, &cert), (r.upper, true));
        prop_assert!(cr_lower(&g) <= r.lower);
        let outer = outerplanar_cr(&g, Budget::unlimited());
        prop_assert!(r.upper <= outer.result.upper);
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(cr_exact(&h, None, Budget::unlimited()).value(), r.value());
    }

    #[test]
    fn solver_is_additive_over_unions(g in graph(5, 1), h in graph(5, 1)) {
        let a = cr_exact(&g, None, Budget::unlimited()).value().unwrap();
        let b = cr_exact(&h, None, Budget::unlimited()).value().unwrap();
        let u = cr_exact(&disjoint_union(&g, &h), None, Budget::unlimited());
        prop_assert_eq!(u.value(), Some(a + b));
    }
}
