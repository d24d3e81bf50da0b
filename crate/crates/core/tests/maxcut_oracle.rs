//! Max-cut solvers against enumeration of all bipartitions.

use conecross::maxcut::{cut_size, edwards_bound, maxcut_edwards, maxcut_exact, Side};
use conecross::simple::SimpleGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_force(g: &SimpleGraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .map(|mask| {
            g.edges()
                .iter()
                .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count()
        })
        .max()
        .unwrap_or(0)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    SimpleGraph::new(n, edges).unwrap()
}

#[test]
fn exact_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..400 {
        let n = rng.gen_range(0..=13);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let cut = maxcut_exact(&g).unwrap();
        assert!(cut.verify(&g));
        assert_eq!(cut.size, brute_force(&g), "{:?}", g.edges());
    }
}

#[test]
fn exact_cut_is_lexicographically_first() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.gen_range(1..=9);
        let g = random_graph(&mut rng, n, 0.5);
        let best = brute_force(&g);
        // Read sides as a binary number with vertex 0 most significant, A = 0.
        let first = (0u32..1 << n)
            .find(|&word| {
                let side: Vec<Side> = (0..n)
                    .map(|v| if word >> (n - 1 - v) & 1 == 1 { Side::B } else { Side::A })
                    .collect();
                cut_size(&g, &side) == best
            })
            .unwrap();
        let cut = maxcut_exact(&g).unwrap();
        let word = (0..n).fold(0u32, |acc, v| acc << 1 | u32::from(cut.side[v] == Side::B));
        assert_eq!(word, first, "{:?}", g.edges());
    }
}

#[test]
fn heuristic_meets_bound_on_large_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(20..=60);
        let p = rng.gen_range(0.05..0.6);
        let g = random_graph(&mut rng, n, p);
        let cut = maxcut_edwards(&g).unwrap();
        assert!(cut.verify(&g));
        for comp in g.components() {
            let m = g
                .edges()
                .iter()
                .filter(|&&(u, _)| comp.contains(&u))
                .count();
            let inside = g
                .edges()
                .iter()
                .filter(|&&(u, v)| comp.contains(&u) && cut.side[u] != cut.side[v])
                .count();
            assert!(edwards_bound(m).is_met_by(inside));
        }
    }
}
