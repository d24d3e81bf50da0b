//! Maximum cuts of simple graphs.
//!
//! The exact solver is a bitmask branch and bound. It runs per connected
//! component, so the size limit applies to the largest component rather than
//! to the whole graph. The Edwards solver returns a cut of size at least
//! `m/2 + (sqrt(8m+1) - 1)/8`. For a disconnected graph the bound is met per
//! component, and the component bounds sum to at least the bound for the whole
//! graph because `sqrt` is subadditive.

use thiserror::Error;

use crate::simple::SimpleGraph;

pub const DEFAULT_EXACT_LIMIT: usize = 32;

/// Components up to this size are solved exactly by `maxcut_edwards`.
const EDWARDS_EXACT_SIZE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaxcutError {
    #[error("component with {size} vertices exceeds the exact limit of {limit}")]
    LimitExceeded { size: usize, limit: usize },
    #[error("cut of size {size} misses the Edwards bound for {m} edges")]
    BoundUnmet { size: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub side: Vec<Side>,
    pub size: usize,
}

impl Cut {
    pub fn from_sides(g: &SimpleGraph, side: Vec<Side>) -> Self {
        let size = cut_size(g, &side);
        Cut { side, size }
    }

    pub fn verify(&self, g: &SimpleGraph) -> bool {
        self.side.len() == g.vertex_count() && cut_size(g, &self.side) == self.size
    }

    pub fn side_b(&self) -> impl Iterator<Item = usize> + '_ {
        self.side
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Side::B)
            .map(|(v, _)| v)
    }
}

pub fn cut_size(g: &SimpleGraph, side: &[Side]) -> usize {
    g.edges().iter().filter(|&&(u, v)| side[u] != side[v]).count()
}

/// `m/2 + (sqrt(8m+1) - 1)/8`, compared exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdwardsBound {
    pub m: usize,
}

impl EdwardsBound {
    pub fn value(&self) -> f64 {
        let m = self.m as f64;
        m / 2.0 + ((8.0 * m + 1.0).sqrt() - 1.0) / 8.0
    }

    /// `size >= value`, rearranged to `8 size + 1 - 4m >= sqrt(8m+1)`.
    pub fn is_met_by(&self, size: usize) -> bool {
        let s = 8 * size as i128 + 1 - 4 * self.m as i128;
        s >= 0 && s * s > 8 * self.m as i128
    }
}

pub fn edwards_bound(m: usize) -> EdwardsBound {
    EdwardsBound { m }
}

/// Maximum cut with the default component limit.
pub fn maxcut_exact(g: &SimpleGraph) -> Result<Cut, MaxcutError> {
    maxcut_exact_with_limit(g, DEFAULT_EXACT_LIMIT)
}

/// Maximum cut. Among optimal cuts the side vector (with `A < B`) is
/// lexicographically smallest, which puts vertex 0 in `A`.
pub fn maxcut_exact_with_limit(g: &SimpleGraph, limit: usize) -> Result<Cut, MaxcutError> {
    let limit = limit.min(64);
    let comps = g.components();
    if let Some(c) = comps.iter().find(|c| c.len() > limit) {
        return Err(MaxcutError::LimitExceeded {
            size: c.len(),
            limit,
        });
    }
    let mut side = vec![Side::A; g.vertex_count()];
    for comp in &comps {
        if comp.len() < 2 {
            continue;
        }
        let local = Local::new(g, comp);
        let seed = local.greedy_cut();
        let opt = local.optimum(seed);
        let mask = local.lex_first(opt);
        local.write(mask, &mut side);
    }
    Ok(Cut::from_sides(g, side))
}

/// A cut meeting the Edwards bound on every component.
pub fn maxcut_edwards(g: &SimpleGraph) -> Result<Cut, MaxcutError> {
    let mut side = vec![Side::A; g.vertex_count()];
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        if comp.len() <= EDWARDS_EXACT_SIZE {
            let local = Local::new(g, &comp);
            let opt = local.optimum(local.greedy_cut());
            local.write(local.lex_first(opt), &mut side);
            continue;
        }
        let (m, size) = local_search(g, &comp, &mut side);
        if !edwards_bound(m).is_met_by(size) {
            if comp.len() > DEFAULT_EXACT_LIMIT {
                return Err(MaxcutError::BoundUnmet { size, m });
            }
            let local = Local::new(g, &comp);
            let opt = local.optimum(local.greedy_cut());
            local.write(local.lex_first(opt), &mut side);
        }
    }
    let cut = Cut::from_sides(g, side);
    debug_assert!(edwards_bound(g.edge_count()).is_met_by(cut.size));
    Ok(cut)
}

/// Greedy placement in BFS order followed by improving single and adjacent
/// pair flips. Returns the component's edge count and cut size.
fn local_search(g: &SimpleGraph, comp: &[usize], side: &mut [Side]) -> (usize, usize) {
    let mut placed = vec![false; g.vertex_count()];
    let mut assigned = vec![false; g.vertex_count()];
    let mut queue = vec![comp[0]];
    placed[comp[0]] = true;
    let mut i = 0;
    while i < queue.len() {
        let v = queue[i];
        i += 1;
        let (mut a, mut b) = (0, 0);
        for &w in g.neighbors(v) {
            if assigned[w] {
                match side[w] {
                    Side::A => a += 1,
                    Side::B => b += 1,
                }
            }
        }
        side[v] = if a > b { Side::B } else { Side::A };
        assigned[v] = true;
        for &w in g.neighbors(v) {
            if !placed[w] {
                placed[w] = true;
                queue.push(w);
            }
        }
    }

    // gain[v]: change in cut size if v alone switches sides
    let gain = |side: &[Side], v: usize| -> i64 {
        g.neighbors(v)
            .iter()
            .map(|&w| if side[w] == side[v] { 1 } else { -1 })
            .sum()
    };
    loop {
        let mut improved = false;
        for &v in comp {
            if gain(side, v) > 0 {
                side[v] = flip(side[v]);
                improved = true;
            }
        }
        if improved {
            continue;
        }
        'pairs: for &v in comp {
            for &w in g.neighbors(v) {
                if w < v {
                    continue;
                }
                // The edge vw keeps its status when both switch.
                let shared = if side[v] == side[w] { 2 } else { -2 };
                let delta = gain(side, v) + gain(side, w) - shared;
                if delta > 0 {
                    side[v] = flip(side[v]);
                    side[w] = flip(side[w]);
                    improved = true;
                    break 'pairs;
                }
            }
        }
        if !improved {
            break;
        }
    }
    let m = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    let size = comp
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().map(move |&w| (v, w)))
        .filter(|&(v, w)| v < w && side[v] != side[w])
        .count();
    (m, size)
}

fn flip(s: Side) -> Side {
    match s {
        Side::A => Side::B,
        Side::B => Side::A,
    }
}

/// One connected component relabelled to `0..c` in increasing vertex order.
struct Local<'a> {
    vertices: &'a [usize],
    adj: Vec<u64>,
    edges: usize,
}

impl<'a> Local<'a> {
    fn new(g: &SimpleGraph, vertices: &'a [usize]) -> Self {
        let adj = vertices
            .iter()
            .map(|&v| {
                g.neighbors(v).iter().fold(0u64, |acc, w| {
                    let i = vertices.binary_search(w).expect("neighbor in component");
                    acc | 1 << i
                })
            })
            .collect::<Vec<_>>();
        let edges = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        Local {
            vertices,
            adj,
            edges,
        }
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn cut_of(&self, b_mask: u64) -> usize {
        (0..self.len())
            .filter(|&v| b_mask >> v & 1 == 0)
            .map(|v| (self.adj[v] & b_mask).count_ones() as usize)
            .sum()
    }

    /// Greedy cut used to seed the search.
    fn greedy_cut(&self) -> usize {
        let mut b = 0u64;
        let mut improved = true;
        while improved {
            improved = false;
            for v in 0..self.len() {
                let same = if b >> v & 1 == 1 {
                    (self.adj[v] & b).count_ones()
                } else {
                    (self.adj[v] & !b).count_ones()
                };
                if 2 * same > self.adj[v].count_ones() {
                    b ^= 1 << v;
                    improved = true;
                }
            }
        }
        self.cut_of(b)
    }

    /// Optimistic completion: current cut, plus the better side for each
    /// unassigned vertex, plus every edge among unassigned vertices.
    fn bound(&self, a: u64, b: u64, cut: usize) -> usize {
        let assigned = a | b;
        let mut extra = 0;
        let mut inner = 0;
        let mut free = !assigned & self.full();
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let na = (self.adj[v] & a).count_ones();
            let nb = (self.adj[v] & b).count_ones();
            extra += na.max(nb) as usize;
            inner += (self.adj[v] & !assigned).count_ones() as usize;
        }
        cut + extra + inner / 2
    }

    fn full(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Optimal cut value, searching high degree vertices first.
    fn optimum(&self, seed: usize) -> usize {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.adj[v].count_ones()));
        let mut best = seed;
        let first = order[0];
        self.search_best(&order, 1, 1 << first, 0, 0, &mut best);
        best
    }

    fn search_best(&self, order: &[usize], depth: usize, a: u64, b: u64, cut: usize, best: &mut usize) {
        if *best == self.edges {
            return;
        }
        if depth == order.len() {
            *best = (*best).max(cut);
            return;
        }
        if self.bound(a, b, cut) <= *best {
            return;
        }
        let v = order[depth];
        let to_a = (self.adj[v] & b).count_ones() as usize;
        let to_b = (self.adj[v] & a).count_ones() as usize;
        if to_b > to_a {
            self.search_best(order, depth + 1, a, b | 1 << v, cut + to_b, best);
            self.search_best(order, depth + 1, a | 1 << v, b, cut + to_a, best);
        } else {
            self.search_best(order, depth + 1, a | 1 << v, b, cut + to_a, best);
            self.search_best(order, depth + 1, a, b | 1 << v, cut + to_b, best);
        }
    }

    /// Lexicographically first B-mask (in local index order, A before B)
    /// achieving `target`.
    fn lex_first(&self, target: usize) -> u64 {
        self.search_lex(1, 1, 0, 0, target)
            .expect("optimum is attainable")
    }

    fn search_lex(&self, v: usize, a: u64, b: u64, cut: usize, target: usize) -> Option<u64> {
        if v == self.len() {
            return (cut == target).then_some(b);
        }
        if self.bound(a, b, cut) < target {
            return None;
        }
        let to_a = (self.adj[v] & b).count_ones() as usize;
        let to_b = (self.adj[v] & a).count_ones() as usize;
        self.search_lex(v + 1, a | 1 << v, b, cut + to_a, target)
            .or_else(|| self.search_lex(v + 1, a, b | 1 << v, cut + to_b, target))
    }

    fn write(&self, b_mask: u64, side: &mut [Side]) {
        for (i, &v) in self.vertices.iter().enumerate() {
            side[v] = if b_mask >> i & 1 == 1 { Side::B } else { Side::A };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        SimpleGraph::new(n, e).unwrap()
    }

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    #[test]
    fn edwards_values() {
        assert!((edwards_bound(1).value() - 0.75).abs() < 1e-12);
        assert!((edwards_bound(3).value() - 2.0).abs() < 1e-12);
        assert_eq!(edwards_bound(0).value(), 0.0);
        assert!(edwards_bound(1).is_met_by(1));
        assert!(!edwards_bound(1).is_met_by(0));
        assert!(edwards_bound(3).is_met_by(2));
        assert!(!edwards_bound(3).is_met_by(1));
        assert!(edwards_bound(0).is_met_by(0));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(maxcut_exact(&complete(3)).unwrap().size, 2);
        assert_eq!(maxcut_exact(&complete(4)).unwrap().size, 4);
        assert_eq!(maxcut_exact(&cycle(5)).unwrap().size, 4);
    }

    #[test]
    fn exact_tie_break_is_lexicographic() {
        let c = maxcut_exact(&cycle(4)).unwrap();
        assert_eq!(c.side, vec![Side::A, Side::B, Side::A, Side::B]);
        let c = maxcut_exact(&complete(3)).unwrap();
        assert_eq!(c.side, vec![Side::A, Side::A, Side::B]);
    }

    #[test]
    fn edwards_examples() {
        let k3 = maxcut_edwards(&complete(3)).unwrap();
        assert_eq!(k3.size, 2);
        let edge = SimpleGraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(maxcut_edwards(&edge).unwrap().size, 1);
        let empty = SimpleGraph::new(4, vec![]).unwrap();
        assert_eq!(maxcut_edwards(&empty).unwrap().size, 0);
    }

    #[test]
    fn odd_complete_graphs_meet_the_bound_exactly() {
        for n in [3usize, 5, 7, 9] {
            let m = n * (n - 1) / 2;
            let size = maxcut_exact(&complete(n)).unwrap().size;
            assert_eq!(size, (n * n - 1) / 4);
            assert!(edwards_bound(m).is_met_by(size));
            assert!(!edwards_bound(m).is_met_by(size - 1));
        }
    }

    #[test]
    fn large_component_uses_local_search() {
        let g = complete(25);
        let c = maxcut_edwards(&g).unwrap();
        assert!(c.verify(&g));
        assert_eq!(c.size, 156);
        let c40 = maxcut_edwards(&cycle(41)).unwrap();
        assert!(edwards_bound(41).is_met_by(c40.size));
    }

    #[test]
    fn limit_is_per_component() {
        let g = complete(5);
        assert!(matches!(
            maxcut_exact_with_limit(&g, 4),
            Err(MaxcutError::LimitExceeded { size: 5, limit: 4 })
        ));
        let two = SimpleGraph::new(8, vec![(0, 1), (1, 2), (0, 2), (4, 5), (5, 6), (6, 7)]).unwrap();
        assert_eq!(maxcut_exact_with_limit(&two, 4).unwrap().size, 5);
    }
}
