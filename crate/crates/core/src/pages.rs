//! Page assignments and spine orders: the 1-page to 2-page conversion,
//! optimal 2-page drawings, and the outerplanar (convex) crossing number.
//!
//! Order searches run over canonical cyclic orders, fixing vertex 0 first and
//! requiring `order[1] < order[n-1]`, which leaves `(n-1)!/2` orders.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::book::{chords_interleave, circle_graph, count_crossings, BookDrawing, CyclicOrder};
use crate::budget::{Budget, Stopper};
use crate::cert::convex_certificate;
use crate::graph::Multigraph;
use crate::maxcut::{edwards_bound, maxcut_edwards, maxcut_exact, Cut, MaxcutError, DEFAULT_EXACT_LIMIT};
use crate::solver::{cr_lower, SolveResult, SolveStats, Status};

/// Largest vertex count for which order searches are exhaustive.
pub const DEFAULT_OUTERPLANAR_LIMIT: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneToTwo {
    pub drawing: BookDrawing,
    /// Crossings of the 1-page drawing, i.e. edges of the circle graph.
    pub k: usize,
    pub cut_size: usize,
    pub crossings: usize,
    pub exact_cut: bool,
}

impl OneToTwo {
    pub fn bound_met(&self) -> bool {
        two_page_bound_met(self.k, self.crossings)
    }
}

/// `crossings <= k/2 - (sqrt(8k+1) - 1)/8`, checked without square roots.
pub fn two_page_bound_met(k: usize, crossings: usize) -> bool {
    if k == 0 {
        return crossings == 0;
    }
    let s = 4 * k as i128 + 1 - 8 * crossings as i128;
    s >= 0 && s * s > 8 * k as i128
}

/// Splits the 1-page drawing on `order` into two pages along a large cut of
/// its circle graph. The spine order is kept.
pub fn one_to_two(g: &Multigraph, order: &CyclicOrder) -> OneToTwo {
    let c = circle_graph(g, order).into_graph();
    let k = c.edge_count();
    if k == 0 {
        let drawing = BookDrawing::one_page(g.clone(), order.clone()).expect("order matches graph");
        return OneToTwo {
            drawing,
            k,
            cut_size: 0,
            crossings: 0,
            exact_cut: true,
        };
    }
    let small = c.components().iter().all(|comp| comp.len() <= DEFAULT_EXACT_LIMIT);
    let (cut, exact_cut) = if small {
        (maxcut_exact(&c).expect("components within limit"), true)
    } else {
        let cut = maxcut_edwards(&c).expect("Edwards bound holds for circle graphs");
        (cut, false)
    };
    debug_assert!(edwards_bound(k).is_met_by(cut.size));
    let drawing = drawing_from_cut(g, order, &cut);
    let crossings = count_crossings(&drawing);
    debug_assert_eq!(crossings, k - cut.size);
    OneToTwo {
        drawing,
        k,
        cut_size: cut.size,
        crossings,
        exact_cut,
    }
}

fn drawing_from_cut(g: &Multigraph, order: &CyclicOrder, cut: &Cut) -> BookDrawing {
    let pages = cut
        .side
        .iter()
        .map(|&s| usize::from(s == crate::maxcut::Side::B))
        .collect();
    BookDrawing::new(g.clone(), order.clone(), pages, 2).expect("pages within range")
}

/// Optimal 2-page drawing for a fixed spine order.
pub fn two_page_drawing_fixed_order(
    g: &Multigraph,
    order: &CyclicOrder,
) -> Result<BookDrawing, MaxcutError> {
    let c = circle_graph(g, order).into_graph();
    let cut = maxcut_exact(&c)?;
    Ok(drawing_from_cut(g, order, &cut))
}

pub fn two_page_cr_fixed_order(g: &Multigraph, order: &CyclicOrder) -> Result<usize, MaxcutError> {
    let c = circle_graph(g, order).into_graph();
    Ok(c.edge_count() - maxcut_exact(&c)?.size)
}

/// A bracketed optimum together with a drawing attaining the upper bound.
#[derive(Debug, Clone)]
pub struct BookSolve {
    pub result: SolveResult,
    pub drawing: BookDrawing,
}

/// Weighted simple edges used by the order searches.
struct Chords {
    n: usize,
    edges: Vec<(usize, usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl Chords {
    fn new(g: &Multigraph) -> Self {
        let edges: Vec<_> = g.pairs().iter().map(|p| (p.u, p.v, p.mult as usize)).collect();
        let mut incident = vec![Vec::new(); g.vertex_count()];
        for (i, &(u, v, _)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        Chords {
            n: g.vertex_count(),
            edges,
            incident,
        }
    }

    fn count(&self, order: &CyclicOrder) -> usize {
        let mut total = 0;
        for (i, &(a, b, w)) in self.edges.iter().enumerate() {
            for &(c, d, x) in &self.edges[i + 1..] {
                if chords_interleave(order, (a, b), (c, d)) {
                    total += w * x;
                }
            }
        }
        total
    }
}

/// Depth-first enumeration of canonical orders for one choice of `order[1]`.
struct OrderSearch<'a> {
    chords: &'a Chords,
    pos: Vec<usize>,
    order: Vec<usize>,
    best: usize,
    best_order: Option<Vec<usize>>,
    global: &'a AtomicUsize,
    stopper: &'a Stopper,
    nodes: u64,
    aborted: bool,
}

impl OrderSearch<'_> {
    /// Crossings added by placing `v` at the next position, counting only
    /// pairs whose four endpoints are now placed.
    fn added(&self, v: usize) -> usize {
        let p = self.order.len();
        let mut total = 0;
        for &e in &self.chords.incident[v] {
            let (a, b, w) = self.chords.edges[e];
            let u = if a == v { b } else { a };
            let pu = self.pos[u];
            if pu == usize::MAX {
                continue;
            }
            for &(c, d, x) in &self.chords.edges {
                let (pc, pd) = (self.pos[c], self.pos[d]);
                if pc == usize::MAX || pd == usize::MAX || c == u || d == u {
                    continue;
                }
                let inside_c = pu < pc && pc < p;
                let inside_d = pu < pd && pd < p;
                if inside_c != inside_d {
                    total += w * x;
                }
            }
        }
        total
    }

    fn run(&mut self, cost: usize) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.stopper.should_stop() {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        let n = self.chords.n;
        if cost >= self.best || cost > self.global.load(Ordering::Relaxed) {
            return;
        }
        if self.order.len() == n {
            if n > 2 && self.order[1] > self.order[n - 1] {
                return;
            }
            self.best = cost;
            self.best_order = Some(self.order.clone());
            self.global.fetch_min(cost, Ordering::Relaxed);
            return;
        }
        for v in 1..n {
            if self.pos[v] != usize::MAX {
                continue;
            }
            if self.order.len() == n - 1 && n > 2 && v < self.order[1] {
                continue;
            }
            let add = self.added(v);
            self.pos[v] = self.order.len();
            self.order.push(v);
            self.run(cost + add);
            self.order.pop();
            self.pos[v] = usize::MAX;
        }
    }
}

/// A good convex order by local search, with its 1-page crossing count.
pub fn convex_order_heuristic(g: &Multigraph) -> (CyclicOrder, usize) {
    let n = g.vertex_count();
    let chords = Chords::new(g);
    let mut starts = vec![(0..n).collect::<Vec<_>>()];
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    starts.push(by_degree);
    let mut best: Option<(CyclicOrder, usize)> = None;
    for start in starts {
        let mut order = CyclicOrder::new(start).expect("permutation");
        let mut cost = chords.count(&order);
        let mut improved = true;
        while improved {
            improved = false;
            'moves: for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let mut v = order.as_slice().to_vec();
                    let x = v.remove(i);
                    v.insert(j, x);
                    let cand = CyclicOrder::new(v).expect("permutation");
                    let c = chords.count(&cand);
                    if c < cost {
                        order = cand;
                        cost = c;
                        improved = true;
                        break 'moves;
                    }
                }
            }
        }
        if best.as_ref().is_none_or(|b| cost < b.1) {
            best = Some((order.canonical(), cost));
        }
    }
    best.expect("at least one start")
}

fn bracket(
    g: &Multigraph,
    best: usize,
    exact: bool,
    drawing: BookDrawing,
    with_certificate: bool,
    nodes: u64,
    start: Instant,
) -> BookSolve {
    let certificate = with_certificate.then(|| convex_certificate(g, drawing.order()));
    BookSolve {
        result: SolveResult {
            lower: if exact { best } else { cr_lower(g).min(best) },
            upper: best,
            status: if exact { Status::Exact } else { Status::BoundsOnly },
            certificate,
            stats: SolveStats {
                nodes,
                planarity_calls: 0,
                elapsed_ms: start.elapsed().as_millis() as u64,
            },
        },
        drawing,
    }
}

/// Minimum 1-page crossings over all spine orders.
pub fn outerplanar_cr(g: &Multigraph, budget: Budget) -> BookSolve {
    outerplanar_cr_with_limit(g, budget, DEFAULT_OUTERPLANAR_LIMIT)
}

pub fn outerplanar_cr_with_limit(g: &Multigraph, budget: Budget, limit: usize) -> BookSolve {
    let start = Instant::now();
    let n = g.vertex_count();
    let (seed, seed_cost) = convex_order_heuristic(g);
    let one_page = |order: CyclicOrder| BookDrawing::one_page(g.clone(), order).expect("valid order");
    if n <= 3 || seed_cost == 0 {
        return bracket(g, seed_cost, true, one_page(seed), true, 0, start);
    }
    if n > limit {
        return bracket(g, seed_cost, false, one_page(seed), true, 0, start);
    }
    let chords = Chords::new(g);
    let stopper = Stopper::new(budget);
    // Allow ties with the seed so every branch reports its own optimum.
    let global = AtomicUsize::new(seed_cost);
    let results: Vec<(usize, Option<Vec<usize>>, u64, bool)> = (1..n)
        .into_par_iter()
        .map(|first| {
            let mut s = OrderSearch {
                chords: &chords,
                pos: vec![usize::MAX; n],
                order: vec![0],
                best: seed_cost + 1,
                best_order: None,
                global: &global,
                stopper: &stopper,
                nodes: 0,
                aborted: false,
            };
            s.pos[0] = 0;
            let add = s.added(first);
            s.pos[first] = 1;
            s.order.push(first);
            s.run(add);
            (s.best, s.best_order, s.nodes, s.aborted)
        })
        .collect();
    let nodes = results.iter().map(|r| r.2).sum();
    let aborted = results.iter().any(|r| r.3);
    let found = results
        .into_iter()
        .filter_map(|(c, o, _, _)| o.map(|o| (c, o)))
        .min();
    let (cost, order) = match found {
        Some((c, o)) if c <= seed_cost => (c, CyclicOrder::new(o).expect("permutation")),
        _ => (seed_cost, seed),
    };
    bracket(g, cost, !aborted, one_page(order), true, nodes, start)
}

/// Minimum 2-page crossings over all spine orders and page assignments.
pub fn two_page_cr(g: &Multigraph, budget: Budget) -> BookSolve {
    let start = Instant::now();
    let n = g.vertex_count();
    let stopper = Stopper::new(budget);
    let fixed = |order: &CyclicOrder| {
        two_page_drawing_fixed_order(g, order).ok().map(|d| (count_crossings(&d), d))
    };
    let (seed_order, _) = convex_order_heuristic(g);
    let (seed_cost, seed_drawing) = match fixed(&seed_order) {
        Some(x) => x,
        None => {
            let r = one_to_two(g, &seed_order);
            (r.crossings, r.drawing)
        }
    };
    if n <= 3 || seed_cost == 0 {
        return bracket(g, seed_cost, true, seed_drawing, false, 0, start);
    }
    if n > DEFAULT_OUTERPLANAR_LIMIT {
        return bracket(g, seed_cost, false, seed_drawing, false, 0, start);
    }
    let results: Vec<Option<(usize, Vec<usize>, BookDrawing)>> = (1..n)
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(usize, Vec<usize>, BookDrawing)> = None;
            let mut rest: Vec<usize> = (1..n).filter(|&v| v != first).collect();
            let mut exact = true;
            permute(&mut rest, 0, &mut |tail| {
                if !exact {
                    return;
                }
                if stopper.should_stop() {
                    exact = false;
                    return;
                }
                if n > 2 && first > *tail.last().expect("n > 2") {
                    return;
                }
                let mut v = vec![0, first];
                v.extend_from_slice(tail);
                let order = CyclicOrder::new(v.clone()).expect("permutation");
                if let Some((c, d)) = fixed(&order) {
                    if best.as_ref().is_none_or(|b| (c, &v) < (b.0, &b.1)) {
                        best = Some((c, v, d));
                    }
                }
            });
            if exact {
                best
            } else {
                None
            }
        })
        .collect();
    if stopper.should_stop() {
        let found = results.into_iter().flatten().min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        return match found {
            Some((c, _, d)) if c < seed_cost => bracket(g, c, false, d, false, 0, start),
            _ => bracket(g, seed_cost, false, seed_drawing, false, 0, start),
        };
    }
    let (c, _, d) = results
        .into_iter()
        .flatten()
        .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
        .expect("some order was evaluated");
    bracket(g, c, true, d, false, 0, start)
}

/// Calls `visit` on every permutation of `items[k..]`, in lexicographic order
/// when `items` starts sorted.
fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        let x = items.remove(i);
        items.insert(k, x);
        permute(items, k + 1, visit);
        let x = items.remove(k);
        items.insert(i, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn bound_arithmetic() {
        assert!(two_page_bound_met(3, 1));
        assert!(!two_page_bound_met(3, 2));
        assert!(two_page_bound_met(1, 0));
        assert!(!two_page_bound_met(1, 1));
        assert!(two_page_bound_met(5, 1));
        assert!(!two_page_bound_met(5, 2));
        assert!(two_page_bound_met(0, 0));
    }

    #[test]
    fn one_to_two_examples() {
        let chords = Multigraph::from_edges(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        let r = one_to_two(&chords, &CyclicOrder::identity(6));
        assert_eq!((r.k, r.cut_size, r.crossings), (3, 2, 1));
        assert!(r.bound_met());

        let c6 = cycle_graph(6).unwrap();
        let r = one_to_two(&c6, &CyclicOrder::identity(6));
        assert_eq!((r.k, r.crossings), (0, 0));
        assert_eq!(r.drawing.page_count(), 1);

        let r = one_to_two(&complete_graph(4), &CyclicOrder::identity(4));
        assert_eq!((r.k, r.crossings), (1, 0));
        assert_eq!(r.drawing.order(), &CyclicOrder::identity(4));
    }

    #[test]
    fn outerplanar_examples() {
        assert_eq!(outerplanar_cr(&complete_graph(4), Budget::unlimited()).result.value(), Some(1));
        assert_eq!(outerplanar_cr(&complete_graph(5), Budget::unlimited()).result.value(), Some(5));
        let c6 = cycle_graph(6).unwrap();
        assert_eq!(outerplanar_cr(&c6, Budget::unlimited()).result.value(), Some(0));
    }

    #[test]
    fn outerplanar_search_matches_brute_force() {
        let g = fig3_graph();
        let chords = Chords::new(&g);
        let mut rest: Vec<usize> = (1..7).collect();
        let mut best = usize::MAX;
        permute(&mut rest, 0, &mut |tail| {
            let mut v = vec![0];
            v.extend_from_slice(tail);
            best = best.min(chords.count(&CyclicOrder::new(v).unwrap()));
        });
        let r = outerplanar_cr(&g, Budget::unlimited());
        assert_eq!(r.result.value(), Some(best));
        assert_eq!(count_crossings(&r.drawing), best);
        assert!(r.drawing.order().is_canonical());
    }

    #[test]
    fn two_page_examples() {
        let id = |n| CyclicOrder::identity(n);
        assert_eq!(two_page_cr_fixed_order(&complete_graph(4), &id(4)).unwrap(), 0);
        assert_eq!(two_page_cr_fixed_order(&complete_graph(5), &id(5)).unwrap(), 1);
        assert_eq!(two_page_cr(&complete_graph(5), Budget::unlimited()).result.value(), Some(1));
        assert_eq!(two_page_cr(&complete_graph(6), Budget::unlimited()).result.value(), Some(3));
        let c6 = cycle_graph(6).unwrap();
        assert_eq!(two_page_cr(&c6, Budget::unlimited()).result.value(), Some(0));
    }

    #[test]
    fn expired_budget_gives_bracket() {
        let g = complete_graph(9);
        let r = outerplanar_cr(&g, Budget::millis(0));
        assert_eq!(r.result.status, Status::BoundsOnly);
        assert_eq!(count_crossings(&r.drawing), r.result.upper);
    }
}
