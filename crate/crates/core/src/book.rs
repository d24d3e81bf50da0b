//! Book drawings: vertices on a spine (a circle in the circular model), each
//! edge confined to one page. Whether two edges on the same page cross is
//! decided purely by the cyclic order of their endpoints.

use thiserror::Error;

use crate::graph::{EdgeInstance, Multigraph};
use crate::simple::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BookError {
    #[error("order is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("order has {got} vertices but the graph has {expected}")]
    OrderLength { expected: usize, got: usize },
    #[error("page assignment covers {got} edges but the graph has {expected}")]
    PageLength { expected: usize, got: usize },
    #[error("edge {edge} is on page {page} but the drawing has {pages} pages")]
    PageOutOfRange {
        edge: usize,
        page: usize,
        pages: usize,
    },
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
}

/// Positions of the vertices around the spine circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl CyclicOrder {
    pub fn new(order: Vec<usize>) -> Result<Self, BookError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(BookError::NotAPermutation(n));
            }
            position[v] = i;
        }
        Ok(CyclicOrder { order, position })
    }

    pub fn identity(n: usize) -> Self {
        CyclicOrder {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn rotated(&self, by: usize) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let order = (0..n).map(|i| self.order[(i + by) % n]).collect();
        Self::new(order).expect("rotation of a permutation")
    }

    pub fn reflected(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self::new(order).expect("reflection of a permutation")
    }

    /// Representative with vertex 0 first and `order[1] < order[n-1]`;
    /// rotations and reflections of one cyclic order share it.
    pub fn canonical(&self) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let r = self.rotated(self.position[0]);
        if n > 2 && r.order[1] > r.order[n - 1] {
            let mut order = vec![0];
            order.extend(r.order[1..].iter().rev());
            Self::new(order).expect("reflection of a permutation")
        } else {
            r
        }
    }

    pub fn is_canonical(&self) -> bool {
        let n = self.len();
        n == 0 || (self.order[0] == 0 && (n <= 2 || self.order[1] < self.order[n - 1]))
    }

    /// True iff vertex `x` lies strictly inside the arc from position `a` to position `b` (`a < b`).
    fn strictly_between(&self, a: usize, b: usize, x: usize) -> bool {
        let p = self.position[x];
        a < p && p < b
    }
}

/// Chord-interleaving test: `e` and `f` cross in a one-page drawing iff they
/// share no endpoint and exactly one endpoint of `f` lies strictly between the
/// endpoints of `e`. Parallel copies share endpoints and therefore nest.
pub fn interleaves(order: &CyclicOrder, e: &EdgeInstance, f: &EdgeInstance) -> bool {
    chords_interleave(order, e.endpoints(), f.endpoints())
}

pub fn chords_interleave(order: &CyclicOrder, e: (usize, usize), f: (usize, usize)) -> bool {
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return false;
    }
    let (pa, pb) = (order.position(e.0), order.position(e.1));
    let (a, b) = (pa.min(pb), pa.max(pb));
    order.strictly_between(a, b, f.0) != order.strictly_between(a, b, f.1)
}

/// Intersection graph of the chords of a one-page drawing; vertex `i` is edge instance `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleGraph(SimpleGraph);

impl CircleGraph {
    pub fn graph(&self) -> &SimpleGraph {
        &self.0
    }

    pub fn into_graph(self) -> SimpleGraph {
        self.0
    }
}

pub fn circle_graph(g: &Multigraph, order: &CyclicOrder) -> CircleGraph {
    let inst = g.instances();
    let mut edges = Vec::new();
    for i in 0..inst.len() {
        for j in i + 1..inst.len() {
            if interleaves(order, &inst[i], &inst[j]) {
                edges.push((i, j));
            }
        }
    }
    CircleGraph(SimpleGraph::new(inst.len(), edges).expect("interleaving pairs are distinct"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookDrawing {
    graph: Multigraph,
    order: CyclicOrder,
    pages: Vec<usize>,
    page_count: usize,
}

impl BookDrawing {
    pub fn new(
        graph: Multigraph,
        order: CyclicOrder,
        pages: Vec<usize>,
        page_count: usize,
    ) -> Result<Self, BookError> {
        if order.len() != graph.vertex_count() {
            return Err(BookError::OrderLength {
                expected: graph.vertex_count(),
                got: order.len(),
            });
        }
        if pages.len() != graph.edge_count() {
            return Err(BookError::PageLength {
                expected: graph.edge_count(),
                got: pages.len(),
            });
        }
        let page_count = page_count.max(1);
        if let Some((edge, &page)) = pages.iter().enumerate().find(|(_, &p)| p >= page_count) {
            return Err(BookError::PageOutOfRange {
                edge,
                page,
                pages: page_count,
            });
        }
        Ok(BookDrawing {
            graph,
            order,
            pages,
            page_count,
        })
    }

    /// Every edge on page 0.
    pub fn one_page(graph: Multigraph, order: CyclicOrder) -> Result<Self, BookError> {
        let m = graph.edge_count();
        Self::new(graph, order, vec![0; m], 1)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn order(&self) -> &CyclicOrder {
        &self.order
    }

    pub fn pages(&self) -> &[usize] {
        &self.pages
    }

    pub fn page_count(&self) -> usize {
        self.page_count
    }

    pub fn page_of(&self, edge: usize) -> usize {
        self.pages[edge]
    }

    /// Unordered pairs of same-page edge instances that interleave.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let inst = self.graph.instances();
        let mut out = Vec::new();
        for i in 0..inst.len() {
            for j in i + 1..inst.len() {
                if self.pages[i] == self.pages[j] && interleaves(&self.order, &inst[i], &inst[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn count_crossings(d: &BookDrawing) -> usize {
    d.crossing_pairs().len()
}

/// Inserts a copy `v'` (id `n`) of `v` right after `v` on the spine; each
/// edge `vu` gets a twin `v'u` on the same page, and with `with_edge` the
/// edge `vv'` is added on page 0.
pub fn clone_vertex_book(
    d: &BookDrawing,
    v: usize,
    with_edge: bool,
) -> Result<BookDrawing, BookError> {
    let g = &d.graph;
    let n = g.vertex_count();
    if v >= n {
        return Err(BookError::InvalidVertex(v));
    }
    let twin = n;
    let mut entries = g.entries();
    for p in g.pairs() {
        if p.u == v {
            entries.push((p.v, twin, p.mult));
        } else if p.v == v {
            entries.push((p.u, twin, p.mult));
        }
    }
    if with_edge {
        entries.push((v, twin, 1));
    }
    let graph = Multigraph::new(n + 1, entries).expect("clone keeps the graph loopless");

    let mut order = Vec::with_capacity(n + 1);
    for &x in d.order.as_slice() {
        order.push(x);
        if x == v {
            order.push(twin);
        }
    }
    let order = CyclicOrder::new(order).expect("twin inserted once");

    let pages = graph
        .instances()
        .iter()
        .map(|e| {
            let source = if e.v == twin {
                if e.u == v {
                    return 0;
                }
                g.instance_id(e.u, v, e.copy)
            } else {
                g.instance_id(e.u, e.v, e.copy)
            };
            d.pages[source.expect("every new edge has a template")]
        })
        .collect();
    BookDrawing::new(graph, order, pages, d.page_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn k4_natural() -> BookDrawing {
        BookDrawing::one_page(complete_graph(4), CyclicOrder::identity(4)).unwrap()
    }

    #[test]
    fn interleaving_examples() {
        let order = CyclicOrder::identity(4);
        let g = Multigraph::new(4, [(0, 2, 1), (1, 3, 1), (0, 1, 2), (2, 3, 1)]).unwrap();
        let id = |a, b, c| *g.instance(g.instance_id(a, b, c).unwrap()).unwrap();
        assert!(interleaves(&order, &id(0, 2, 0), &id(1, 3, 0)));
        assert!(!interleaves(&order, &id(0, 1, 0), &id(2, 3, 0)));
        assert!(!interleaves(&order, &id(0, 1, 0), &id(0, 1, 1)));
    }

    #[test]
    fn k4_counts() {
        let d = k4_natural();
        assert_eq!(count_crossings(&d), 1);
        let g = complete_graph(4);
        let diag = g.instance_id(0, 2, 0).unwrap();
        let mut pages = vec![0; 6];
        pages[diag] = 1;
        let d2 = BookDrawing::new(g, CyclicOrder::identity(4), pages, 2).unwrap();
        assert_eq!(count_crossings(&d2), 0);
    }

    #[test]
    fn k5_one_page_is_always_five() {
        // brute force over all 4! orders fixing vertex 0
        let perms = [
            [1, 2, 3, 4],
            [1, 2, 4, 3],
            [1, 3, 2, 4],
            [1, 3, 4, 2],
            [1, 4, 2, 3],
            [1, 4, 3, 2],
            [2, 1, 3, 4],
            [2, 1, 4, 3],
            [2, 3, 1, 4],
            [2, 4, 1, 3],
            [3, 1, 2, 4],
            [3, 2, 1, 4],
        ];
        for p in perms {
            let mut order = vec![0];
            order.extend(p);
            let order = CyclicOrder::new(order).unwrap();
            assert!(order.is_canonical());
            let d = BookDrawing::one_page(complete_graph(5), order).unwrap();
            assert_eq!(count_crossings(&d), 5);
        }
    }

    #[test]
    fn circle_graph_examples() {
        let g = Multigraph::from_edges(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        let c = circle_graph(&g, &CyclicOrder::identity(6));
        assert_eq!(c.graph().edges(), &[(0, 1), (0, 2), (1, 2)]);

        let c4 = circle_graph(&complete_graph(4), &CyclicOrder::identity(4));
        assert_eq!(c4.graph().edge_count(), 1);

        let star = cone(&Multigraph::empty(5));
        let order = CyclicOrder::new(vec![3, 5, 0, 2, 4, 1]).unwrap();
        assert_eq!(circle_graph(&star, &order).graph().edge_count(), 0);
    }

    #[test]
    fn canonical_form() {
        let o = CyclicOrder::new(vec![3, 0, 4, 1, 2]).unwrap();
        let c = o.canonical();
        assert_eq!(c.as_slice(), &[0, 3, 2, 1, 4]);
        assert!(c.is_canonical());
        assert_eq!(o.rotated(2).canonical(), c);
        assert_eq!(o.reflected().canonical(), c);
    }

    #[test]
    fn clone_with_edge_turns_k4_into_convex_k5() {
        let d = clone_vertex_book(&k4_natural(), 0, true).unwrap();
        assert_eq!(d.graph(), &complete_graph(5));
        assert_eq!(d.order().as_slice(), &[0, 4, 1, 2, 3]);
        assert_eq!(count_crossings(&d), 5);
    }

    #[test]
    fn clone_isolated_vertex_changes_nothing() {
        let g = disjoint_union(&complete_graph(4), &Multigraph::empty(1));
        let d = BookDrawing::one_page(g, CyclicOrder::identity(5)).unwrap();
        let c = clone_vertex_book(&d, 4, false).unwrap();
        assert_eq!(count_crossings(&c), count_crossings(&d));
        assert!(clone_vertex_book(&d, 9, false).is_err());
    }

    #[test]
    fn clone_keeps_pages_of_template_edges() {
        let g = complete_graph(4);
        let pages: Vec<usize> = (0..6).map(|i| i % 2).collect();
        let d = BookDrawing::new(g.clone(), CyclicOrder::identity(4), pages, 2).unwrap();
        let c = clone_vertex_book(&d, 2, false).unwrap();
        let cg = c.graph();
        for u in [0, 1, 3] {
            let old = g.instance_id(u, 2, 0).unwrap();
            let new = cg.instance_id(u, 4, 0).unwrap();
            assert_eq!(c.page_of(new), d.page_of(old));
        }
        let added = count_crossings(&c) - count_crossings(&d);
        assert!(added <= g.degree(2) * g.edge_count());
    }

    #[test]
    fn drawing_validation() {
        let g = complete_graph(4);
        assert!(BookDrawing::new(g.clone(), CyclicOrder::identity(3), vec![0; 6], 1).is_err());
        assert!(BookDrawing::new(g.clone(), CyclicOrder::identity(4), vec![0; 5], 1).is_err());
        assert!(matches!(
            BookDrawing::new(g, CyclicOrder::identity(4), vec![0, 0, 0, 0, 0, 2], 2),
            Err(BookError::PageOutOfRange { edge: 5, .. })
        ));
        assert!(CyclicOrder::new(vec![0, 0, 1]).is_err());
    }
}
