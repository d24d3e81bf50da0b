//! Left-right planarity test and Kuratowski subdivision extraction.
//!
//! The test works on the underlying simple graph: loops are ignored and
//! parallel edges are collapsed, which does not change planarity.

use crate::graph::Multigraph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Reusable scratch space for repeated planarity tests on small graphs.
#[derive(Default)]
pub struct PlanarityTester {
    adj_start: Vec<usize>,
    adj: Vec<(usize, usize)>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    pos: Vec<usize>,
    ordered: Vec<usize>,
    ordered_start: Vec<usize>,
    lowpt_edge: Vec<usize>,
    reference: Vec<usize>,
    stack_bottom: Vec<usize>,
    conflicts: Vec<ConflictPair>,
    dfs: Vec<usize>,
    entered: Vec<bool>,
    side: Vec<i8>,
    simple: Vec<(usize, usize)>,
}

impl PlanarityTester {
    pub fn new() -> Self {
        Self::default()
    }

    /// Planarity of the simple graph underlying `(n, edges)`.
    pub fn is_planar(&mut self, n: usize, edges: &[(usize, usize)]) -> bool {
        let mut simple = std::mem::take(&mut self.simple);
        simple.clear();
        simple.extend(
            edges
                .iter()
                .filter(|(a, b)| a != b)
                .map(|&(a, b)| (a.min(b), a.max(b))),
        );
        simple.sort_unstable();
        simple.dedup();
        let result = self.test_simple(n, &simple);
        self.simple = simple;
        result
    }

    fn test_simple(&mut self, n: usize, edges: &[(usize, usize)]) -> bool {
        if n < 5 || edges.len() < 9 {
            return true;
        }
        self.run(n, edges)
    }

    /// Full left-right test, leaving orientation, sides and references in place.
    fn run(&mut self, n: usize, edges: &[(usize, usize)]) -> bool {
        let m = edges.len();
        if n >= 3 && m > 3 * n - 6 {
            return false;
        }
        self.build_adjacency(n, edges);
        self.orient(n, m);
        self.order_adjacency(n, m);
        self.lowpt_edge.clear();
        self.lowpt_edge.resize(m, NONE);
        self.reference.clear();
        self.reference.resize(m, NONE);
        self.stack_bottom.clear();
        self.stack_bottom.resize(m, 0);
        self.conflicts.clear();
        self.entered.clear();
        self.entered.resize(m, false);
        self.side.clear();
        self.side.resize(m, 1);
        for root in 0..n {
            if self.parent_edge[root] == NONE && self.height[root] == 0 && !self.test_from(root) {
                return false;
            }
        }
        true
    }

    /// Planar embedding of the simple graph underlying `(n, edges)`, as the
    /// clockwise neighbour order around each vertex.
    pub fn embedding(&mut self, n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
        let mut simple: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        simple.sort_unstable();
        simple.dedup();
        if !self.run(n, &simple) {
            return None;
        }
        let m = simple.len();
        // Resolve each edge's side along its reference chain.
        let mut chain = Vec::new();
        for e in 0..m {
            let mut x = e;
            while self.reference[x] != NONE {
                chain.push(x);
                x = self.reference[x];
            }
            while let Some(y) = chain.pop() {
                let r = self.reference[y];
                self.side[y] *= self.side[r];
                self.reference[y] = NONE;
            }
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in 0..m {
            out[self.src[e]].push(e);
        }
        for list in &mut out {
            list.sort_by_key(|&e| (i64::from(self.side[e]) * self.nesting[e] as i64, e));
        }
        let mut rot: Vec<Vec<usize>> = out
            .iter()
            .map(|l| l.iter().map(|&e| self.dst[e]).collect())
            .collect();
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        let mut next = vec![0; n];
        let position = |list: &[usize], x: usize| {
            list.iter()
                .position(|&y| y == x)
                .expect("reference neighbour present")
        };
        for root in 0..n {
            if self.parent_edge[root] != NONE {
                continue;
            }
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                while next[v] < out[v].len() {
                    let e = out[v][next[v]];
                    next[v] += 1;
                    let w = self.dst[e];
                    if self.parent_edge[w] == e {
                        rot[w].insert(0, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        stack.push(v);
                        stack.push(w);
                        break;
                    }
                    if self.side[e] == 1 {
                        let i = position(&rot[w], right_ref[w]);
                        rot[w].insert(i + 1, v);
                    } else {
                        let i = position(&rot[w], left_ref[w]);
                        rot[w].insert(i, v);
                        left_ref[w] = v;
                    }
                }
            }
        }
        Some(rot)
    }

    fn build_adjacency(&mut self, n: usize, edges: &[(usize, usize)]) {
        self.adj_start.clear();
        self.adj_start.resize(n + 1, 0);
        for &(a, b) in edges {
            self.adj_start[a + 1] += 1;
            self.adj_start[b + 1] += 1;
        }
        for v in 0..n {
            self.adj_start[v + 1] += self.adj_start[v];
        }
        self.adj.clear();
        self.adj.resize(2 * edges.len(), (0, 0));
        self.pos.clear();
        self.pos.extend_from_slice(&self.adj_start[..n]);
        for (e, &(a, b)) in edges.iter().enumerate() {
            self.adj[self.pos[a]] = (b, e);
            self.pos[a] += 1;
            self.adj[self.pos[b]] = (a, e);
            self.pos[b] += 1;
        }
    }

    /// DFS orientation with lowpoints and nesting depths.
    fn orient(&mut self, n: usize, m: usize) {
        self.src.clear();
        self.src.resize(m, NONE);
        self.dst.clear();
        self.dst.resize(m, NONE);
        self.oriented.clear();
        self.oriented.resize(m, false);
        self.height.clear();
        self.height.resize(n, NONE);
        self.parent_edge.clear();
        self.parent_edge.resize(n, NONE);
        self.lowpt.clear();
        self.lowpt.resize(m, 0);
        self.lowpt2.clear();
        self.lowpt2.resize(m, 0);
        self.nesting.clear();
        self.nesting.resize(m, 0);
        self.pos.clear();
        self.pos.extend_from_slice(&self.adj_start[..n]);

        for root in 0..n {
            if self.height[root] != NONE {
                continue;
            }
            self.height[root] = 0;
            self.dfs.clear();
            self.dfs.push(root);
            while let Some(&v) = self.dfs.last() {
                if self.pos[v] < self.adj_start[v + 1] {
                    let (w, e) = self.adj[self.pos[v]];
                    self.pos[v] += 1;
                    if self.oriented[e] {
                        continue;
                    }
                    self.oriented[e] = true;
                    self.src[e] = v;
                    self.dst[e] = w;
                    self.lowpt[e] = self.height[v];
                    self.lowpt2[e] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = e;
                        self.height[w] = self.height[v] + 1;
                        self.dfs.push(w);
                    } else {
                        self.lowpt[e] = self.height[w];
                        self.finish_edge(e);
                    }
                } else {
                    self.dfs.pop();
                    let e = self.parent_edge[v];
                    if e != NONE {
                        self.finish_edge(e);
                    }
                }
            }
        }
    }

    fn finish_edge(&mut self, e: usize) {
        let v = self.src[e];
        self.nesting[e] = 2 * self.lowpt[e] + usize::from(self.lowpt2[e] < self.height[v]);
        let pe = self.parent_edge[v];
        if pe == NONE {
            return;
        }
        if self.lowpt[e] < self.lowpt[pe] {
            self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
            self.lowpt[pe] = self.lowpt[e];
        } else if self.lowpt[e] > self.lowpt[pe] {
            self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
        } else {
            self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
        }
    }

    fn order_adjacency(&mut self, n: usize, m: usize) {
        self.ordered_start.clear();
        self.ordered_start.resize(n + 1, 0);
        for e in 0..m {
            self.ordered_start[self.src[e] + 1] += 1;
        }
        for v in 0..n {
            self.ordered_start[v + 1] += self.ordered_start[v];
        }
        self.ordered.clear();
        self.ordered.resize(m, 0);
        self.pos.clear();
        self.pos.extend_from_slice(&self.ordered_start[..n]);
        for e in 0..m {
            let s = self.src[e];
            self.ordered[self.pos[s]] = e;
            self.pos[s] += 1;
        }
        for v in 0..n {
            let (a, b) = (self.ordered_start[v], self.ordered_start[v + 1]);
            let nesting = &self.nesting;
            self.ordered[a..b].sort_by_key(|&e| (nesting[e], e));
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            self.lowpt[p.right.low]
        } else if p.right.is_empty() {
            self.lowpt[p.left.low]
        } else {
            self.lowpt[p.left.low].min(self.lowpt[p.right.low])
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn test_from(&mut self, root: usize) -> bool {
        // pos[v] is the next index into v's ordered adjacency; entered[e]
        // marks tree edges whose child has already been pushed.
        self.pos.clear();
        self.pos.extend_from_slice(&self.ordered_start[..self.ordered_start.len() - 1]);
        self.dfs.clear();
        self.dfs.push(root);
        while let Some(v) = self.dfs.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while self.pos[v] < self.ordered_start[v + 1] {
                let ei = self.ordered[self.pos[v]];
                if !self.entered[ei] {
                    self.stack_bottom[ei] = self.conflicts.len();
                    let w = self.dst[ei];
                    if self.parent_edge[w] == ei {
                        self.entered[ei] = true;
                        self.dfs.push(v);
                        self.dfs.push(w);
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.conflicts.push(ConflictPair {
                        left: Interval::EMPTY,
                        right: Interval { low: ei, high: ei },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    if self.pos[v] == self.ordered_start[v] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                self.pos[v] += 1;
            }
            if !descended && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        // merge return edges of ei into p.right
        loop {
            let mut q = match self.conflicts.pop() {
                Some(q) => q,
                None => break,
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low] = self.lowpt_edge[e];
            }
            if self.conflicts.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(&top) = self.conflicts.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = top;
            self.conflicts.pop();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.reference[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.conflicts.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.conflicts.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            if top.left.low != NONE {
                self.side[top.left.low] = -1;
            }
            self.conflicts.pop();
        }
        if let Some(mut p) = self.conflicts.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.conflicts.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.conflicts.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.reference[e] =
                    if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                        hl
                    } else {
                        hr
                    };
            }
        }
    }
}

pub fn is_planar(g: &Multigraph) -> bool {
    let edges: Vec<(usize, usize)> = g.pairs().iter().map(|p| (p.u, p.v)).collect();
    PlanarityTester::new().is_planar(g.vertex_count(), &edges)
}

pub fn is_planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    PlanarityTester::new().is_planar(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K_5` or `K_{3,3}` found inside a graph. Edges are
/// referred to by their index in the edge list handed to the extractor.
#[derive(Debug, Clone)]
pub struct KuratowskiSubdivision {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    /// Each path as a list of edge indices, with the two branch vertices it joins.
    pub paths: Vec<(usize, usize, Vec<usize>)>,
}

impl KuratowskiSubdivision {
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.paths.iter().flat_map(|(_, _, p)| p.iter().copied())
    }

    /// Pairs of path indices whose paths share no branch vertex.
    pub fn independent_path_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.paths.len() {
            for j in i + 1..self.paths.len() {
                let (a, b, _) = &self.paths[i];
                let (c, d, _) = &self.paths[j];
                if a != c && a != d && b != c && b != d {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Minimal non-planar edge subset of `(n, edges)`, or `None` if planar.
/// `edges` must describe a simple graph; the result lists indices into it.
pub fn minimal_nonplanar_subset(
    tester: &mut PlanarityTester,
    n: usize,
    edges: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if tester.is_planar(n, edges) {
        return None;
    }
    let mut keep: Vec<usize> = (0..edges.len()).collect();
    let mut trial: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    // Drop blocks of edges while the rest stays non-planar, halving the block
    // size on failure; ends with single-edge checks so the result is minimal.
    let mut block = (edges.len() / 4).max(1);
    let mut i = 0;
    loop {
        if i >= keep.len() {
            if block == 1 {
                break;
            }
            block = (block / 2).max(1);
            i = 0;
            continue;
        }
        let end = (i + block).min(keep.len());
        trial.clear();
        trial.extend(
            keep[..i]
                .iter()
                .chain(keep[end..].iter())
                .map(|&k| edges[k]),
        );
        if !tester.is_planar(n, &trial) {
            keep.drain(i..end);
        } else if block == 1 {
            i += 1;
        } else {
            i = end;
        }
    }
    Some(keep)
}

/// Extracts a Kuratowski subdivision from a non-planar simple graph.
pub fn kuratowski_subdivision(
    tester: &mut PlanarityTester,
    n: usize,
    edges: &[(usize, usize)],
) -> Option<KuratowskiSubdivision> {
    let keep = minimal_nonplanar_subset(tester, n, edges)?;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &k in &keep {
        let (a, b) = edges[k];
        incident[a].push(k);
        incident[b].push(k);
    }
    let branch_vertices: Vec<usize> = (0..n).filter(|&v| incident[v].len() >= 3).collect();
    let kind = match branch_vertices.len() {
        5 => KuratowskiKind::K5,
        6 => KuratowskiKind::K33,
        other => unreachable!("minimal non-planar graph with {other} branch vertices"),
    };
    let mut is_branch = vec![false; n];
    for &b in &branch_vertices {
        is_branch[b] = true;
    }
    let mut used = vec![false; edges.len()];
    let mut paths = Vec::new();
    for &start in &branch_vertices {
        for &first in &incident[start] {
            if used[first] {
                continue;
            }
            let mut path = vec![first];
            used[first] = true;
            let (a, b) = edges[first];
            let mut at = if a == start { b } else { a };
            while !is_branch[at] {
                let next = incident[at]
                    .iter()
                    .copied()
                    .find(|&k| !used[k])
                    .expect("interior path vertex has degree 2");
                used[next] = true;
                path.push(next);
                let (a, b) = edges[next];
                at = if a == at { b } else { a };
            }
            paths.push((start, at, path));
        }
    }
    Some(KuratowskiSubdivision {
        kind,
        branch_vertices,
        paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn pairs(g: &Multigraph) -> Vec<(usize, usize)> {
        g.pairs().iter().map(|p| (p.u, p.v)).collect()
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(is_planar(&complete_graph(4)));
        assert!(!is_planar(&complete_graph(5)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(is_planar(&complete_bipartite(2, 7)));
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        assert!(!is_planar_edges(10, &edges));
    }

    #[test]
    fn grid_and_wheel_are_planar() {
        let mut grid = Vec::new();
        for r in 0..5 {
            for c in 0..5 {
                let v = r * 5 + c;
                if c + 1 < 5 {
                    grid.push((v, v + 1));
                }
                if r + 1 < 5 {
                    grid.push((v, v + 5));
                }
            }
        }
        assert!(is_planar_edges(25, &grid));
        assert!(is_planar(&cone(&cycle_graph(12).unwrap())));
    }

    #[test]
    fn parallel_edges_and_components() {
        let g = multiply_edges(&complete_graph(4), 5).unwrap();
        assert!(is_planar(&g));
        let u = disjoint_union(&complete_graph(4), &complete_graph(5));
        assert!(!is_planar(&u));
        let planar_u = disjoint_union(&complete_graph(4), &cycle_graph(7).unwrap());
        assert!(is_planar(&planar_u));
    }

    #[test]
    fn figure_graphs_are_not_planar() {
        assert!(!is_planar(&fig1_graph()));
        assert!(!is_planar(&fig3_graph()));
        assert!(!is_planar(&f_graph(6).unwrap()));
    }

    #[test]
    fn extraction_finds_k5_and_k33() {
        let mut t = PlanarityTester::new();
        let k5 = pairs(&complete_graph(5));
        let k = kuratowski_subdivision(&mut t, 5, &k5).unwrap();
        assert_eq!(k.kind, KuratowskiKind::K5);
        assert_eq!(k.paths.len(), 10);
        assert_eq!(k.independent_path_pairs().len(), 15);

        let k33 = pairs(&complete_bipartite(3, 3));
        let k = kuratowski_subdivision(&mut t, 6, &k33).unwrap();
        assert_eq!(k.kind, KuratowskiKind::K33);
        assert_eq!(k.paths.len(), 9);
        assert_eq!(k.independent_path_pairs().len(), 18);

        let sub = subdivide_edge(&complete_graph(5), 0, 3).unwrap();
        let k = kuratowski_subdivision(&mut t, sub.vertex_count(), &pairs(&sub)).unwrap();
        assert_eq!(k.edges().count(), 13);
        assert!(kuratowski_subdivision(&mut t, 4, &pairs(&complete_graph(4))).is_none());
    }

    #[test]
    fn minimal_subset_of_fig1_is_nonplanar_and_minimal() {
        let mut t = PlanarityTester::new();
        let g = fig1_graph();
        let e = pairs(&g);
        let keep = minimal_nonplanar_subset(&mut t, 9, &e).unwrap();
        let sub: Vec<_> = keep.iter().map(|&k| e[k]).collect();
        assert!(!t.is_planar(9, &sub));
        for i in 0..sub.len() {
            let mut less = sub.clone();
            less.remove(i);
            assert!(t.is_planar(9, &less));
        }
    }
}
