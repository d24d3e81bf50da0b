//! Loopless undirected multigraphs and the graph families used throughout the crate.
//!
//! A [`Multigraph`] stores one entry per unordered vertex pair together with its
//! multiplicity. Individual edge *instances* get dense ids `0..M` assigned by
//! sorting on `(min endpoint, max endpoint, copy index)`, so instance ids only
//! depend on the `(n, sorted entry list)` value and survive serialization.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("pair ({0}, {1}) listed more than once")]
    DuplicatePair(usize, usize),
    #[error("pair ({0}, {1}) has multiplicity 0")]
    ZeroMultiplicity(usize, usize),
    #[error("edge instance {id} does not exist (graph has {count} instances)")]
    InvalidEdge { id: usize, count: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// One `(u, v, mult)` entry, always with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgePair {
    pub u: usize,
    pub v: usize,
    pub mult: u32,
}

/// A single copy of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeInstance {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    /// Index of the parent entry in [`Multigraph::pairs`].
    pub pair: usize,
    /// Copy index within the parent entry.
    pub copy: u32,
}

impl EdgeInstance {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn shares_endpoint(&self, other: &EdgeInstance) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    pairs: Vec<EdgePair>,
    instances: Vec<EdgeInstance>,
}

impl Multigraph {
    /// Builds a graph from `(u, v, mult)` entries. Entries may come in any order
    /// and orientation; each unordered pair may appear at most once.
    pub fn new<I>(n: usize, entries: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut pairs = Vec::new();
        for (a, b, mult) in entries {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if mult == 0 {
                return Err(GraphError::ZeroMultiplicity(u, v));
            }
            pairs.push(EdgePair { u, v, mult });
        }
        pairs.sort();
        if let Some(w) = pairs.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(GraphError::DuplicatePair(w[0].u, w[0].v));
        }
        Ok(Self::from_sorted(n, pairs))
    }

    /// Builds a graph from a plain edge list; repeated pairs accumulate multiplicity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut acc: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            *acc.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        Self::new(n, acc.into_iter().map(|((u, v), m)| (u, v, m)))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, pairs: Vec<EdgePair>) -> Self {
        let mut instances = Vec::new();
        for (pi, p) in pairs.iter().enumerate() {
            for copy in 0..p.mult {
                instances.push(EdgeInstance {
                    id: instances.len(),
                    u: p.u,
                    v: p.v,
                    pair: pi,
                    copy,
                });
            }
        }
        Multigraph {
            n,
            pairs,
            instances,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edge instances (parallel copies counted separately).
    pub fn edge_count(&self) -> usize {
        self.instances.len()
    }

    pub fn pairs(&self) -> &[EdgePair] {
        &self.pairs
    }

    pub fn instances(&self) -> &[EdgeInstance] {
        &self.instances
    }

    /// Index into [`Multigraph::pairs`] of the pair `{a, b}`.
    pub fn pair_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.pairs.binary_search_by(|p| (p.u, p.v).cmp(&key)).ok()
    }

    /// Id of the first instance of pair `pair`; copies follow consecutively.
    pub fn first_instance(&self, pair: usize) -> usize {
        self.instances
            .partition_point(|e| e.pair < pair)
    }

    /// Id of copy `copy` of the pair `{a, b}`.
    pub fn instance_id(&self, a: usize, b: usize, copy: u32) -> Option<usize> {
        let pi = self.pair_index(a, b)?;
        (copy < self.pairs[pi].mult).then(|| self.first_instance(pi) + copy as usize)
    }

    pub fn instance(&self, id: usize) -> Result<&EdgeInstance, GraphError> {
        self.instances.get(id).ok_or(GraphError::InvalidEdge {
            id,
            count: self.instances.len(),
        })
    }

    pub fn is_simple(&self) -> bool {
        self.pairs.iter().all(|p| p.mult == 1)
    }

    /// Multiplicity of the pair `{a, b}` (0 when absent).
    pub fn multiplicity(&self, a: usize, b: usize) -> u32 {
        self.pair_index(a, b).map_or(0, |i| self.pairs[i].mult)
    }

    /// Degree counting parallel copies.
    pub fn degree(&self, v: usize) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.u == v || p.v == v)
            .map(|p| p.mult as usize)
            .sum()
    }

    /// Sorted neighbour list of the underlying simple graph.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .pairs
            .iter()
            .filter_map(|p| {
                if p.u == v {
                    Some(p.v)
                } else if p.v == v {
                    Some(p.u)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The underlying simple graph.
    pub fn simplification(&self) -> Multigraph {
        let pairs = self
            .pairs
            .iter()
            .map(|p| EdgePair { mult: 1, ..*p })
            .collect();
        Self::from_sorted(self.n, pairs)
    }

    /// `(n, sorted (u, v, mult) list)`, the value the file format stores.
    pub fn entries(&self) -> Vec<(usize, usize, u32)> {
        self.pairs.iter().map(|p| (p.u, p.v, p.mult)).collect()
    }

    /// Applies `perm` (old id -> new id) to every vertex.
    pub fn relabel(&self, perm: &[usize]) -> Result<Multigraph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidParameter(
                    "relabeling is not a permutation".into(),
                ));
            }
        }
        Self::new(
            self.n,
            self.pairs.iter().map(|p| (perm[p.u], perm[p.v], p.mult)),
        )
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in &self.pairs {
            let (a, b) = (find(&mut parent, p.u), find(&mut parent, p.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Induced subgraph on `vertices` (renumbered in the given order), plus
    /// the map from new pair indices to pair indices of `self`.
    pub fn induced(&self, vertices: &[usize]) -> (Multigraph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut kept: Vec<(EdgePair, usize)> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| index[p.u] != usize::MAX && index[p.v] != usize::MAX)
            .map(|(i, p)| {
                let (a, b) = (index[p.u], index[p.v]);
                (
                    EdgePair {
                        u: a.min(b),
                        v: a.max(b),
                        mult: p.mult,
                    },
                    i,
                )
            })
            .collect();
        kept.sort();
        let map = kept.iter().map(|&(_, i)| i).collect();
        let pairs = kept.into_iter().map(|(p, _)| p).collect();
        (Self::from_sorted(vertices.len(), pairs), map)
    }

    /// Graphviz rendering; `labels` optionally annotates edge instances.
    pub fn to_dot(&self, name: &str, labels: Option<&dyn Fn(usize) -> String>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for e in &self.instances {
            match labels {
                Some(f) => {
                    let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, f(e.id));
                }
                None => {
                    let _ = writeln!(out, "  {} -- {};", e.u, e.v);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The complete graph `K_n`.
pub fn complete_graph(n: usize) -> Multigraph {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push(EdgePair { u, v, mult: 1 });
        }
    }
    Multigraph::from_sorted(n, pairs)
}

/// The complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let mut pairs = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            pairs.push(EdgePair { u, v, mult: 1 });
        }
    }
    Multigraph::from_sorted(a + b, pairs)
}

pub fn cycle_graph(n: usize) -> Result<Multigraph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n, 1)))
}

/// Adds an apex with id `n` joined by a simple edge to every original vertex.
pub fn cone(g: &Multigraph) -> Multigraph {
    let apex = g.n;
    let mut pairs = g.pairs.clone();
    pairs.extend((0..g.n).map(|u| EdgePair {
        u,
        v: apex,
        mult: 1,
    }));
    pairs.sort();
    Multigraph::from_sorted(g.n + 1, pairs)
}

/// The family `F_k`: a `k`-cycle `x_0..x_{k-1}` (ids `0..k`) inside a
/// `2k`-cycle `y_0..y_{2k-1}` (ids `k..3k`), with `x_i` joined to
/// `y_{2i-2}, y_{2i-1}, y_{2i}, y_{2i+1}` (indices mod `2k`).
pub fn f_graph(k: usize) -> Result<Multigraph, GraphError> {
    if k < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "F_k needs k >= 3, got {k}"
        )));
    }
    let y = |j: usize| k + j % (2 * k);
    let mut edges = Vec::with_capacity(7 * k);
    for i in 0..k {
        edges.push((i, (i + 1) % k, 1));
    }
    for j in 0..2 * k {
        edges.push((y(j), y(j + 1), 1));
    }
    for i in 0..k {
        for off in 0..4 {
            // 2i - 2 + off, kept non-negative
            edges.push((i, y(2 * i + 2 * k - 2 + off), 1));
        }
    }
    Multigraph::new(3 * k, edges)
}

/// Vertex names of [`fig1_graph`], indexed by vertex id.
pub const FIG1_LABELS: [&str; 9] = ["1", "2", "3", "11", "12", "21", "22", "31", "32"];

/// The 9-vertex, 21-edge counterexample graph of the first figure.
///
/// Transcription (figure labels, ids from [`FIG1_LABELS`]):
/// * inner triangle: `1-2`, `1-3`, `2-3`;
/// * outer hexagon in angular order `32(0°) 11(60°) 12(120°) 21(180°) 22(240°) 31(300°)`:
///   `32-11`, `11-12`, `12-21`, `21-22`, `22-31`, `31-32`;
/// * from `1`: `12`, `11`, `32`, `31`;
/// * from `2`: `11`, `12`, `21`, `22`;
/// * from `3`: `32`, `31`, `22`, `21`.
pub fn fig1_graph() -> Multigraph {
    const N1: usize = 0;
    const N2: usize = 1;
    const N3: usize = 2;
    const N11: usize = 3;
    const N12: usize = 4;
    const N21: usize = 5;
    const N22: usize = 6;
    const N31: usize = 7;
    const N32: usize = 8;
    let edges = [
        (N1, N2),
        (N1, N3),
        (N2, N3),
        (N32, N11),
        (N11, N12),
        (N12, N21),
        (N21, N22),
        (N22, N31),
        (N31, N32),
        (N1, N12),
        (N1, N11),
        (N1, N32),
        (N1, N31),
        (N2, N11),
        (N2, N12),
        (N2, N21),
        (N2, N22),
        (N3, N32),
        (N3, N31),
        (N3, N22),
        (N3, N21),
    ];
    Multigraph::from_edges(9, &edges).expect("fixture is valid")
}

/// The 7-vertex graph of the third figure: hub `0` joined to the hexagon
/// `1-2-3-4-5-6-1`, plus chords `1-3`, `3-5` (inside) and `2-4`, `4-6`
/// (drawn outside the hexagon).
pub fn fig3_graph() -> Multigraph {
    let mut edges: Vec<(usize, usize)> = (1..=6).map(|i| (0, i)).collect();
    edges.extend((1..=6).map(|i| (i, i % 6 + 1)));
    edges.extend([(1, 3), (3, 5), (2, 4), (4, 6)]);
    Multigraph::from_edges(7, &edges).expect("fixture is valid")
}

pub fn multiply_edges(g: &Multigraph, r: u32) -> Result<Multigraph, GraphError> {
    if r == 0 {
        return Err(GraphError::InvalidParameter("multiplier must be >= 1".into()));
    }
    let pairs = g
        .pairs
        .iter()
        .map(|p| EdgePair {
            mult: p.mult * r,
            ..*p
        })
        .collect();
    Ok(Multigraph::from_sorted(g.n, pairs))
}

/// `g` followed by `h` with `h`'s vertices shifted by `g.n`.
pub fn disjoint_union(g: &Multigraph, h: &Multigraph) -> Multigraph {
    let mut pairs = g.pairs.clone();
    pairs.extend(h.pairs.iter().map(|p| EdgePair {
        u: p.u + g.n,
        v: p.v + g.n,
        mult: p.mult,
    }));
    Multigraph::from_sorted(g.n + h.n, pairs)
}

/// Replaces edge instance `id` by a path through `t` new vertices `n..n+t`.
pub fn subdivide_edge(g: &Multigraph, id: usize, t: usize) -> Result<Multigraph, GraphError> {
    if t == 0 {
        return Err(GraphError::InvalidParameter(
            "subdivision needs at least one new vertex".into(),
        ));
    }
    let inst = *g.instance(id)?;
    let mut entries: Vec<(usize, usize, u32)> = g
        .pairs
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let mult = if i == inst.pair { p.mult - 1 } else { p.mult };
            (mult > 0).then_some((p.u, p.v, mult))
        })
        .collect();
    let mut path = vec![inst.u];
    path.extend(g.n..g.n + t);
    path.push(inst.v);
    entries.extend(path.windows(2).map(|w| (w[0], w[1], 1)));
    Multigraph::new(g.n + t, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        assert_eq!(complete_graph(5).edge_count(), 10);
        assert_eq!(complete_graph(7).edge_count(), 21);
        let k1 = complete_graph(1);
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
    }

    #[test]
    fn cone_examples() {
        assert_eq!(cone(&complete_graph(5)), complete_graph(6));
        let star = cone(&Multigraph::empty(3));
        assert_eq!(star.entries(), vec![(0, 3, 1), (1, 3, 1), (2, 3, 1)]);
        let c = cone(&f_graph(3).unwrap());
        assert_eq!((c.vertex_count(), c.edge_count()), (10, 30));
    }

    #[test]
    fn f_graph_counts_and_degrees() {
        for k in 3..=50 {
            let g = f_graph(k).unwrap();
            assert_eq!(g.vertex_count(), 3 * k);
            assert_eq!(g.edge_count(), 7 * k);
            assert!(g.is_simple());
            for x in 0..k {
                assert_eq!(g.degree(x), 6);
            }
            for y in k..3 * k {
                assert_eq!(g.degree(y), 4);
            }
        }
        assert!(f_graph(2).is_err());
    }

    #[test]
    fn figure_fixtures() {
        let g1 = fig1_graph();
        assert_eq!((g1.vertex_count(), g1.edge_count()), (9, 21));
        let g3 = fig3_graph();
        assert_eq!((g3.vertex_count(), g3.edge_count()), (7, 16));
        assert_eq!(g3.degree(0), 6);
        let c3 = cone(&g3);
        assert_eq!((c3.vertex_count(), c3.edge_count()), (8, 23));
    }

    #[test]
    fn multiply_and_union() {
        let g1 = fig1_graph();
        assert_eq!(multiply_edges(&g1, 1).unwrap(), g1);
        assert_eq!(multiply_edges(&g1, 2).unwrap().edge_count(), 42);
        assert_eq!(multiply_edges(&complete_graph(5), 3).unwrap().edge_count(), 30);
        assert!(multiply_edges(&g1, 0).is_err());

        let u = disjoint_union(&complete_graph(7), &complete_graph(5));
        assert_eq!((u.vertex_count(), u.edge_count()), (12, 31));
        let cu = cone(&u);
        assert_eq!((cu.vertex_count(), cu.edge_count()), (13, 43));
        let with_isolated = disjoint_union(&g1, &Multigraph::empty(2));
        assert_eq!(with_isolated.vertex_count(), 11);
        assert_eq!(with_isolated.entries(), g1.entries());
    }

    #[test]
    fn subdivision() {
        let k5 = complete_graph(5);
        let s = subdivide_edge(&k5, 3, 1).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (6, 11));
        assert!(subdivide_edge(&k5, 3, 0).is_err());
        assert!(subdivide_edge(&k5, 10, 1).is_err());
        let doubled = multiply_edges(&k5, 2).unwrap();
        let s2 = subdivide_edge(&doubled, 0, 2).unwrap();
        assert_eq!(s2.multiplicity(0, 1), 1);
        assert_eq!(s2.edge_count(), 22);
    }

    #[test]
    fn instance_ids_are_sorted_by_pair_then_copy() {
        let g = Multigraph::new(3, [(2, 1, 2), (0, 1, 1)]).unwrap();
        let ids: Vec<_> = g.instances().iter().map(|e| (e.u, e.v, e.copy)).collect();
        assert_eq!(ids, vec![(0, 1, 0), (1, 2, 0), (1, 2, 1)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Multigraph::new(3, [(1, 1, 1)]).unwrap_err(),
            GraphError::Loop(1)
        );
        assert!(matches!(
            Multigraph::new(3, [(0, 3, 1)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Multigraph::new(3, [(0, 1, 1), (1, 0, 2)]),
            Err(GraphError::DuplicatePair(0, 1))
        ));
        assert!(Multigraph::new(3, [(0, 1, 0)]).is_err());
        assert!(cycle_graph(2).is_err());
        assert_eq!(cycle_graph(6).unwrap().edge_count(), 6);
    }

    #[test]
    fn components_and_induced() {
        let u = disjoint_union(&complete_graph(3), &cycle_graph(4).unwrap());
        assert_eq!(u.components(), vec![vec![0, 1, 2], vec![3, 4, 5, 6]]);
        let (sub, map) = u.induced(&[3, 4, 5, 6]);
        assert_eq!(sub, cycle_graph(4).unwrap());
        assert_eq!(map.len(), 4);
    }
}
