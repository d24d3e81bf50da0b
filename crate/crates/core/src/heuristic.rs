//! Upper bounds by planarization: draw a planar subgraph, then route the
//! remaining edges one at a time through the faces of an embedding, crossing
//! as little weight as possible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cert::CrossingCertificate;
use crate::planarity::PlanarityTester;

/// Faces of a rotation system, as the face index of every half-edge.
pub(crate) struct Faces {
    pub count: usize,
    face: std::collections::HashMap<(usize, usize), usize>,
}

impl Faces {
    /// Traces faces by leaving each half-edge `(v, w)` along `(w, x)` where
    /// `x` precedes `v` in the clockwise order at `w`.
    pub fn new(rot: &[Vec<usize>]) -> Self {
        let mut face = std::collections::HashMap::new();
        let mut count = 0;
        for v in 0..rot.len() {
            for &w in &rot[v] {
                if face.contains_key(&(v, w)) {
                    continue;
                }
                let (mut a, mut b) = (v, w);
                while !face.contains_key(&(a, b)) {
                    face.insert((a, b), count);
                    let list = &rot[b];
                    let i = list.iter().position(|&x| x == a).expect("symmetric rotation");
                    let x = list[(i + list.len() - 1) % list.len()];
                    (a, b) = (b, x);
                }
                count += 1;
            }
        }
        Faces { count, face }
    }

    pub fn of(&self, v: usize, w: usize) -> usize {
        self.face[&(v, w)]
    }
}

/// A weighted simple graph drawn as a planarization: crossing `i` is the
/// vertex `n + i`, and every segment records the edge it belongs to.
#[derive(Clone)]
pub(crate) struct Drawing {
    n: usize,
    edges: Vec<(usize, usize)>,
    weight: Vec<u64>,
    present: Vec<bool>,
    seg: Vec<(usize, usize)>,
    owner: Vec<usize>,
    crossings: Vec<(usize, usize)>,
    cost: u64,
    /// A fixed embedding kept up to date by insertions; without it every
    /// insertion re-embeds the planarization.
    rot: Option<Vec<Vec<usize>>>,
}

impl Drawing {
    /// Edges with `present[e]` drawn according to `cert` (a certificate over
    /// the edge list); the others are left for insertion.
    pub fn from_certificate(
        n: usize,
        edges: &[(usize, usize)],
        weight: &[u64],
        cert: &CrossingCertificate,
        present: Vec<bool>,
    ) -> Self {
        let mut d = Drawing {
            n,
            edges: edges.to_vec(),
            weight: weight.to_vec(),
            present,
            seg: Vec::new(),
            owner: Vec::new(),
            crossings: cert.crossings.clone(),
            cost: cert
                .crossings
                .iter()
                .map(|&(e, f)| weight[e] * weight[f])
                .sum(),
            rot: None,
        };
        for (e, &(u, v)) in edges.iter().enumerate() {
            if !d.present[e] {
                continue;
            }
            let mut at = u;
            for k in cert.order_along(e) {
                d.seg.push((at, n + k));
                d.owner.push(e);
                at = n + k;
            }
            d.seg.push((at, v));
            d.owner.push(e);
        }
        d
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    fn vertex_count(&self) -> usize {
        self.n + self.crossings.len()
    }

    fn adjacent(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// Routes edge `e` through the current drawing. `start` is the face
    /// holding an endpoint that has no drawn edges yet.
    pub fn insert(&mut self, tester: &mut PlanarityTester, e: usize, start: Option<usize>) -> bool {
        debug_assert!(!self.present[e]);
        let (u, v) = self.edges[e];
        let nv = self.vertex_count();
        let rot = match &self.rot {
            Some(rot) => rot.clone(),
            None => tester.embedding(nv, &self.seg).expect("drawing stays planar"),
        };
        let faces = Faces::new(&rot);
        let incident = |x: usize| -> Vec<usize> { rot[x].iter().map(|&w| faces.of(x, w)).collect() };
        let (su, tv) = (incident(u), incident(v));
        if (su.is_empty() && tv.is_empty()) || (!su.is_empty() && !tv.is_empty() && !self.connected(&rot, u, v)) {
            // A separate piece can be placed inside any face.
            self.add_route(e, &[]);
            return true;
        }
        // An isolated endpoint sits in the face `start`, or anywhere.
        let anywhere = || match start {
            Some(f) if f < faces.count => vec![f],
            _ => (0..faces.count).collect(),
        };
        let sources = if su.is_empty() { anywhere() } else { su };
        let mut targets = vec![false; faces.count];
        for f in if tv.is_empty() { anywhere() } else { tv } {
            targets[f] = true;
        }
        // Dijkstra over faces; crossing a segment costs the weight product.
        let mut dist = vec![u64::MAX; faces.count];
        let mut back: Vec<Option<(usize, usize)>> = vec![None; faces.count];
        let mut heap = BinaryHeap::new();
        for &f in &sources {
            if dist[f] != 0 {
                dist[f] = 0;
                heap.push(Reverse((0u64, f)));
            }
        }
        let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.count];
        for (s, &(a, b)) in self.seg.iter().enumerate() {
            if self.adjacent(e, self.owner[s]) {
                continue;
            }
            let (f1, f2) = (faces.of(a, b), faces.of(b, a));
            if f1 != f2 {
                dual[f1].push((f2, s));
                dual[f2].push((f1, s));
            }
        }
        let mut reached = None;
        while let Some(Reverse((d, f))) = heap.pop() {
            if d > dist[f] {
                continue;
            }
            if targets[f] {
                reached = Some(f);
                break;
            }
            for &(g, s) in &dual[f] {
                let nd = d + self.weight[e] * self.weight[self.owner[s]];
                if nd < dist[g] {
                    dist[g] = nd;
                    back[g] = Some((f, s));
                    heap.push(Reverse((nd, g)));
                }
            }
        }
        let Some(end) = reached else {
            return false;
        };
        let mut f = end;
        let mut route = Vec::new();
        let mut visited = vec![end];
        while let Some((prev, s)) = back[f] {
            route.push(s);
            f = prev;
            visited.push(f);
        }
        route.reverse();
        visited.reverse();
        let mut owners: Vec<usize> = route.iter().map(|&s| self.owner[s]).collect();
        owners.sort_unstable();
        if owners.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if self.rot.is_some() {
            self.embed_route(&faces, e, &route, &visited);
        }
        self.add_route(e, &route);
        true
    }

    /// Updates the fixed embedding for a route about to be added: `visited`
    /// lists the faces passed, one more than the crossed segments.
    fn embed_route(&mut self, faces: &Faces, e: usize, route: &[usize], visited: &[usize]) {
        let (u, v) = self.edges[e];
        let first = self.vertex_count();
        let rot = self.rot.as_mut().expect("fixed embedding");
        rot.resize(first + route.len(), Vec::new());
        let hop = |i: usize| if i == 0 { u } else if i > route.len() { v } else { first + i - 1 };
        // Index in rot[x] before which a new neighbour lands inside face f.
        let corner = |rot: &[Vec<usize>], x: usize, f: usize| -> usize {
            rot[x].iter().position(|&y| faces.of(y, x) == f).unwrap_or(0)
        };
        let at_u = corner(rot, u, visited[0]);
        let at_v = corner(rot, v, visited[route.len()]);
        for (i, &s) in route.iter().enumerate() {
            let (a, b) = self.seg[s];
            let d = first + i;
            for (x, old) in [(a, b), (b, a)] {
                let slot = rot[x].iter().position(|&y| y == old).expect("segment in rotation");
                rot[x][slot] = d;
            }
            let (p, q) = (hop(i), hop(i + 2));
            rot[d] = if faces.of(a, b) == visited[i] {
                vec![a, q, b, p]
            } else {
                vec![a, p, b, q]
            };
        }
        rot[u].insert(at_u, hop(1));
        rot[v].insert(at_v, hop(route.len()));
    }

    fn connected(&self, rot: &[Vec<usize>], u: usize, v: usize) -> bool {
        let mut seen = vec![false; rot.len()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            if x == v {
                return true;
            }
            for &y in &rot[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn add_route(&mut self, e: usize, route: &[usize]) {
        let (u, v) = self.edges[e];
        let mut at = u;
        for &s in route {
            let f = self.owner[s];
            let d = self.vertex_count();
            self.crossings.push((e, f));
            self.cost += self.weight[e] * self.weight[f];
            let (a, b) = self.seg[s];
            self.seg[s] = (a, d);
            self.seg.push((d, b));
            self.owner.push(f);
            self.seg.push((at, d));
            self.owner.push(e);
            at = d;
        }
        self.seg.push((at, v));
        self.owner.push(e);
        self.present[e] = true;
    }

    /// Certificate over the edge list, orders read off the segment chains.
    pub fn certificate(&self) -> CrossingCertificate {
        let nv = self.vertex_count();
        let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (s, &(a, b)) in self.seg.iter().enumerate() {
            at_vertex[a].push(s);
            at_vertex[b].push(s);
        }
        let mut orders = std::collections::BTreeMap::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if !self.present[e] {
                continue;
            }
            let mut order = Vec::new();
            let (mut x, mut prev) = (u, usize::MAX);
            while x != v {
                let s = *at_vertex[x]
                    .iter()
                    .find(|&&s| self.owner[s] == e && s != prev)
                    .expect("segment chain is unbroken");
                let (a, b) = self.seg[s];
                x = if a == x { b } else { a };
                prev = s;
                if x >= self.n {
                    order.push(x - self.n);
                }
            }
            orders.insert(e, order);
        }
        CrossingCertificate::from_orders(self.crossings.clone(), orders)
    }

    /// Draws every missing edge in the given order.
    pub fn complete(&mut self, tester: &mut PlanarityTester, order: &[usize]) -> bool {
        for &e in order {
            if !self.present[e] && !self.insert(tester, e, None) {
                return false;
            }
        }
        true
    }

    /// Removes edge `e` together with its crossings and redraws it.
    pub fn reroute(&self, tester: &mut PlanarityTester, e: usize) -> Option<Drawing> {
        let cert = self.certificate();
        let without = cert.restrict_map(|x| x != e, |x| x);
        let mut present = self.present.clone();
        present[e] = false;
        let mut d = Drawing::from_certificate(self.n, &self.edges, &self.weight, &without, present);
        d.insert(tester, e, None).then_some(d)
    }
}

/// Greedy planar subgraph in `order`, then insertion of the rest, then
/// rerouting single edges while that helps.
fn attempt(
    tester: &mut PlanarityTester,
    n: usize,
    edges: &[(usize, usize)],
    weight: &[u64],
    order: &[usize],
) -> Option<Drawing> {
    let mut present = vec![false; edges.len()];
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for &e in order {
        chosen.push(edges[e]);
        if tester.is_planar(n, &chosen) {
            present[e] = true;
        } else {
            chosen.pop();
        }
    }
    let mut d = Drawing::from_certificate(n, edges, weight, &CrossingCertificate::empty(), present);
    if !d.complete(tester, order) {
        return None;
    }
    let mut improved = true;
    while improved {
        improved = false;
        for e in 0..edges.len() {
            if let Some(r) = d.reroute(tester, e) {
                if r.cost() < d.cost() {
                    d = r;
                    improved = true;
                }
            }
        }
    }
    Some(d)
}

/// Best drawing found over `attempts` edge orders, as a certificate over
/// `edges` with its weighted cost.
pub fn insertion_certificate(
    n: usize,
    edges: &[(usize, usize)],
    weight: &[u64],
    attempts: usize,
    seed: u64,
) -> Option<(u64, CrossingCertificate)> {
    let mut tester = PlanarityTester::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&e| (Reverse(weight[e]), e));
    let mut best: Option<(u64, CrossingCertificate)> = None;
    for i in 0..attempts.max(1) {
        if i > 0 {
            order.shuffle(&mut rng);
        }
        if let Some(d) = attempt(&mut tester, n, edges, weight, &order) {
            if best.as_ref().is_none_or(|b| d.cost() < b.0) {
                best = Some((d.cost(), d.certificate()));
            }
        }
    }
    best
}

/// Adds a vertex joined to `neighbours` into an existing drawing: the new
/// edges are `edges[first_new..]`, all incident to the isolated vertex.
/// Tries every face as the new vertex's position.
pub fn insert_vertex(
    n: usize,
    edges: &[(usize, usize)],
    weight: &[u64],
    cert: &CrossingCertificate,
    first_new: usize,
) -> Option<(u64, CrossingCertificate)> {
    let mut tester = PlanarityTester::new();
    let present: Vec<bool> = (0..edges.len()).map(|e| e < first_new).collect();
    let base = Drawing::from_certificate(n, edges, weight, cert, present);
    let nv = base.vertex_count();
    let rot = tester.embedding(nv, &base.seg)?;
    let faces = Faces::new(&rot).count.max(1);
    let mut best: Option<(u64, CrossingCertificate)> = None;
    for face in 0..faces {
        let mut d = base.clone();
        d.rot = Some(rot.clone());
        let mut ok = d.insert(&mut tester, first_new, Some(face));
        for e in first_new + 1..edges.len() {
            ok = ok && d.insert(&mut tester, e, None);
        }
        if ok && best.as_ref().is_none_or(|b| d.cost() < b.0) {
            best = Some((d.cost(), d.certificate()));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify_certificate;
    use crate::graph::*;

    fn simple_edges(g: &Multigraph) -> (Vec<(usize, usize)>, Vec<u64>) {
        (
            g.pairs().iter().map(|p| (p.u, p.v)).collect(),
            g.pairs().iter().map(|p| p.mult as u64).collect(),
        )
    }

    #[test]
    fn embeddings_satisfy_euler() {
        let planar = [
            complete_graph(4),
            cycle_graph(7).unwrap(),
            complete_bipartite(2, 5),
            disjoint_union(&complete_graph(4), &cycle_graph(5).unwrap()),
            Multigraph::from_edges(
                8,
                &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
            )
            .unwrap(),
        ];
        for g in planar {
            let (edges, _) = simple_edges(&g);
            let rot = PlanarityTester::new().embedding(g.vertex_count(), &edges).unwrap();
            let faces = Faces::new(&rot).count;
            let comps = g.components().iter().filter(|c| c.len() > 1).count();
            let active = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).count();
            assert_eq!(active + faces, edges.len() + comps + comps, "{g:?}");
        }
        assert!(PlanarityTester::new().embedding(5, &simple_edges(&complete_graph(5)).0).is_none());
    }

    fn heuristic_value(g: &Multigraph) -> usize {
        let (edges, weight) = simple_edges(g);
        let (cost, cert) = insertion_certificate(g.vertex_count(), &edges, &weight, 8, 1).unwrap();
        let full = crate::cert::expand_certificate(g, &cert).unwrap();
        assert_eq!(verify_certificate(g, &full), (cost as usize, true));
        cost as usize
    }

    #[test]
    fn insertion_finds_small_optima() {
        assert_eq!(heuristic_value(&complete_graph(5)), 1);
        assert_eq!(heuristic_value(&complete_bipartite(3, 3)), 1);
        assert_eq!(heuristic_value(&complete_graph(6)), 3);
        assert!(heuristic_value(&fig1_graph()) <= 4);
        assert_eq!(heuristic_value(&multiply_edges(&complete_graph(5), 2).unwrap()), 4);
    }

    #[test]
    fn vertex_insertion_builds_cone_drawings() {
        let g = complete_graph(5);
        let c = cone(&g);
        let (edges, weight) = simple_edges(&c);
        // move apex edges to the end, keeping K5 edges first
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&e| (edges[e].1 == 5, e));
        let reordered: Vec<(usize, usize)> = order.iter().map(|&e| edges[e]).collect();
        let w: Vec<u64> = order.iter().map(|&e| weight[e]).collect();
        let k5_edges = &reordered[..10];
        let (_, k5_cert) = insertion_certificate(5, k5_edges, &w[..10], 1, 0).unwrap();
        let (cost, cert) = insert_vertex(6, &reordered, &w, &k5_cert, 10).unwrap();
        assert_eq!(cost, 3);
        let mut renamed = cert.clone();
        for p in &mut renamed.crossings {
            *p = (order[p.0], order[p.1]);
        }
        renamed.edge_orders = cert.edge_orders.iter().map(|(&e, o)| (order[e], o.clone())).collect();
        assert_eq!(verify_certificate(&c, &renamed), (3, true));
    }
}
