//! Backtracking isomorphism search for small multigraphs.

use crate::graph::Multigraph;

struct Matrix {
    n: usize,
    mult: Vec<u32>,
}

impl Matrix {
    fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let mut mult = vec![0; n * n];
        for p in g.pairs() {
            mult[p.u * n + p.v] = p.mult;
            mult[p.v * n + p.u] = p.mult;
        }
        Matrix { n, mult }
    }

    fn get(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.n + b]
    }

    /// Sorted multiset of incident multiplicities, used as a vertex invariant.
    fn signature(&self, v: usize) -> Vec<u32> {
        let mut s: Vec<u32> = (0..self.n)
            .map(|u| self.get(v, u))
            .filter(|&m| m > 0)
            .collect();
        s.sort_unstable();
        s
    }
}

struct Search<'a> {
    g: &'a Matrix,
    h: &'a Matrix,
    order: Vec<usize>,
    sig_g: Vec<Vec<u32>>,
    sig_h: Vec<Vec<u32>>,
    map: Vec<usize>,
    used: Vec<bool>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            self.found.push(self.map.clone());
            return;
        }
        let v = self.order[depth];
        for w in 0..self.h.n {
            if self.used[w] || self.sig_g[v] != self.sig_h[w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.g.get(v, u) == self.h.get(w, self.map[u]));
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            self.run(depth + 1);
            self.used[w] = false;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// Up to `limit` isomorphisms `g -> h`, each as a vector `map[v_g] = v_h`.
/// Mappings are produced in lexicographic order of the search.
pub fn isomorphisms(g: &Multigraph, h: &Multigraph, limit: usize) -> Vec<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Vec::new();
    }
    let (mg, mh) = (Matrix::new(g), Matrix::new(h));
    let n = g.vertex_count();
    let sig_g: Vec<_> = (0..n).map(|v| mg.signature(v)).collect();
    let sig_h: Vec<_> = (0..n).map(|v| mh.signature(v)).collect();
    let mut a = sig_g.clone();
    let mut b = sig_h.clone();
    a.sort();
    b.sort();
    if a != b {
        return Vec::new();
    }
    // Place vertices so that each new one is adjacent to already placed ones
    // where possible; high degree first inside each component.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (sig_g[v].len(), std::cmp::Reverse(v)))
            .expect("unplaced vertex exists");
        placed[start] = true;
        order.push(start);
        loop {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .filter(|&v| order.iter().any(|&u| mg.get(u, v) > 0))
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u| mg.get(u, v) > 0).count();
                    (links, sig_g[v].len(), std::cmp::Reverse(v))
                });
            match next {
                Some(v) => {
                    placed[v] = true;
                    order.push(v);
                }
                None => break,
            }
        }
    }
    let mut search = Search {
        g: &mg,
        h: &mh,
        order,
        sig_g,
        sig_h,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        limit,
        found: Vec::new(),
    };
    search.run(0);
    search.found
}

pub fn find_isomorphism(g: &Multigraph, h: &Multigraph) -> Option<Vec<usize>> {
    isomorphisms(g, h, 1).into_iter().next()
}

/// All automorphisms of `g`, capped at `limit`.
pub fn automorphisms(g: &Multigraph, limit: usize) -> Vec<Vec<usize>> {
    isomorphisms(g, g, limit)
}

/// True iff `map` is an isomorphism from `g` to `h`.
pub fn is_isomorphism(g: &Multigraph, h: &Multigraph, map: &[usize]) -> bool {
    match g.relabel(map) {
        Ok(image) => image == *h,
        Err(_) => false,
    }
}
