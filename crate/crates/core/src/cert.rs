//! Crossing certificates: a list of crossing edge pairs plus the order of the
//! crossings along every edge that is crossed more than once. A certificate
//! witnesses `cr(G) <= c` when its planarization is planar.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::book::{chords_interleave, CyclicOrder};
use crate::graph::Multigraph;
use crate::planarity::PlanarityTester;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("edge {0} does not exist")]
    InvalidEdge(usize),
    #[error("edge {0} crosses itself")]
    SelfCrossing(usize),
    #[error("edges {0} and {1} share an endpoint")]
    AdjacentPair(usize, usize),
    #[error("pair ({0}, {1}) listed more than once")]
    RepeatedPair(usize, usize),
    #[error("crossing order of edge {0} does not list exactly its crossings")]
    OrderMismatch(usize),
    #[error("edge {0} is crossed more than once but has no crossing order")]
    MissingOrder(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossingCertificate {
    /// Crossing edge-instance pairs; crossing `i` is `crossings[i]`.
    pub crossings: Vec<(usize, usize)>,
    /// Crossing indices along an edge, walking from its smaller endpoint.
    pub edge_orders: BTreeMap<usize, Vec<usize>>,
}

impl CrossingCertificate {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Builds a certificate from pairs and full per-edge orders, keeping only
    /// the orders of edges crossed at least twice.
    pub fn from_orders(crossings: Vec<(usize, usize)>, orders: BTreeMap<usize, Vec<usize>>) -> Self {
        let edge_orders = orders.into_iter().filter(|(_, o)| o.len() >= 2).collect();
        CrossingCertificate {
            crossings,
            edge_orders,
        }
    }

    pub fn validate(&self, g: &Multigraph) -> Result<(), CertError> {
        let m = g.edge_count();
        let mut seen = std::collections::HashSet::new();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (i, &(e, f)) in self.crossings.iter().enumerate() {
            for x in [e, f] {
                if x >= m {
                    return Err(CertError::InvalidEdge(x));
                }
            }
            if e == f {
                return Err(CertError::SelfCrossing(e));
            }
            let (ie, jf) = (g.instances()[e], g.instances()[f]);
            if ie.shares_endpoint(&jf) {
                return Err(CertError::AdjacentPair(e, f));
            }
            if !seen.insert((e.min(f), e.max(f))) {
                return Err(CertError::RepeatedPair(e, f));
            }
            incident[e].push(i);
            incident[f].push(i);
        }
        for (&e, order) in &self.edge_orders {
            if e >= m {
                return Err(CertError::InvalidEdge(e));
            }
            let mut a = order.clone();
            a.sort_unstable();
            if a != incident[e] {
                return Err(CertError::OrderMismatch(e));
            }
        }
        if let Some(e) = (0..m).find(|&e| incident[e].len() >= 2 && !self.edge_orders.contains_key(&e)) {
            return Err(CertError::MissingOrder(e));
        }
        Ok(())
    }

    /// Crossing indices along edge `e` from its smaller endpoint.
    pub fn order_along(&self, e: usize) -> Vec<usize> {
        if let Some(o) = self.edge_orders.get(&e) {
            return o.clone();
        }
        self.crossings
            .iter()
            .position(|&(a, b)| a == e || b == e)
            .into_iter()
            .collect()
    }

    /// Keeps the crossings whose edges both satisfy `keep` and renames edges by `rename`.
    pub fn restrict_map(
        &self,
        keep: impl Fn(usize) -> bool,
        rename: impl Fn(usize) -> usize,
    ) -> CrossingCertificate {
        let mut new_index = vec![usize::MAX; self.crossings.len()];
        let mut crossings = Vec::new();
        for (i, &(e, f)) in self.crossings.iter().enumerate() {
            if keep(e) && keep(f) {
                new_index[i] = crossings.len();
                crossings.push((rename(e), rename(f)));
            }
        }
        let mut orders = BTreeMap::new();
        for (&e, order) in &self.edge_orders {
            if !keep(e) {
                continue;
            }
            let o: Vec<usize> = order
                .iter()
                .map(|&i| new_index[i])
                .filter(|&i| i != usize::MAX)
                .collect();
            orders.insert(rename(e), o);
        }
        Self::from_orders(crossings, orders)
    }

    /// Concatenates certificates over disjoint edge sets.
    pub fn merge(parts: impl IntoIterator<Item = CrossingCertificate>) -> CrossingCertificate {
        let mut out = CrossingCertificate::empty();
        for part in parts {
            let offset = out.crossings.len();
            out.crossings.extend(part.crossings);
            for (e, o) in part.edge_orders {
                out.edge_orders
                    .insert(e, o.into_iter().map(|i| i + offset).collect());
            }
        }
        out
    }
}

/// Carries `cert` along the vertex map `map[v_g] = v_h` onto `h`, reversing
/// crossing orders of edges whose endpoints swap order. `None` if some edge
/// has no image.
pub fn relabel_certificate(
    g: &Multigraph,
    h: &Multigraph,
    map: &[usize],
    cert: &CrossingCertificate,
) -> Option<CrossingCertificate> {
    let image: Vec<Option<usize>> = g
        .instances()
        .iter()
        .map(|e| h.instance_id(map[e.u], map[e.v], e.copy))
        .collect();
    if cert
        .crossings
        .iter()
        .any(|&(e, f)| image.get(e).copied().flatten().is_none() || image.get(f).copied().flatten().is_none())
    {
        return None;
    }
    let mut out = cert.restrict_map(|_| true, |e| image[e].expect("checked above"));
    for (&e, order) in &cert.edge_orders {
        let inst = g.instances()[e];
        if map[inst.u] > map[inst.v] {
            let mut o = order.clone();
            o.reverse();
            out.edge_orders.insert(image[e]?, o);
        }
    }
    Some(out)
}

/// Vertex count and edge list of the planarization, without validation.
pub(crate) fn planarization_edges(
    g: &Multigraph,
    cert: &CrossingCertificate,
) -> (usize, Vec<(usize, usize)>) {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count() + 2 * cert.len());
    for e in g.instances() {
        let mut at = e.u;
        for i in cert.order_along(e.id) {
            edges.push((at, n + i));
            at = n + i;
        }
        edges.push((at, e.v));
    }
    (n + cert.len(), edges)
}

/// Replaces every crossing by a degree-4 vertex `n + i`.
pub fn planarize(g: &Multigraph, cert: &CrossingCertificate) -> Result<Multigraph, CertError> {
    cert.validate(g)?;
    let (n, edges) = planarization_edges(g, cert);
    Ok(Multigraph::from_edges(n, &edges).expect("planarization is loopless"))
}

/// Crossing count and whether the certificate is valid and realizable.
pub fn verify_certificate(g: &Multigraph, cert: &CrossingCertificate) -> (usize, bool) {
    let valid = cert.validate(g).is_ok() && {
        let (n, edges) = planarization_edges(g, cert);
        PlanarityTester::new().is_planar(n, &edges)
    };
    (cert.len(), valid)
}

/// Expands a certificate of the simplification of `g` to one of `g`.
///
/// Each simplified edge becomes a bundle of parallel copies drawn side by
/// side, so a crossing of two simplified edges becomes a grid of copy
/// crossings. `signs[k]` picks the orientation of the grid at crossing `k`:
/// when false, copies of the second edge appear in increasing order along the
/// first and copies of the first appear in decreasing order along the second.
pub fn expand_with_signs(
    g: &Multigraph,
    simple: &CrossingCertificate,
    signs: &[bool],
) -> CrossingCertificate {
    let pairs = g.pairs();
    let mut crossings = Vec::new();
    // index[k][i * mult_f + j]: crossing of copy i of the first edge with copy j of the second
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(simple.len());
    for &(e, f) in &simple.crossings {
        let (me, mf) = (pairs[e].mult as usize, pairs[f].mult as usize);
        let (be, bf) = (g.first_instance(e), g.first_instance(f));
        let mut block = Vec::with_capacity(me * mf);
        for i in 0..me {
            for j in 0..mf {
                block.push(crossings.len());
                crossings.push((be + i, bf + j));
            }
        }
        index.push(block);
    }
    let mut orders = BTreeMap::new();
    for (p, pair) in pairs.iter().enumerate() {
        let along = simple.order_along(p);
        if along.is_empty() {
            continue;
        }
        let base = g.first_instance(p);
        for copy in 0..pair.mult as usize {
            let mut order = Vec::new();
            for &k in &along {
                let (e, f) = simple.crossings[k];
                let mf = pairs[f].mult as usize;
                if e == p {
                    let mut js: Vec<usize> = (0..mf).collect();
                    if signs[k] {
                        js.reverse();
                    }
                    order.extend(js.into_iter().map(|j| index[k][copy * mf + j]));
                } else {
                    let me = pairs[e].mult as usize;
                    let mut is: Vec<usize> = (0..me).rev().collect();
                    if signs[k] {
                        is.reverse();
                    }
                    order.extend(is.into_iter().map(|i| index[k][i * mf + copy]));
                }
            }
            orders.insert(base + copy, order);
        }
    }
    CrossingCertificate::from_orders(crossings, orders)
}

/// Largest number of sign combinations tried by [`expand_certificate`].
const SIGN_SEARCH_LIMIT: usize = 1 << 16;

/// Expands a certificate of the simplification of `g` to a realizable
/// certificate of `g`, trying grid orientations until the planarization is
/// planar.
pub fn expand_certificate(g: &Multigraph, simple: &CrossingCertificate) -> Option<CrossingCertificate> {
    let pairs = g.pairs();
    let free: Vec<usize> = simple
        .crossings
        .iter()
        .enumerate()
        .filter(|(_, &(e, f))| pairs[e].mult > 1 || pairs[f].mult > 1)
        .map(|(k, _)| k)
        .collect();
    if free.len() >= 63 || 1usize << free.len() > SIGN_SEARCH_LIMIT {
        return None;
    }
    let mut tester = PlanarityTester::new();
    let mut signs = vec![false; simple.len()];
    for mask in 0..1usize << free.len() {
        for (bit, &k) in free.iter().enumerate() {
            signs[k] = mask >> bit & 1 == 1;
        }
        let cert = expand_with_signs(g, simple, &signs);
        let (n, edges) = planarization_edges(g, &cert);
        if tester.is_planar(n, &edges) {
            return Some(cert);
        }
    }
    None
}

/// Certificate of the one-page drawing of `g` on `order`, with the vertices
/// placed on a circle and edges drawn as chords.
pub fn convex_certificate(g: &Multigraph, order: &CyclicOrder) -> CrossingCertificate {
    let n = g.vertex_count();
    // Slightly irregular angles keep three chords from meeting in one point.
    let golden = 0.618_033_988_749_895_f64;
    let point = |v: usize| {
        let p = order.position(v) as f64;
        let jitter = 0.3 * (p * golden).fract();
        let theta = std::f64::consts::TAU * (p + jitter) / n as f64;
        (theta.cos(), theta.sin())
    };
    let pairs = g.pairs();
    let mut crossings = Vec::new();
    let mut signs = Vec::new();
    let mut along: Vec<Vec<(f64, usize)>> = vec![Vec::new(); pairs.len()];
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            let (e, f) = (&pairs[a], &pairs[b]);
            if !chords_interleave(order, (e.u, e.v), (f.u, f.v)) {
                continue;
            }
            let (p, p2) = (point(e.u), point(e.v));
            let (q, q2) = (point(f.u), point(f.v));
            let r = (p2.0 - p.0, p2.1 - p.1);
            let s = (q2.0 - q.0, q2.1 - q.1);
            let denom = r.0 * s.1 - r.1 * s.0;
            let qp = (q.0 - p.0, q.1 - p.1);
            let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
            let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
            let k = crossings.len();
            crossings.push((a, b));
            signs.push(denom > 0.0);
            along[a].push((t, k));
            along[b].push((u, k));
        }
    }
    let orders = along
        .into_iter()
        .enumerate()
        .map(|(e, mut v)| {
            v.sort_by(|x, y| x.0.total_cmp(&y.0));
            (e, v.into_iter().map(|(_, k)| k).collect())
        })
        .collect();
    let simple = CrossingCertificate::from_orders(crossings, orders);
    expand_with_signs(g, &simple, &signs)
}
