//! Explicit drawings of the named graph families.

use crate::cert::{expand_certificate, relabel_certificate, verify_certificate, CrossingCertificate};
use crate::graph::{cone, f_graph, fig1_graph, multiply_edges, GraphError, Multigraph};
use crate::iso::find_isomorphism;
use crate::solver::insert_apex;

/// The `k` crossings of the standard drawing of `F_k`: the spoke
/// `x_i y_{2i+1}` crosses `x_{i+1} y_{2i}` where consecutive fans overlap.
pub fn f_certificate(k: usize) -> Result<CrossingCertificate, GraphError> {
    let g = f_graph(k)?;
    let y = |j: usize| k + j % (2 * k);
    let id = |a: usize, b: usize| g.instance_id(a.min(b), a.max(b), 0).expect("spoke of F_k");
    let crossings = (0..k)
        .map(|i| {
            let e = id(i, y(2 * i + 1));
            let f = id((i + 1) % k, y(2 * i));
            (e.min(f), e.max(f))
        })
        .collect();
    Ok(CrossingCertificate::from_orders(crossings, Default::default()))
}

/// A drawing of the cone over `g` built from a drawing of `g`, checked.
pub fn cone_certificate(g: &Multigraph, cert: &CrossingCertificate) -> Option<CrossingCertificate> {
    let c = cone(g);
    insert_apex(g, &c, cert).filter(|x| verify_certificate(&c, x).1)
}

/// A 3-crossing drawing of the first figure's graph, carried over from
/// `F_3`, which is isomorphic to it.
pub fn fig1_certificate() -> CrossingCertificate {
    let f3 = f_graph(3).expect("k = 3");
    let g = fig1_graph();
    let map = find_isomorphism(&f3, &g).expect("fig1 is F_3");
    let cert = f_certificate(3).expect("k = 3");
    relabel_certificate(&f3, &g, &map, &cert).expect("isomorphism maps every edge")
}

/// The `r`-fold multigraph of the first figure with drawings of it and of
/// its cone.
#[derive(Debug, Clone)]
pub struct FamilyDrawing {
    pub r: u32,
    pub graph: Multigraph,
    pub certificate: CrossingCertificate,
    pub cone: Multigraph,
    pub cone_certificate: CrossingCertificate,
}

/// Bundles every edge of the simple drawings of `G` and `CG` into `r` parallel
/// copies, giving `3r^2` and `3r^2 + 3r` crossings.
pub fn family_drawing(r: u32) -> Result<FamilyDrawing, GraphError> {
    let base = fig1_graph();
    let graph = multiply_edges(&base, r)?;
    let cone_base = cone(&base);
    let cone_graph = cone(&graph);
    let simple = fig1_certificate();
    let simple_cone = cone_certificate(&base, &simple)
        .ok_or_else(|| GraphError::InvalidParameter("no cone drawing found".into()))?;
    let widen = |h: &Multigraph, multi: &Multigraph, cert: &CrossingCertificate| {
        let pair = |e: usize| {
            let inst = h.instances()[e];
            multi.pair_index(inst.u, inst.v).expect("same pairs")
        };
        expand_certificate(multi, &cert.restrict_map(|_| true, pair))
            .ok_or_else(|| GraphError::InvalidParameter("bundled drawing not realizable".into()))
    };
    Ok(FamilyDrawing {
        r,
        certificate: widen(&base, &graph, &simple)?,
        cone_certificate: widen(&cone_base, &cone_graph, &simple_cone)?,
        graph,
        cone: cone_graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_k_drawings() {
        for k in 3..=7 {
            let g = f_graph(k).unwrap();
            let cert = f_certificate(k).unwrap();
            assert_eq!(verify_certificate(&g, &cert), (k, true));
            let c = cone_certificate(&g, &cert).unwrap();
            assert_eq!(c.len(), 2 * k, "cone of F_{k}");
        }
    }

    #[test]
    fn fig1_drawing() {
        let g = fig1_graph();
        assert_eq!(verify_certificate(&g, &fig1_certificate()), (3, true));
        let c = cone_certificate(&g, &fig1_certificate()).unwrap();
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn family_counts() {
        for r in 1..=3u32 {
            let d = family_drawing(r).unwrap();
            let k = 3 * (r * r) as usize;
            assert_eq!(verify_certificate(&d.graph, &d.certificate), (k, true));
            assert_eq!(verify_certificate(&d.cone, &d.cone_certificate), (k + 3 * r as usize, true));
        }
    }
}
