//! JSON file formats for graphs, book drawings, certificates and solver
//! results, plus Graphviz output for book drawings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::book::{BookDrawing, BookError, CyclicOrder};
use crate::cert::CrossingCertificate;
use crate::graph::{GraphError, Multigraph};
use crate::solver::{SolveResult, Status};

pub const GRAPH_FORMAT: &str = "conecross-graph-v1";
pub const BOOK_FORMAT: &str = "conecross-book-v1";
pub const CERT_FORMAT: &str = "conecross-cert-v1";

/// Largest vertex or edge-instance count accepted from a file.
pub const MAX_FILE_SIZE: usize = 1 << 20;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected format {expected:?}, found {found:?}")]
    WrongFormat { expected: &'static str, found: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Book(#[from] BookError),
    #[error("page map does not list every edge exactly once")]
    PageKeys,
    #[error("graph too large: {0} exceeds {MAX_FILE_SIZE}")]
    TooLarge(usize),
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    format: String,
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

#[derive(Serialize, Deserialize)]
struct BookFile {
    format: String,
    graph: GraphFile,
    order: Vec<usize>,
    pages: BTreeMap<usize, usize>,
}

#[derive(Serialize, Deserialize)]
struct CertFile {
    format: String,
    crossings: Vec<(usize, usize)>,
    edge_orders: BTreeMap<usize, Vec<usize>>,
}

fn check_format(found: &str, expected: &'static str) -> Result<(), FormatError> {
    if found == expected {
        Ok(())
    } else {
        Err(FormatError::WrongFormat {
            expected,
            found: found.to_string(),
        })
    }
}

fn graph_file(g: &Multigraph) -> GraphFile {
    GraphFile {
        format: GRAPH_FORMAT.into(),
        n: g.vertex_count(),
        edges: g.entries(),
    }
}

fn graph_from_file(f: GraphFile) -> Result<Multigraph, FormatError> {
    check_format(&f.format, GRAPH_FORMAT)?;
    if f.n > MAX_FILE_SIZE {
        return Err(FormatError::TooLarge(f.n));
    }
    let total: u64 = f.edges.iter().map(|e| e.2 as u64).sum();
    if total > MAX_FILE_SIZE as u64 {
        return Err(FormatError::TooLarge(total as usize));
    }
    Ok(Multigraph::new(f.n, f.edges)?)
}

/// Compact JSON with edges sorted by `(u, v)`, `u < v`.
pub fn graph_to_json(g: &Multigraph) -> String {
    serde_json::to_string(&graph_file(g)).expect("graph serializes")
}

/// Parses a graph file. Edge entries may come in any order or orientation.
pub fn graph_from_json(s: &str) -> Result<Multigraph, FormatError> {
    graph_from_file(serde_json::from_str(s)?)
}

pub fn book_to_json(d: &BookDrawing) -> String {
    let f = BookFile {
        format: BOOK_FORMAT.into(),
        graph: graph_file(d.graph()),
        order: d.order().as_slice().to_vec(),
        pages: d.pages().iter().copied().enumerate().collect(),
    };
    serde_json::to_string(&f).expect("book serializes")
}

/// Parses a book file; the page count is one more than the largest page used.
pub fn book_from_json(s: &str) -> Result<BookDrawing, FormatError> {
    let f: BookFile = serde_json::from_str(s)?;
    check_format(&f.format, BOOK_FORMAT)?;
    let g = graph_from_file(f.graph)?;
    if f.pages.len() != g.edge_count() || f.pages.keys().enumerate().any(|(i, &k)| i != k) {
        return Err(FormatError::PageKeys);
    }
    let pages: Vec<usize> = f.pages.into_values().collect();
    let page_count = pages.iter().max().map_or(1, |&p| p.saturating_add(1));
    let order = CyclicOrder::new(f.order)?;
    Ok(BookDrawing::new(g, order, pages, page_count)?)
}

pub fn cert_to_json(c: &CrossingCertificate) -> String {
    serde_json::to_string(&cert_file(c)).expect("certificate serializes")
}

fn cert_file(c: &CrossingCertificate) -> CertFile {
    CertFile {
        format: CERT_FORMAT.into(),
        crossings: c.crossings.clone(),
        edge_orders: c.edge_orders.clone(),
    }
}

/// Parses a certificate file. Consistency with a graph is checked by
/// [`CrossingCertificate::validate`], not here.
pub fn cert_from_json(s: &str) -> Result<CrossingCertificate, FormatError> {
    let f: CertFile = serde_json::from_str(s)?;
    check_format(&f.format, CERT_FORMAT)?;
    Ok(CrossingCertificate {
        crossings: f.crossings,
        edge_orders: f.edge_orders,
    })
}

#[derive(Serialize)]
struct StatsOut {
    nodes: u64,
    planarity_calls: u64,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct ResultOut {
    lower: usize,
    upper: usize,
    status: &'static str,
    certificate: Option<CertFile>,
    stats: StatsOut,
}

/// Solver result as a JSON value, with the certificate in file format.
pub fn solve_result_json(r: &SolveResult) -> serde_json::Value {
    let out = ResultOut {
        lower: r.lower,
        upper: r.upper,
        status: match r.status {
            Status::Exact => "exact",
            Status::BoundsOnly => "bounds-only",
        },
        certificate: r.certificate.as_ref().map(cert_file),
        stats: StatsOut {
            nodes: r.stats.nodes,
            planarity_calls: r.stats.planarity_calls,
            elapsed_ms: r.stats.elapsed_ms,
        },
    };
    serde_json::to_value(out).expect("result serializes")
}

/// Graphviz rendering of a book drawing: vertices on a circle in spine
/// order, edges labelled with their page and the edges they cross.
pub fn book_to_dot(d: &BookDrawing) -> String {
    let g = d.graph();
    let n = g.vertex_count().max(1);
    let mut crossed: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (e, f) in d.crossing_pairs() {
        crossed[e].push(f);
        crossed[f].push(e);
    }
    let mut out = String::new();
    let _ = writeln!(out, "graph book {{");
    let _ = writeln!(out, "  layout=neato;");
    for (i, &v) in d.order().as_slice().iter().enumerate() {
        let angle = std::f64::consts::TAU * i as f64 / n as f64;
        let _ = writeln!(
            out,
            "  {v} [pos=\"{:.3},{:.3}!\"];",
            3.0 * angle.cos(),
            3.0 * angle.sin()
        );
    }
    for e in g.instances() {
        let page = d.page_of(e.id);
        let label = if crossed[e.id].is_empty() {
            format!("e{} p{page}", e.id)
        } else {
            let list: Vec<String> = crossed[e.id].iter().map(|f| format!("e{f}")).collect();
            format!("e{} p{page} x{{{}}}", e.id, list.join(","))
        };
        let style = if page == 0 { "solid" } else { "dashed" };
        let _ = writeln!(out, "  {} -- {} [label=\"{label}\", style={style}];", e.u, e.v);
    }
    out.push_str("}\n");
    out
}
