//! Exact crossing numbers by iterative deepening over planarizations.
//!
//! The search runs on the simplification of each connected component, where
//! crossing edges `e` and `f` costs `mult(e) * mult(f)`. A node fixes a set
//! of crossings together with their order along each edge. If the
//! planarization is not planar, it contains a Kuratowski subdivision `K`.
//! Every good drawing that extends the node has a crossing between two
//! independent paths of `K`, because the paths of a drawn `K_5` or `K_{3,3}`
//! cannot all cross evenly. Branching over those candidate pairs is therefore
//! complete. Child `i` takes candidate `i` and forbids candidates `0..i`, so
//! each drawing is realized below exactly one child.
//!
//! Restricting to good drawings is safe: some optimal drawing of a loopless
//! multigraph has no adjacent crossings and no pair crossing twice, since
//! both can be removed by local redrawing without adding crossings.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::budget::{Budget, Stopper};
use crate::cert::{expand_certificate, verify_certificate, CrossingCertificate};
use crate::graph::{cone, Multigraph};
use crate::heuristic::{insert_vertex, insertion_certificate};
use crate::iso::automorphisms;
use crate::pages::{convex_order_heuristic, outerplanar_cr, DEFAULT_OUTERPLANAR_LIMIT};
use crate::planarity::{kuratowski_subdivision, PlanarityTester};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Exact,
    BoundsOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub nodes: u64,
    pub planarity_calls: u64,
    pub elapsed_ms: u64,
}

impl SolveStats {
    fn add(&mut self, other: &SolveStats) {
        self.nodes += other.nodes;
        self.planarity_calls += other.planarity_calls;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub lower: usize,
    pub upper: usize,
    pub status: Status,
    pub certificate: Option<CrossingCertificate>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// The exact value, if known.
    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.upper)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    /// Give up once the lower bound passes this value.
    pub max_k: Option<usize>,
    pub budget: Budget,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    /// Skip root branches that are images of earlier ones under automorphisms.
    pub symmetry: bool,
    /// A known certificate used as the initial upper bound.
    pub seed: Option<CrossingCertificate>,
}

/// Sum over components of the Euler bound `m' - 3n + 6` on the simplification.
pub fn cr_lower(g: &Multigraph) -> usize {
    g.components()
        .iter()
        .map(|comp| {
            let (h, _) = g.induced(comp);
            euler_bound(h.vertex_count(), h.pairs().len())
        })
        .sum()
}

fn euler_bound(n: usize, m: usize) -> usize {
    if n < 3 {
        0
    } else {
        (m + 6).saturating_sub(3 * n)
    }
}

pub fn cr_exact(g: &Multigraph, max_k: Option<usize>, budget: Budget) -> SolveResult {
    cr_exact_with(
        g,
        &SolverConfig {
            max_k,
            budget,
            ..SolverConfig::default()
        },
    )
}

/// Crossing number of the cone over `g`. Seeds: the outerplanar drawing of
/// `g` with the apex outside the circle, and a drawing of `g` found by the
/// solver with the apex inserted into its best face.
pub fn cone_cr(g: &Multigraph, max_k: Option<usize>, budget: Budget) -> SolveResult {
    cone_cr_with(
        g,
        &SolverConfig {
            max_k,
            budget,
            ..SolverConfig::default()
        },
    )
}

pub fn cone_cr_with(g: &Multigraph, config: &SolverConfig) -> SolveResult {
    let c = cone(g);
    let mut config = config.clone();
    let base = cr_exact_with(
        g,
        &SolverConfig {
            seed: None,
            max_k: None,
            ..config.clone()
        },
    );
    if let Some(cert) = base.certificate.as_ref().and_then(|cert| insert_apex(g, &c, cert)) {
        if config.seed.as_ref().is_none_or(|s| s.len() > cert.len()) {
            config.seed = Some(cert);
        }
    }
    if g.vertex_count() <= DEFAULT_OUTERPLANAR_LIMIT - 2 {
        let outer = outerplanar_cr(g, config.budget);
        if let Some(cert) = &outer.result.certificate {
            let lifted = lift_to_cone(g, &c, cert);
            let better = config.seed.as_ref().is_none_or(|s| s.len() > lifted.len());
            if better {
                config.seed = Some(lifted);
            }
        }
    }
    cr_exact_with(&c, &config)
}

/// Draws `c = cone(g)` by adding the apex to the drawing of `g` given by
/// `cert`, routing apex edges through the dual graph.
pub fn insert_apex(g: &Multigraph, c: &Multigraph, cert: &CrossingCertificate) -> Option<CrossingCertificate> {
    // Work on simplifications: keep copy 0 of every edge of g, then list
    // the edges of g before the apex edges.
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.pairs().iter().map(|p| (p.u, p.v)).collect();
    let mut weight: Vec<u64> = g.pairs().iter().map(|p| p.mult as u64).collect();
    let first_new = edges.len();
    edges.extend((0..n).map(|v| (v, n)));
    weight.extend(std::iter::repeat_n(1, n));
    let inst = g.instances();
    let simple = cert.restrict_map(|e| inst[e].copy == 0, |e| inst[e].pair);
    let (_, found) = insert_vertex(n + 1, &edges, &weight, &simple, first_new)?;
    let to_cone = |e: usize| {
        let (u, v) = edges[e];
        c.pair_index(u, v).expect("cone has every edge")
    };
    let simple_cone = found.restrict_map(|_| true, to_cone);
    let full = expand_certificate(c, &simple_cone)?;
    verify_certificate(c, &full).1.then_some(full)
}

/// Renames a certificate of `g` to the matching edges of `cone(g)`.
pub fn lift_to_cone(g: &Multigraph, c: &Multigraph, cert: &CrossingCertificate) -> CrossingCertificate {
    cert.restrict_map(
        |_| true,
        |e| {
            let inst = g.instances()[e];
            c.instance_id(inst.u, inst.v, inst.copy).expect("cone keeps edges")
        },
    )
}

pub fn cr_exact_with(g: &Multigraph, config: &SolverConfig) -> SolveResult {
    let start = Instant::now();
    let stopper = Stopper::new(config.budget);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .expect("thread pool");
    let mut lower = 0;
    let mut upper = 0;
    let mut exact = true;
    let mut stats = SolveStats::default();
    let mut parts = Vec::new();
    for comp in g.components() {
        let (h, pair_map) = g.induced(&comp);
        if h.edge_count() == 0 {
            continue;
        }
        let to_global = |e: usize| {
            let inst = h.instances()[e];
            g.first_instance(pair_map[inst.pair]) + inst.copy as usize
        };
        let seed = config.seed.as_ref().map(|s| localize(g, &h, &comp, s));
        let r = pool.install(|| solve_component(&h, seed, config, &stopper));
        lower += r.lower;
        upper += r.upper;
        exact &= r.is_exact();
        stats.add(&r.stats);
        if let Some(c) = r.certificate {
            parts.push(c.restrict_map(|_| true, to_global));
        }
    }
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    let certificate = CrossingCertificate::merge(parts);
    debug_assert_eq!(certificate.len(), upper);
    SolveResult {
        lower,
        upper,
        status: if exact { Status::Exact } else { Status::BoundsOnly },
        certificate: Some(certificate),
        stats,
    }
}

/// Restricts a certificate of `g` to the component induced by `comp`.
fn localize(
    g: &Multigraph,
    h: &Multigraph,
    comp: &[usize],
    cert: &CrossingCertificate,
) -> CrossingCertificate {
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let inst = g.instances();
    cert.restrict_map(
        |e| e < inst.len() && local[inst[e].u] != usize::MAX,
        |e| {
            let x = inst[e];
            h.instance_id(local[x.u], local[x.v], x.copy)
                .expect("component keeps edges")
        },
    )
}

fn solve_component(
    h: &Multigraph,
    seed: Option<CrossingCertificate>,
    config: &SolverConfig,
    stopper: &Stopper,
) -> SolveResult {
    let problem = Problem::new(h, config.symmetry);
    let mut worker = Worker::new(&problem);
    let stats = Counters::default();

    // Best known drawing: the seed or a convex drawing.
    let (order, _) = convex_order_heuristic(h);
    let mut best = crate::cert::convex_certificate(h, &order);
    let weights: Vec<u64> = problem.weight.clone();
    if let Some((cost, simple)) = insertion_certificate(problem.n, &problem.edges, &weights, INSERTION_ATTEMPTS, 0) {
        if (cost as usize) < best.len() {
            if let Some(full) = expand_certificate(h, &simple) {
                if verify_certificate(h, &full).1 {
                    best = full;
                }
            }
        }
    }
    if let Some(s) = seed {
        let (count, ok) = verify_certificate(h, &s);
        if ok && count < best.len() {
            best = s;
        }
    }
    let finish = |lower: usize, cert: CrossingCertificate, exact: bool, stats: &Counters| SolveResult {
        lower: if exact { cert.len() } else { lower },
        upper: cert.len(),
        status: if exact { Status::Exact } else { Status::BoundsOnly },
        certificate: Some(cert),
        stats: stats.snapshot(),
    };

    let root = State::new(problem.m);
    let mut threshold = match worker.evaluate(&root, &stats) {
        Eval::Planar => return finish(0, CrossingCertificate::empty(), true, &stats),
        Eval::Infeasible => unreachable!("the empty node is feasible"),
        Eval::Branch { lower, .. } => lower.max(problem.euler_lower()),
    };
    loop {
        if threshold as usize >= best.len() {
            return finish(best.len(), best, true, &stats);
        }
        if config.max_k.is_some_and(|k| threshold as usize > k) {
            return finish(threshold as usize, best, false, &stats);
        }
        match search_root(&problem, threshold, stopper, &stats) {
            Outcome::Found(simple) => match expand_certificate(h, &simple) {
                Some(cert) => return finish(cert.len(), cert, true, &stats),
                None => return finish(threshold as usize, best, false, &stats),
            },
            Outcome::Exhausted(next) => threshold = next,
            Outcome::Aborted => return finish(threshold as usize, best, false, &stats),
        }
    }
}

/// Edge orders tried by the insertion heuristic per component.
const INSERTION_ATTEMPTS: usize = 16;

#[derive(Default)]
struct Counters {
    nodes: AtomicU64,
    planarity_calls: AtomicU64,
}

impl Counters {
    fn snapshot(&self) -> SolveStats {
        SolveStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            planarity_calls: self.planarity_calls.load(Ordering::Relaxed),
            elapsed_ms: 0,
        }
    }
}

/// Weighted simple graph being solved.
struct Problem {
    n: usize,
    m: usize,
    edges: Vec<(usize, usize)>,
    weight: Vec<u64>,
    adjacent: Vec<bool>,
    /// Edge permutations induced by automorphisms, when symmetry breaking is on.
    edge_perms: Vec<Vec<usize>>,
}

impl Problem {
    fn new(h: &Multigraph, symmetry: bool) -> Self {
        let edges: Vec<(usize, usize)> = h.pairs().iter().map(|p| (p.u, p.v)).collect();
        let weight = h.pairs().iter().map(|p| p.mult as u64).collect();
        let m = edges.len();
        let mut adjacent = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                adjacent[i * m + j] = i == j || a == c || a == d || b == c || b == d;
            }
        }
        let edge_perms = if symmetry {
            automorphisms(h, 50_000)
                .into_iter()
                .map(|sigma| {
                    edges
                        .iter()
                        .map(|&(u, v)| h.pair_index(sigma[u], sigma[v]).expect("automorphism maps edges"))
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        Problem {
            n: h.vertex_count(),
            m,
            edges,
            weight,
            adjacent,
            edge_perms,
        }
    }

    fn pair_weight(&self, e: usize, f: usize) -> u64 {
        self.weight[e] * self.weight[f]
    }

    fn euler_lower(&self) -> u64 {
        let w = self.weight.iter().copied().min().unwrap_or(1);
        euler_bound(self.n, self.m) as u64 * w * w
    }
}

#[derive(Clone)]
struct State {
    crossings: Vec<(usize, usize)>,
    /// Crossing indices along each edge from its smaller endpoint.
    along: Vec<Vec<usize>>,
    /// `m * m` flags, set for crossing or forbidden pairs.
    blocked: Vec<bool>,
    cost: u64,
}

impl State {
    fn new(m: usize) -> Self {
        State {
            crossings: Vec::new(),
            along: vec![Vec::new(); m],
            blocked: vec![false; m * m],
            cost: 0,
        }
    }

    fn block(&mut self, m: usize, e: usize, f: usize, on: bool) {
        self.blocked[e * m + f] = on;
        self.blocked[f * m + e] = on;
    }

    fn push(&mut self, p: &Problem, e: usize, f: usize, a: usize, b: usize) {
        let k = self.crossings.len();
        self.crossings.push((e, f));
        self.along[e].insert(a, k);
        self.along[f].insert(b, k);
        self.block(p.m, e, f, true);
        self.cost += p.pair_weight(e, f);
    }

    fn pop(&mut self, p: &Problem) {
        let (e, f) = self.crossings.pop().expect("crossing to undo");
        let k = self.crossings.len();
        self.along[e].retain(|&x| x != k);
        self.along[f].retain(|&x| x != k);
        self.block(p.m, e, f, false);
        self.cost -= p.pair_weight(e, f);
    }

    fn certificate(&self) -> CrossingCertificate {
        let orders = self.along.iter().cloned().enumerate().collect();
        CrossingCertificate::from_orders(self.crossings.clone(), orders)
    }
}

enum Outcome {
    Found(CrossingCertificate),
    /// No solution within the threshold; the smallest cost seen above it.
    Exhausted(u64),
    Aborted,
}

enum Eval {
    Planar,
    Infeasible,
    Branch {
        /// Lower bound on the cost still to be added.
        lower: u64,
        candidates: Vec<(usize, usize)>,
    },
}

/// Number of edge-disjoint Kuratowski subdivisions collected per node.
const PACKING_ROUNDS: usize = 3;

struct Worker<'a> {
    p: &'a Problem,
    tester: PlanarityTester,
    plan_edges: Vec<(usize, usize)>,
    seg_edge: Vec<usize>,
    mark: Vec<bool>,
}

impl<'a> Worker<'a> {
    fn new(p: &'a Problem) -> Self {
        Worker {
            p,
            tester: PlanarityTester::new(),
            plan_edges: Vec::new(),
            seg_edge: Vec::new(),
            mark: vec![false; p.m * p.m],
        }
    }

    fn planarize(&mut self, s: &State) -> usize {
        self.plan_edges.clear();
        self.seg_edge.clear();
        let n = self.p.n;
        for (e, &(u, v)) in self.p.edges.iter().enumerate() {
            let mut at = u;
            for &k in &s.along[e] {
                self.plan_edges.push((at, n + k));
                self.seg_edge.push(e);
                at = n + k;
            }
            self.plan_edges.push((at, v));
            self.seg_edge.push(e);
        }
        n + s.crossings.len()
    }

    /// Plans the node: planar, dead, or a branching set with a cost bound.
    fn evaluate(&mut self, s: &State, counters: &Counters) -> Eval {
        let vertices = self.planarize(s);
        counters.planarity_calls.fetch_add(1, Ordering::Relaxed);
        if self.tester.is_planar(vertices, &self.plan_edges) {
            return Eval::Planar;
        }
        let all: Vec<(usize, usize)> = self.plan_edges.clone();
        let mut alive: Vec<usize> = (0..all.len()).collect();
        let mut lower = 0;
        let mut best: Option<Vec<(usize, usize)>> = None;
        for _ in 0..PACKING_ROUNDS {
            let sub: Vec<(usize, usize)> = alive.iter().map(|&i| all[i]).collect();
            let Some(k) = kuratowski_subdivision(&mut self.tester, vertices, &sub) else {
                break;
            };
            let mut cands = Vec::new();
            for (i, j) in k.independent_path_pairs() {
                for &x in &k.paths[i].2 {
                    for &y in &k.paths[j].2 {
                        let (e, f) = (self.seg_edge[alive[x]], self.seg_edge[alive[y]]);
                        let (e, f) = (e.min(f), e.max(f));
                        let idx = e * self.p.m + f;
                        if self.p.adjacent[idx] || s.blocked[idx] || self.mark[idx] {
                            continue;
                        }
                        self.mark[idx] = true;
                        cands.push((e, f));
                    }
                }
            }
            for &(e, f) in &cands {
                self.mark[e * self.p.m + f] = false;
            }
            let Some(w) = cands.iter().map(|&(e, f)| self.p.pair_weight(e, f)).min() else {
                return Eval::Infeasible;
            };
            lower += w;
            if best.as_ref().is_none_or(|b| cands.len() < b.len()) {
                best = Some(cands);
            }
            let used: std::collections::HashSet<usize> = k.edges().collect();
            alive = alive
                .iter()
                .enumerate()
                .filter(|(i, _)| !used.contains(i))
                .map(|(_, &x)| x)
                .collect();
        }
        let mut candidates = best.expect("non-planar node has a subdivision");
        candidates.sort_by_key(|&(e, f)| (self.p.pair_weight(e, f), e, f));
        Eval::Branch { lower, candidates }
    }

    fn dfs(&mut self, s: &mut State, threshold: u64, ctx: &Ctx) -> Outcome {
        if ctx.stopped() {
            return Outcome::Aborted;
        }
        ctx.counters.nodes.fetch_add(1, Ordering::Relaxed);
        let candidates = match self.evaluate(s, ctx.counters) {
            Eval::Planar => return Outcome::Found(s.certificate()),
            Eval::Infeasible => return Outcome::Exhausted(u64::MAX),
            Eval::Branch { lower, candidates } => {
                if s.cost + lower > threshold {
                    return Outcome::Exhausted(s.cost + lower);
                }
                candidates
            }
        };
        let m = self.p.m;
        let mut next = u64::MAX;
        let mut result = None;
        let mut forbidden = 0;
        for &(e, f) in &candidates {
            let cost = s.cost + self.p.pair_weight(e, f);
            if cost > threshold {
                next = next.min(cost);
                break;
            }
            for a in 0..=s.along[e].len() {
                for b in 0..=s.along[f].len() {
                    s.push(self.p, e, f, a, b);
                    let r = self.dfs(s, threshold, ctx);
                    s.pop(self.p);
                    match r {
                        Outcome::Exhausted(x) => next = next.min(x),
                        other => {
                            result = Some(other);
                            break;
                        }
                    }
                }
                if result.is_some() {
                    break;
                }
            }
            if result.is_some() {
                break;
            }
            s.block(m, e, f, true);
            forbidden += 1;
        }
        for &(e, f) in &candidates[..forbidden] {
            s.block(m, e, f, false);
        }
        result.unwrap_or(Outcome::Exhausted(next))
    }
}

struct Ctx<'a> {
    stopper: &'a Stopper,
    counters: &'a Counters,
    /// Smallest root branch index that found a solution.
    found: &'a AtomicUsize,
    index: usize,
}

impl Ctx<'_> {
    fn stopped(&self) -> bool {
        self.found.load(Ordering::Relaxed) < self.index || self.stopper.should_stop()
    }
}

/// One threshold iteration. Root branches run in parallel; the reported
/// certificate is the one from the first successful branch in order.
fn search_root(p: &Problem, threshold: u64, stopper: &Stopper, counters: &Counters) -> Outcome {
    let root = State::new(p.m);
    let mut worker = Worker::new(p);
    counters.nodes.fetch_add(1, Ordering::Relaxed);
    let candidates = match worker.evaluate(&root, counters) {
        Eval::Planar => return Outcome::Found(root.certificate()),
        Eval::Infeasible => return Outcome::Exhausted(u64::MAX),
        Eval::Branch { lower, candidates } => {
            if lower > threshold {
                return Outcome::Exhausted(lower);
            }
            candidates
        }
    };
    let skip = symmetric_duplicates(p, &candidates);
    let found = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<Outcome> = (0..candidates.len())
        .into_par_iter()
        .map(|i| {
            let (e, f) = candidates[i];
            let w = p.pair_weight(e, f);
            if w > threshold {
                return Outcome::Exhausted(w);
            }
            if skip[i] {
                return Outcome::Exhausted(u64::MAX);
            }
            let ctx = Ctx {
                stopper,
                counters,
                found: &found,
                index: i,
            };
            let mut s = State::new(p.m);
            for &(a, b) in &candidates[..i] {
                s.block(p.m, a, b, true);
            }
            s.push(p, e, f, 0, 0);
            let mut worker = Worker::new(p);
            let r = worker.dfs(&mut s, threshold, &ctx);
            if matches!(r, Outcome::Found(_)) {
                found.fetch_min(i, Ordering::Relaxed);
            }
            r
        })
        .collect();
    let mut next = u64::MAX;
    let mut aborted = false;
    for r in outcomes {
        match r {
            Outcome::Found(c) => return Outcome::Found(c),
            Outcome::Exhausted(x) => next = next.min(x),
            Outcome::Aborted => aborted = true,
        }
    }
    if aborted {
        Outcome::Aborted
    } else {
        Outcome::Exhausted(next)
    }
}

/// Marks root candidates that an automorphism maps onto an earlier candidate.
fn symmetric_duplicates(p: &Problem, candidates: &[(usize, usize)]) -> Vec<bool> {
    let mut skip = vec![false; candidates.len()];
    if p.edge_perms.is_empty() {
        return skip;
    }
    let index: std::collections::HashMap<(usize, usize), usize> = candidates
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    for (i, &(e, f)) in candidates.iter().enumerate() {
        if skip[i] {
            continue;
        }
        for perm in &p.edge_perms {
            let (a, b) = (perm[e], perm[f]);
            if let Some(&j) = index.get(&(a.min(b), a.max(b))) {
                if j > i {
                    skip[j] = true;
                }
            }
        }
    }
    skip
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn exact(g: &Multigraph) -> usize {
        let r = cr_exact(g, None, Budget::unlimited());
        assert!(r.is_exact());
        let cert = r.certificate.as_ref().unwrap();
        assert_eq!(verify_certificate(g, cert), (r.upper, true));
        r.upper
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(cr_lower(&complete_graph(5)), 1);
        assert_eq!(cr_lower(&complete_graph(6)), 3);
        assert_eq!(cr_lower(&fig1_graph()), 0);
        let two = disjoint_union(&complete_graph(5), &complete_graph(6));
        assert_eq!(cr_lower(&two), 4);
    }

    #[test]
    fn small_exact_values() {
        assert_eq!(exact(&complete_graph(4)), 0);
        assert_eq!(exact(&complete_graph(5)), 1);
        assert_eq!(exact(&complete_bipartite(3, 3)), 1);
        assert_eq!(exact(&complete_graph(6)), 3);
        assert_eq!(exact(&fig3_graph()), 2);
    }

    #[test]
    fn multigraph_weights() {
        let g = multiply_edges(&complete_graph(5), 2).unwrap();
        assert_eq!(exact(&g), 4);
        let mut entries = complete_bipartite(3, 3).entries();
        entries[0].2 = 3;
        let h = Multigraph::new(6, entries).unwrap();
        assert_eq!(exact(&h), 1);
    }

    #[test]
    fn components_add() {
        let g = disjoint_union(&complete_graph(5), &complete_bipartite(3, 3));
        assert_eq!(exact(&g), 2);
    }

    #[test]
    fn budget_and_max_k_give_brackets() {
        let k7 = complete_graph(7);
        let r = cr_exact(&k7, Some(1), Budget::unlimited());
        assert_eq!(r.status, Status::BoundsOnly);
        assert!(r.lower >= 6 && r.upper >= 9);
        let c = r.certificate.unwrap();
        assert_eq!(verify_certificate(&k7, &c), (r.upper, true));

        // A closed bracket is exact whatever max_k says.
        let r = cr_exact(&complete_graph(6), Some(1), Budget::unlimited());
        assert_eq!((r.status, r.lower, r.upper), (Status::Exact, 3, 3));
    }

    #[test]
    fn symmetry_breaking_agrees() {
        for g in [complete_graph(6), fig3_graph(), complete_bipartite(3, 4)] {
            let plain = cr_exact(&g, None, Budget::unlimited());
            let sym = cr_exact_with(
                &g,
                &SolverConfig {
                    symmetry: true,
                    ..SolverConfig::default()
                },
            );
            assert_eq!((plain.lower, plain.upper), (sym.lower, sym.upper));
        }
    }

    #[test]
    fn cone_of_k5_is_k6() {
        let r = cone_cr(&complete_graph(5), None, Budget::unlimited());
        assert_eq!(r.value(), Some(3));
    }
}
