//! Reproduction runs: small values of `f_s`, the multigraph family, a random
//! sweep of the one-page to two-page conversion, and Harary–Hill values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::book::{count_crossings, CyclicOrder};
use crate::bounds::{fs_known, harary_hill, multigraph_family_point, multigraph_upper, thm41_lower};
use crate::budget::Budget;
use crate::cert::verify_certificate;
use crate::constructions::{cone_certificate, f_certificate, family_drawing};
use crate::graph::{complete_graph, cone, f_graph, fig1_graph, fig3_graph, Multigraph};
use crate::pages::{one_to_two, two_page_bound_met};
use crate::solver::{cone_cr_with, cr_exact_with, SolverConfig};

/// Where a value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Found and proved optimal by the solver.
    Exact,
    /// An upper bound witnessed by a verified certificate.
    Certificate,
    /// A lower bound from a closed-form theorem.
    TheoremBacked,
    /// Valid only if the Harary–Hill values are the crossing numbers of `K_n`.
    Conditional,
}

/// A lower or upper value with its source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sourced {
    pub value: usize,
    pub source: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FsRow {
    pub k: usize,
    pub graph: String,
    pub cr_lower: Sourced,
    pub cr_upper: Sourced,
    pub cone_lower: Sourced,
    pub cone_upper: Sourced,
    pub expected: Option<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct FsOptions {
    pub config: SolverConfig,
    /// Also prove `cr(F_4) >= 4` by search instead of quoting it.
    pub solve_f4: bool,
}

fn solved(r: &crate::solver::SolveResult) -> (Sourced, Sourced) {
    let lower_source = if r.is_exact() { Provenance::Exact } else { Provenance::TheoremBacked };
    let upper_source = if r.is_exact() { Provenance::Exact } else { Provenance::Certificate };
    (
        Sourced { value: r.lower, source: lower_source },
        Sourced { value: r.upper, source: upper_source },
    )
}

fn exact_row(k: usize, name: &str, g: &Multigraph, config: &SolverConfig) -> FsRow {
    let (cr_lower, cr_upper) = solved(&cr_exact_with(g, config));
    let (cone_lower, cone_upper) = solved(&cone_cr_with(g, config));
    finish_row(k, name, cr_lower, cr_upper, cone_lower, cone_upper)
}

fn finish_row(
    k: usize,
    name: &str,
    cr_lower: Sourced,
    cr_upper: Sourced,
    cone_lower: Sourced,
    cone_upper: Sourced,
) -> FsRow {
    let expected = fs_known(k as u64);
    let pass = cr_lower.value == k
        && cr_upper.value == k
        && cone_lower.value == cone_upper.value
        && expected == Some(cone_upper.value as u64);
    FsRow {
        k,
        graph: name.to_string(),
        cr_lower,
        cr_upper,
        cone_lower,
        cone_upper,
        expected,
        pass,
    }
}

/// Rows for `k = 1..=5`. Values for `k <= 3` come from the solver; for
/// `F_4` and `F_5` the cone is drawn explicitly and the matching lower
/// bound is the simple-graph cone bound.
pub fn fs_small(opts: &FsOptions) -> Vec<FsRow> {
    let config = &opts.config;
    let mut rows = vec![
        exact_row(1, "K5", &complete_graph(5), config),
        exact_row(2, "fig3", &fig3_graph(), config),
        exact_row(3, "fig1", &fig1_graph(), config),
    ];
    for k in [4, 5] {
        let g = f_graph(k).expect("k >= 3");
        let cert = f_certificate(k).expect("k >= 3");
        let (count, valid) = verify_certificate(&g, &cert);
        let mut cr_lower = Sourced { value: k, source: Provenance::TheoremBacked };
        let mut cr_upper = Sourced { value: if valid { count } else { usize::MAX }, source: Provenance::Certificate };
        if k == 4 && opts.solve_f4 {
            let r = cr_exact_with(&g, &SolverConfig { seed: Some(cert.clone()), ..config.clone() });
            (cr_lower, cr_upper) = solved(&r);
        }
        let cone_upper = match cone_certificate(&g, &cert) {
            Some(c) => c.len(),
            None => usize::MAX,
        };
        let cone_lower = thm41_lower(cr_lower.value as u64) as usize;
        rows.push(finish_row(
            k,
            &format!("F{k}"),
            cr_lower,
            cr_upper,
            Sourced { value: cone_lower, source: Provenance::TheoremBacked },
            Sourced { value: cone_upper, source: Provenance::Certificate },
        ));
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub r: u32,
    pub edges: usize,
    pub crossings: usize,
    pub cone_crossings: usize,
    pub expected: (u64, u64),
    /// `cone_crossings = crossings + sqrt(3 crossings)` holds exactly.
    pub meets_upper: bool,
    pub pass: bool,
}

/// Verified drawings of the `r`-fold multigraph of the first figure and of its cone.
pub fn family_points(rs: &[u32]) -> Vec<FamilyRow> {
    rs.iter()
        .map(|&r| {
            let expected = multigraph_family_point(r as u64);
            let Ok(d) = family_drawing(r) else {
                return FamilyRow {
                    r,
                    edges: 0,
                    crossings: 0,
                    cone_crossings: 0,
                    expected,
                    meets_upper: false,
                    pass: false,
                };
            };
            let (k, ok) = verify_certificate(&d.graph, &d.certificate);
            let (c, cone_ok) = verify_certificate(&d.cone, &d.cone_certificate);
            let upper = multigraph_upper(k as u64);
            let meets_upper = upper.at_most(c as u64) && upper.at_least(c as u64);
            FamilyRow {
                r,
                edges: d.graph.edge_count(),
                crossings: k,
                cone_crossings: c,
                expected,
                meets_upper,
                pass: ok && cone_ok && (k as u64, c as u64) == expected && meets_upper,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Cor22Summary {
    pub trials: usize,
    /// Output crossings differ from `k - cut size`.
    pub count_failures: usize,
    /// The two-page drawing misses the guaranteed bound.
    pub bound_failures: usize,
    /// Largest `k` seen.
    pub max_k: usize,
}

impl Cor22Summary {
    pub fn pass(&self) -> bool {
        self.count_failures == 0 && self.bound_failures == 0
    }
}

/// A random multigraph with at most `max_n` vertices and `max_m` edge
/// instances, in a random cyclic order.
pub fn random_instance(rng: &mut impl Rng, max_n: usize, max_m: usize) -> (Multigraph, CyclicOrder) {
    let n = rng.gen_range(1..=max_n);
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = rng.gen_range(0..=max_m.min(all.len()));
    let mut picked = rand::seq::index::sample(rng, all.len(), m).into_vec();
    picked.sort_unstable();
    let mut left = max_m;
    let mut entries = Vec::new();
    for i in picked {
        if left == 0 {
            break;
        }
        let mult = if rng.gen_bool(0.1) { rng.gen_range(1..=3.min(left)) } else { 1 };
        left -= mult;
        entries.push((all[i].0, all[i].1, mult as u32));
    }
    let g = Multigraph::new(n, entries).expect("distinct pairs");
    let mut order: Vec<usize> = (0..n).collect();
    use rand::seq::SliceRandom;
    order.shuffle(rng);
    (g, CyclicOrder::new(order).expect("permutation"))
}

/// Converts `trials` random one-page drawings to two pages and checks the
/// crossing count and the guaranteed bound on each.
pub fn cor22_suite(trials: usize, seed: u64) -> Cor22Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Cor22Summary { trials, ..Default::default() };
    for _ in 0..trials {
        let (g, order) = random_instance(&mut rng, 12, 30);
        let out = one_to_two(&g, &order);
        s.max_k = s.max_k.max(out.k);
        if out.crossings != out.k - out.cut_size || count_crossings(&out.drawing) != out.crossings {
            s.count_failures += 1;
        }
        if !two_page_bound_met(out.k, out.crossings) {
            s.bound_failures += 1;
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HhRow {
    pub n: u64,
    pub z: u64,
    /// Solver value of `cr(K_n)`, when computed.
    pub solver: Option<usize>,
}

/// `Z(n)` for `n` in `range`, with solver values for `n <= solve_up_to`.
pub fn hh_table(range: std::ops::RangeInclusive<u64>, solve_up_to: u64, config: &SolverConfig) -> Vec<HhRow> {
    range
        .map(|n| {
            let solver = (n <= solve_up_to).then(|| cr_exact_with(&complete_graph(n as usize), config).value()).flatten();
            HhRow { n, z: harary_hill(n), solver }
        })
        .collect()
}

/// Solver configuration with a time limit, or none.
pub fn budgeted(ms: Option<u64>) -> SolverConfig {
    SolverConfig { budget: Budget::from_millis(ms), ..SolverConfig::default() }
}

/// Exactly solved pairs `(cr(G), cr(CG))` used by consistency sweeps.
pub fn solved_pairs(graphs: &[(&str, Multigraph)], config: &SolverConfig) -> Vec<(String, usize, usize, bool)> {
    graphs
        .iter()
        .filter_map(|(name, g)| {
            let r = cr_exact_with(g, config).value()?;
            let c = cr_exact_with(&cone(g), config).value()?;
            Some((name.to_string(), r, c, g.is_simple()))
        })
        .collect()
}
