use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conecross::book::{count_crossings, BookDrawing, CyclicOrder};
use conecross::bounds::{bound_report, thm12_check, thm41_lower};
use conecross::budget::Budget;
use conecross::cert::verify_certificate;
use conecross::experiments::{cor22_suite, family_points, fs_small, hh_table, FsOptions};
use conecross::formats::{
    book_to_dot, book_to_json, cert_from_json, cert_to_json, graph_from_json, graph_to_json,
    solve_result_json,
};
use conecross::graph::*;
use conecross::pages::{one_to_two, outerplanar_cr, two_page_cr, two_page_drawing_fixed_order};
use conecross::solver::{cone_cr_with, cr_exact_with, SolverConfig};

/// Crossing numbers of graphs and their cones.
#[derive(Parser)]
#[command(name = "conecross", version)]
struct Cli {
    /// Solver worker threads; 0 picks one per core.
    #[arg(long, global = true, env = "CONECROSS_THREADS", default_value_t = 0)]
    threads: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Kn,
    Kmn,
    Cycle,
    Fk,
    Fig1,
    Fig3,
    Mult,
    Union,
    Cone,
    Subdivide,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Optimize {
    None,
    Partition,
    Order,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    FsSmall,
    FamilyPoints,
    Cor22Suite,
    HhTable,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph file for one of the built-in families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        /// Base graph: a family name (k5, c6, f3, fig1, fig3) or a graph file.
        #[arg(long)]
        base: Option<String>,
        /// Second graph for `union`.
        #[arg(long)]
        other: Option<String>,
        /// Edge instance to subdivide.
        #[arg(long)]
        edge: Option<usize>,
        /// Number of subdivision vertices.
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Crossing number of a graph or of its cone.
    Cr {
        graph: String,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        cone: bool,
        /// Skip symmetric root branches.
        #[arg(long)]
        symmetry: bool,
        /// Certificate file used as the initial upper bound.
        #[arg(long)]
        seed_cert: Option<PathBuf>,
        /// Write the certificate of the upper bound here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Book drawing with 1 or 2 pages.
    Book {
        graph: String,
        /// Spine order, comma separated; defaults to 0..n.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 1)]
        pages: usize,
        #[arg(long, value_enum, default_value_t = Optimize::None)]
        optimize: Optimize,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Redraw a 1-page drawing on 2 pages by a maximum cut of its crossings.
    Convert12 {
        graph: String,
        #[arg(long)]
        order: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Closed-form bounds for a crossing number `k`.
    Bounds {
        #[arg(long, conflicts_with = "sweep")]
        k: Option<u64>,
        /// Range `a..b` (inclusive).
        #[arg(long)]
        sweep: Option<String>,
        /// Check a cone value `c` against the bounds for `k`.
        #[arg(long, requires = "k")]
        cone: Option<u64>,
        /// The graph has parallel edges; simple-graph bounds do not apply.
        #[arg(long)]
        multigraph: bool,
    },
    /// Reproduction runs.
    Experiment {
        #[arg(value_enum)]
        name: Experiment,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Prove cr(F_4) by search in fs-small.
        #[arg(long)]
        solve_f4: bool,
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Print CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
}

/// An error in the user's input, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    graph_from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// A named graph (`k5`, `c6`, `f3`, `fig1`, `fig3`) or a graph file.
fn named_graph(spec: &str) -> Result<Multigraph> {
    let num = |prefix: &str| spec.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    let g = match spec {
        "fig1" => fig1_graph(),
        "fig3" => fig3_graph(),
        _ if num("k").is_some() => complete_graph(num("k").unwrap()),
        _ if num("c").is_some() => cycle_graph(num("c").unwrap()).map_err(|e| usage(e.to_string()))?,
        _ if num("f").is_some() => f_graph(num("f").unwrap()).map_err(|e| usage(e.to_string()))?,
        _ => read_graph(Path::new(spec))?,
    };
    Ok(g)
}

fn parse_order(spec: Option<&str>, n: usize) -> Result<CyclicOrder> {
    let Some(spec) = spec else {
        return Ok(CyclicOrder::identity(n));
    };
    let order = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("bad --order: {e}")))?;
    if order.len() != n {
        return Err(usage(format!("--order lists {} vertices, graph has {n}", order.len())));
    }
    CyclicOrder::new(order).map_err(|e| usage(e.to_string()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("this family needs --{flag}")))
}

fn run(cli: Cli) -> Result<bool> {
    let config = SolverConfig {
        threads: cli.threads,
        ..SolverConfig::default()
    };
    match cli.command {
        Command::Gen {
            family,
            n,
            m,
            k,
            r,
            base,
            other,
            edge,
            t,
            out,
            dot,
        } => {
            let base_graph = || named_graph(&need(base.clone(), "base")?);
            let bad = |e: GraphError| usage(e.to_string());
            let g = match family {
                Family::Kn => complete_graph(need(n, "n")?),
                Family::Kmn => complete_bipartite(need(m, "m")?, need(n, "n")?),
                Family::Cycle => cycle_graph(need(n, "n")?).map_err(bad)?,
                Family::Fk => f_graph(need(k, "k")?).map_err(bad)?,
                Family::Fig1 => fig1_graph(),
                Family::Fig3 => fig3_graph(),
                Family::Mult => multiply_edges(&base_graph()?, need(r, "r")?).map_err(bad)?,
                Family::Union => disjoint_union(&base_graph()?, &named_graph(&need(other, "other")?)?),
                Family::Cone => cone(&base_graph()?),
                Family::Subdivide => subdivide_edge(&base_graph()?, need(edge, "edge")?, t).map_err(bad)?,
            };
            let text = graph_to_json(&g);
            match out {
                Some(p) => write(&p, &format!("{text}\n"))?,
                None => println!("{text}"),
            }
            if let Some(p) = dot {
                write(&p, &g.to_dot("g", None))?;
            }
            Ok(true)
        }
        Command::Cr {
            graph,
            max_k,
            budget_ms,
            cone: on_cone,
            symmetry,
            seed_cert,
            cert_out,
        } => {
            let g = named_graph(&graph)?;
            let target = if on_cone { cone(&g) } else { g.clone() };
            let seed = match seed_cert {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
                    let c = cert_from_json(&text).map_err(|e| usage(e.to_string()))?;
                    if !verify_certificate(&target, &c).1 {
                        return Err(usage("seed certificate is not a valid drawing of the graph"));
                    }
                    Some(c)
                }
                None => None,
            };
            let config = SolverConfig {
                max_k,
                budget: Budget::from_millis(budget_ms),
                symmetry,
                seed,
                ..config
            };
            let r = if on_cone { cone_cr_with(&g, &config) } else { cr_exact_with(&g, &config) };
            let verified = r
                .certificate
                .as_ref()
                .is_some_and(|c| verify_certificate(&target, c) == (r.upper, true));
            if let (Some(p), Some(c)) = (cert_out, &r.certificate) {
                write(&p, &format!("{}\n", cert_to_json(c)))?;
            }
            let mut v = solve_result_json(&r);
            v["verified"] = json!(verified);
            print(&v);
            Ok(verified)
        }
        Command::Book {
            graph,
            order,
            pages,
            optimize,
            budget_ms,
            out,
            dot,
        } => {
            let g = named_graph(&graph)?;
            let order = parse_order(order.as_deref(), g.vertex_count())?;
            let budget = Budget::from_millis(budget_ms);
            let (drawing, status): (BookDrawing, &str) = match (pages, optimize) {
                (1, Optimize::None | Optimize::Partition) => {
                    (BookDrawing::one_page(g, order).map_err(|e| usage(e.to_string()))?, "fixed")
                }
                (1, _) => {
                    let s = outerplanar_cr(&g, budget);
                    (s.drawing, if s.result.is_exact() { "exact" } else { "bounds-only" })
                }
                (2, Optimize::None | Optimize::Partition) => {
                    (two_page_drawing_fixed_order(&g, &order).map_err(|e| anyhow!(e))?, "exact-partition")
                }
                (2, Optimize::Order) => {
                    let s = outerplanar_cr(&g, budget);
                    let d = two_page_drawing_fixed_order(&g, s.drawing.order()).map_err(|e| anyhow!(e))?;
                    (d, "heuristic")
                }
                (2, Optimize::Both) => {
                    let s = two_page_cr(&g, budget);
                    (s.drawing, if s.result.is_exact() { "exact" } else { "bounds-only" })
                }
                _ => return Err(usage("--pages must be 1 or 2")),
            };
            let crossings = count_crossings(&drawing);
            if let Some(p) = out {
                write(&p, &format!("{}\n", book_to_json(&drawing)))?;
            }
            if let Some(p) = dot {
                write(&p, &book_to_dot(&drawing))?;
            }
            print(&json!({
                "pages": drawing.page_count(),
                "order": drawing.order().as_slice(),
                "crossings": crossings,
                "status": status,
            }));
            Ok(true)
        }
        Command::Convert12 { graph, order, out } => {
            let g = named_graph(&graph)?;
            let order = parse_order(order.as_deref(), g.vertex_count())?;
            let r = one_to_two(&g, &order);
            if let Some(p) = out {
                write(&p, &format!("{}\n", book_to_json(&r.drawing)))?;
            }
            let pass = r.bound_met() && r.crossings == r.k - r.cut_size;
            print(&json!({
                "k": r.k,
                "cut_size": r.cut_size,
                "crossings": r.crossings,
                "exact_cut": r.exact_cut,
                "bound": "crossings <= k/2 - (sqrt(8k+1)-1)/8",
                "verdict": if pass { "pass" } else { "fail" },
            }));
            Ok(pass)
        }
        Command::Bounds {
            k,
            sweep,
            cone: cone_value,
            multigraph,
        } => {
            let ks: Vec<u64> = match (k, sweep) {
                (Some(k), _) => vec![k],
                (None, Some(s)) => {
                    let (a, b) = s
                        .split_once("..")
                        .and_then(|(a, b)| Some((a.parse::<u64>().ok()?, b.parse::<u64>().ok()?)))
                        .ok_or_else(|| usage("--sweep expects a..b"))?;
                    (a..=b).collect()
                }
                (None, None) => return Err(usage("give --k or --sweep")),
            };
            let mut rows = Vec::new();
            for &k in &ks {
                for row in bound_report(k).rows() {
                    if multigraph && row.bound == "cone_lower_simple" {
                        continue;
                    }
                    rows.push(serde_json::to_value(row).expect("json"));
                }
            }
            let mut pass = true;
            if let Some(c) = cone_value {
                let k = ks[0];
                let sqrt_ok = thm12_check(k, c);
                let simple_ok = (!multigraph).then(|| c >= thm41_lower(k));
                pass = sqrt_ok && simple_ok != Some(false);
                rows.push(json!({
                    "k": k,
                    "cone": c,
                    "cone_lower_sqrt_half_holds": sqrt_ok,
                    "cone_lower_simple_holds": simple_ok,
                }));
            }
            print(&Value::Array(rows));
            Ok(pass)
        }
        Command::Experiment {
            name,
            trials,
            solve_f4,
            budget_ms,
            csv,
        } => {
            let config = SolverConfig {
                budget: Budget::from_millis(budget_ms),
                ..config
            };
            let (rows, pass): (Vec<Value>, bool) = match name {
                Experiment::FsSmall => {
                    let rows = fs_small(&FsOptions { config, solve_f4 });
                    let pass = rows.iter().all(|r| r.pass);
                    (rows.iter().map(to_value).collect(), pass)
                }
                Experiment::FamilyPoints => {
                    let rows = family_points(&[1, 2]);
                    let pass = rows.iter().all(|r| r.pass);
                    (rows.iter().map(to_value).collect(), pass)
                }
                Experiment::Cor22Suite => {
                    let s = cor22_suite(trials, cli.seed);
                    let mut v = to_value(&s);
                    v["seed"] = json!(cli.seed);
                    (vec![v], s.pass())
                }
                Experiment::HhTable => {
                    let rows = hh_table(5..=12, 6, &config);
                    let pass = rows.iter().all(|r| r.solver.is_none_or(|s| s as u64 == r.z));
                    (rows.iter().map(to_value).collect(), pass)
                }
            };
            if csv {
                print!("{}", to_csv(&rows));
            } else {
                print(&Value::Array(rows));
            }
            Ok(pass)
        }
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("json")
}

/// Flattens rows of JSON objects into CSV, nested keys joined by `.`.
fn to_csv(rows: &[Value]) -> String {
    fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    flatten(&key, x, out);
                }
            }
            Value::Null => out.push((prefix.to_string(), String::new())),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string().replace(',', ";"))),
        }
    }
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            flatten("", r, &mut out);
            out
        })
        .collect();
    let Some(first) = flat.first() else {
        return String::new();
    };
    let mut s = first.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>().join(",");
    s.push('\n');
    for row in &flat {
        s.push_str(&row.iter().map(|(_, v)| v.as_str()).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}
