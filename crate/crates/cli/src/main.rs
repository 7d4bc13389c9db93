use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use sac_core::constructions::{glue, named_graph, random_graph, GlueSpec, Requirement};
use sac_core::emit::{emit_dot, emit_svg_graph, emit_svg_trix};
use sac_core::graph::Multigraph;
use sac_core::report::{
    run_graph_check, run_graph_number, run_graph_refute, run_graph_route, run_trix_profile, run_trix_route,
    run_trix_search, verify_report, SacReport,
};
use sac_core::sac::SacOptions;
use sac_core::trix::{parse_tuple, trix_graph, trix_route, TrixParams, DEFAULT_CELL_BUDGET};
use sac_core::trix_search::{ResumeToken, SearchOptions};
use sac_core::SacError;

const EXIT_ERROR: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Exact n-strong arc connectedness for graphs and N-trix cell graphs.
#[derive(Parser)]
#[command(name = "sac", version)]
struct Cli {
    /// Worker threads for parallel searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Queries on a graph given as JSON (`-` reads stdin).
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Queries on N-trix cell graphs.
    #[command(subcommand)]
    Trix(TrixCmd),
    /// Print a named or random graph as JSON.
    Make(MakeArgs),
    /// Glue two graphs along vertex pairs.
    Glue {
        left: PathBuf,
        right: PathBuf,
        /// Comma-separated `left:right` vertex pairs.
        #[arg(long)]
        pairs: String,
    },
    /// Draw a graph as DOT or SVG.
    Emit {
        graph: PathBuf,
        #[command(flatten)]
        format: Format,
        /// Vertex path to highlight (SVG only).
        #[arg(long)]
        witness: Option<String>,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Decide whether the graph is n-sac.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        placement_budget: Option<u64>,
        graph: PathBuf,
    },
    /// Sac number (0..=3).
    Number {
        /// Recompute by placement search instead of the characterization.
        #[arg(long)]
        slow: bool,
        graph: PathBuf,
    },
    /// Ordered routing through vertex terminals.
    Route {
        #[arg(long)]
        terminals: String,
        #[arg(long)]
        node_budget: Option<u64>,
        graph: PathBuf,
    },
    /// Refutation placement from a cut set.
    Refute {
        #[arg(long)]
        cutset: String,
        graph: PathBuf,
    },
}

#[derive(Args, Clone, Copy)]
struct TrixArgs {
    /// Simplex vertex count N.
    #[arg(long = "N")]
    n_dim: usize,
    #[arg(long, default_value_t = 1)]
    level: usize,
    #[arg(long)]
    cell_budget: Option<u64>,
}

#[derive(Subcommand)]
enum TrixCmd {
    /// Route a tuple like `w:.:1:2,c3,c2,w:.:1:3`.
    Route {
        #[command(flatten)]
        trix: TrixArgs,
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Search for an unroutable n-tuple.
    Search {
        #[command(flatten)]
        trix: TrixArgs,
        #[arg(long)]
        n: usize,
        /// Escalate to finer levels up to this one.
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(long)]
        resume: Option<String>,
        #[arg(long)]
        tuple_budget: Option<u64>,
        /// Visit every tuple instead of one per symmetry orbit.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Search every n in 2..=max-n.
    Profile {
        #[command(flatten)]
        trix: TrixArgs,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(long)]
        tuple_budget: Option<u64>,
    },
    /// Draw the cell graph, optionally with the route of a tuple.
    Emit {
        #[command(flatten)]
        trix: TrixArgs,
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        tuple: Option<String>,
    },
}

#[derive(Args, Clone, Copy)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MakeArgs {
    /// triod, figure8, theta, cycle(k), complete(k), path(k),
    /// two_triangles_shared_vertex, petersen, loop, K2.
    #[arg(long)]
    named: Option<String>,
    /// `seed=S,v=V,e=E,req=none|connected|two_connected`.
    #[arg(long)]
    random: Option<String>,
}

/// Budget defaults, overridden by `SAC_BUDGET` (a bare number for all, or
/// `cells=..,tuples=..,nodes=..,placements=..`) and then by flags.
#[derive(Default)]
struct Budgets {
    cells: Option<u64>,
    tuples: Option<u64>,
    nodes: Option<u64>,
    placements: Option<u64>,
}

impl Budgets {
    fn from_env() -> anyhow::Result<Self> {
        let Ok(raw) = std::env::var("SAC_BUDGET") else {
            return Ok(Self::default());
        };
        let mut b = Self::default();
        if let Ok(all) = raw.trim().parse::<u64>() {
            return Ok(Self {
                cells: Some(all),
                tuples: Some(all),
                nodes: Some(all),
                placements: Some(all),
            });
        }
        for item in raw.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').context("SAC_BUDGET entries are key=value")?;
            let v: u64 = v.trim().parse().with_context(|| format!("SAC_BUDGET value `{v}`"))?;
            match k.trim() {
                "cells" => b.cells = Some(v),
                "tuples" => b.tuples = Some(v),
                "nodes" => b.nodes = Some(v),
                "placements" => b.placements = Some(v),
                other => bail!("unknown SAC_BUDGET key `{other}`"),
            }
        }
        Ok(b)
    }
}

enum Outcome {
    Report(Box<SacReport>, String),
    Text(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Report(report, summary)) => {
            eprintln!("{summary}");
            println!("{}", report.to_json());
            if report.is_budget_stop() {
                ExitCode::from(EXIT_BUDGET)
            } else {
                ExitCode::SUCCESS
            }
        }
        Ok(Outcome::Text(text)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<SacError>() {
                Some(SacError::Budget { .. }) => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::from(EXIT_ERROR),
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let budgets = Budgets::from_env()?;
    let workers = cli.workers;
    match cli.command {
        Command::Graph(cmd) => graph_cmd(cmd, &budgets, workers),
        Command::Trix(cmd) => trix_cmd(cmd, &budgets, workers),
        Command::Make(args) => {
            let g = match (args.named, args.random) {
                (Some(name), _) => named_graph(&name)?,
                (None, Some(spec)) => random_from_spec(&spec)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            Ok(Outcome::Text(g.to_json()))
        }
        Command::Glue { left, right, pairs } => {
            let pairs = pairs
                .split(',')
                .map(|p| {
                    p.split_once(':')
                        .map(|(a, b)| (a.trim().to_owned(), b.trim().to_owned()))
                        .with_context(|| format!("pair `{p}` is not left:right"))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let spec = GlueSpec {
                left: read_graph(&left)?,
                right: read_graph(&right)?,
                pairs,
            };
            Ok(Outcome::Text(glue(&spec)?.to_json()))
        }
        Command::Emit { graph, format, witness } => {
            let g = read_graph(&graph)?;
            if format.dot {
                return Ok(Outcome::Text(emit_dot(&g)));
            }
            let w = witness.map(|w| split_list(&w));
            Ok(Outcome::Text(emit_svg_graph(&g, w.as_deref())))
        }
    }
}

fn graph_cmd(cmd: GraphCmd, budgets: &Budgets, workers: usize) -> anyhow::Result<Outcome> {
    let opts = |placement_budget: Option<u64>| SacOptions {
        workers,
        placement_budget: placement_budget.or(budgets.placements),
        ..SacOptions::default()
    };
    let (report, summary) = match cmd {
        GraphCmd::Check {
            n,
            placement_budget,
            graph,
        } => {
            let r = run_graph_check(&read_graph(&graph)?, n, &opts(placement_budget))?;
            let s = format!(
                "{n}-sac: {} ({} placements checked)",
                r.decision.as_str().unwrap_or("?"),
                r.stats.placements_checked.unwrap_or(0)
            );
            (r, s)
        }
        GraphCmd::Number { slow, graph } => {
            let r = run_graph_number(&read_graph(&graph)?, slow, &opts(None))?;
            let s = format!("sac number: {}", r.decision);
            (r, s)
        }
        GraphCmd::Route {
            terminals,
            node_budget,
            graph,
        } => {
            let r = run_graph_route(
                &read_graph(&graph)?,
                &split_list(&terminals),
                node_budget.or(budgets.nodes),
            )?;
            let s = format!("route: {}", r.decision.as_str().unwrap_or("?"));
            (r, s)
        }
        GraphCmd::Refute { cutset, graph } => {
            let f: BTreeSet<String> = split_list(&cutset).into_iter().collect();
            let r = run_graph_refute(&read_graph(&graph)?, &f)?;
            let s = format!("refutation: {}", r.decision.as_str().unwrap_or("?"));
            (r, s)
        }
    };
    gate(report, summary)
}

fn trix_params(t: TrixArgs, budgets: &Budgets) -> anyhow::Result<TrixParams> {
    Ok(TrixParams::new(t.n_dim, t.level)?.with_budget(t.cell_budget.or(budgets.cells).unwrap_or(DEFAULT_CELL_BUDGET)))
}

fn trix_cmd(cmd: TrixCmd, budgets: &Budgets, workers: usize) -> anyhow::Result<Outcome> {
    let (report, summary) = match cmd {
        TrixCmd::Route {
            trix,
            tuple,
            node_budget,
        } => {
            let p = trix_params(trix, budgets)?;
            let r = run_trix_route(&p, &parse_tuple(p.n, &tuple)?, node_budget.or(budgets.nodes))?;
            let s = format!(
                "{}: {}",
                r.decision.as_str().unwrap_or("?"),
                r.label.as_deref().unwrap_or("")
            );
            (r, s)
        }
        TrixCmd::Search {
            trix,
            n,
            max_level,
            resume,
            tuple_budget,
            no_symmetry,
        } => {
            let p = trix_params(trix, budgets)?;
            let opts = SearchOptions {
                workers,
                tuple_budget: tuple_budget.or(budgets.tuples),
                max_level: max_level.unwrap_or(p.level),
                resume: resume.map(|r| r.parse::<ResumeToken>()).transpose()?,
                symmetry: !no_symmetry,
                ..SearchOptions::default()
            };
            let r = run_trix_search(&p, n, &opts)?;
            let mut s = format!(
                "{} after {} tuples: {}",
                r.decision.as_str().unwrap_or("?"),
                r.stats.tuples_checked.unwrap_or(0),
                r.label.as_deref().unwrap_or("")
            );
            if let Some(t) = &r.resume {
                s.push_str(&format!("\nresume with --resume {t}"));
            }
            (r, s)
        }
        TrixCmd::Profile {
            trix,
            max_n,
            max_level,
            tuple_budget,
        } => {
            let p = trix_params(trix, budgets)?;
            let opts = SearchOptions {
                workers,
                tuple_budget: tuple_budget.or(budgets.tuples),
                max_level: max_level.unwrap_or(p.level),
                ..SearchOptions::default()
            };
            let r = run_trix_profile(&p, max_n, &opts)?;
            let s = r
                .rows
                .iter()
                .flatten()
                .map(|row| format!("n={}: {}", row.n, row.note))
                .collect::<Vec<_>>()
                .join("\n");
            (r, s)
        }
        TrixCmd::Emit { trix, format, tuple } => {
            let p = trix_params(trix, budgets)?;
            let (graph, witness) = match tuple {
                Some(t) => {
                    let route = trix_route(&p, &parse_tuple(p.n, &t)?)?;
                    (trix_graph(&p.at_level(route.level))?, route.witness)
                }
                None => (trix_graph(&p)?, None),
            };
            if format.dot {
                return Ok(Outcome::Text(emit_dot(&graph.to_multigraph())));
            }
            return Ok(Outcome::Text(emit_svg_trix(&graph, witness.as_deref())));
        }
    };
    gate(report, summary)
}

/// Refuses to print a report whose certificates do not replay.
fn gate(report: SacReport, summary: String) -> anyhow::Result<Outcome> {
    if !verify_report(&report)? {
        bail!("internal consistency check failed: certificate did not verify");
    }
    Ok(Outcome::Report(Box::new(report), summary))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|x| x.trim().to_owned())
        .filter(|x| !x.is_empty())
        .collect()
}

fn read_graph(path: &Path) -> anyhow::Result<Multigraph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Multigraph::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn random_from_spec(spec: &str) -> anyhow::Result<Multigraph> {
    let (mut seed, mut v, mut e, mut req) = (None, None, None, Requirement::None);
    for item in spec.split(',') {
        let (k, val) = item
            .split_once('=')
            .with_context(|| format!("`{item}` is not key=value"))?;
        match k.trim() {
            "seed" => seed = Some(val.parse()?),
            "v" => v = Some(val.parse()?),
            "e" => e = Some(val.parse()?),
            "req" => req = val.parse()?,
            other => bail!("unknown random graph key `{other}`"),
        }
    }
    let (Some(seed), Some(v), Some(e)) = (seed, v, e) else {
        bail!("random graph needs seed, v and e");
    };
    Ok(random_graph(seed, v, e, req)?)
}
