//! Refutation search over ordered tuples of junction vertices.
//!
//! Tuples are index sequences into a [`TrixGraph`], enumerated in
//! lexicographic order. With symmetry reduction on, only tuples that are
//! least in their orbit under coordinate permutations are visited, so the
//! first refutation found is the lexicographically least canonical one.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SacError};
use crate::sac::with_workers;
use crate::trix::{trix_graph, TrixGraph, TrixParams, TrixTuple};

/// Largest N for which all N! permutation tables are built.
pub const MAX_SYMMETRY_N: usize = 8;

pub const EVIDENCE: &str = "vertex-level evidence";
pub const PROOF: &str = "proof";

/// Where a stopped search picks up: `N:m:n:i1-i2-...`, naming the first
/// tuple not yet checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ResumeToken {
    pub n_dim: usize,
    pub level: usize,
    pub tuple_len: usize,
    pub next: Vec<usize>,
}

impl fmt::Display for ResumeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}",
            self.n_dim,
            self.level,
            self.tuple_len,
            self.next.iter().join("-")
        )
    }
}

impl FromStr for ResumeToken {
    type Err = SacError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || SacError::Parse(format!("bad resume token `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let [n_dim, level, tuple_len, next] = parts[..] else {
            return Err(bad());
        };
        let token = Self {
            n_dim: n_dim.parse().map_err(|_| bad())?,
            level: level.parse().map_err(|_| bad())?,
            tuple_len: tuple_len.parse().map_err(|_| bad())?,
            next: next
                .split('-')
                .map(|x| x.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?,
        };
        if token.next.len() != token.tuple_len {
            return Err(bad());
        }
        Ok(token)
    }
}

impl From<ResumeToken> for String {
    fn from(t: ResumeToken) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for ResumeToken {
    type Error = SacError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    /// Stop after checking this many tuples in total.
    pub tuple_budget: Option<u64>,
    /// Escalate through finer levels up to this one while no refutation is
    /// found. Levels below the starting level are ignored.
    pub max_level: usize,
    pub resume: Option<ResumeToken>,
    /// Tuples routed per parallel batch.
    pub batch: usize,
    /// Visit only orbit-least tuples (ignored above [`MAX_SYMMETRY_N`]).
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            workers: 0,
            tuple_budget: None,
            max_level: 0,
            resume: None,
            batch: 2048,
            symmetry: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Refuted,
    Exhausted,
    BudgetStop,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrixSearch {
    pub n_dim: usize,
    pub tuple_len: usize,
    /// Level of the last graph searched.
    pub level: usize,
    pub status: SearchStatus,
    pub refutation: Option<TrixTuple>,
    pub tuples_checked: u64,
    pub nodes_expanded: u64,
    pub symmetry_reduced: bool,
    pub resume: Option<ResumeToken>,
}

impl TrixSearch {
    pub fn label(&self) -> &'static str {
        match self.status {
            SearchStatus::Refuted => PROOF,
            _ => EVIDENCE,
        }
    }
}

pub fn trix_refutation_search(p: &TrixParams, n: usize, opts: &SearchOptions) -> Result<TrixSearch> {
    if n < 2 {
        return Err(SacError::InvalidArgument("tuple length must be at least 2".into()));
    }
    let mut start = p.level;
    let mut resume = opts.resume.clone();
    if let Some(t) = &resume {
        if t.n_dim != p.n || t.tuple_len != n || t.level < p.level {
            return Err(SacError::InvalidArgument(format!(
                "resume token {t} does not match the query"
            )));
        }
        start = t.level;
    }
    let last = opts.max_level.max(start);
    let mut checked = 0;
    let mut nodes = 0;
    let mut level = start;
    loop {
        let graph = trix_graph(&p.at_level(level))?;
        let budget = opts.tuple_budget.map(|b| b.saturating_sub(checked));
        let run = with_workers(opts.workers, || {
            search_graph(&graph, n, resume.take().map(|t| t.next), budget, opts)
        })?;
        checked += run.checked;
        nodes += run.nodes;
        let symmetry_reduced = opts.symmetry && p.n <= MAX_SYMMETRY_N;
        let mut out = TrixSearch {
            n_dim: p.n,
            tuple_len: n,
            level,
            status: SearchStatus::Exhausted,
            refutation: None,
            tuples_checked: checked,
            nodes_expanded: nodes,
            symmetry_reduced,
            resume: None,
        };
        if let Some(t) = run.refutation {
            out.status = SearchStatus::Refuted;
            out.refutation = Some(graph.tuple_of(&t));
            return Ok(out);
        }
        if let Some(next) = run.stopped_at {
            out.status = SearchStatus::BudgetStop;
            out.resume = Some(ResumeToken {
                n_dim: p.n,
                level,
                tuple_len: n,
                next,
            });
            return Ok(out);
        }
        if level >= last {
            return Ok(out);
        }
        level += 1;
    }
}

struct Run {
    refutation: Option<Vec<usize>>,
    stopped_at: Option<Vec<usize>>,
    checked: u64,
    nodes: u64,
}

fn search_graph(
    graph: &TrixGraph,
    n: usize,
    start: Option<Vec<usize>>,
    budget: Option<u64>,
    opts: &SearchOptions,
) -> Result<Run> {
    let v = graph.vertices().len();
    if n > v {
        return Ok(Run {
            refutation: None,
            stopped_at: None,
            checked: 0,
            nodes: 0,
        });
    }
    if let Some(s) = &start {
        if s.len() != n || s.iter().any(|&x| x >= v) {
            return Err(SacError::InvalidArgument(
                "resume tuple outside the vertex range".into(),
            ));
        }
    }
    let tables = if opts.symmetry && graph.n() <= MAX_SYMMETRY_N {
        symmetry_tables(graph)
    } else {
        Vec::new()
    };
    let walker = Walker { tables: &tables, v, n };
    let batch_size = opts.batch.max(1);
    let mut run = Run {
        refutation: None,
        stopped_at: None,
        checked: 0,
        nodes: 0,
    };
    let mut batch: Vec<Vec<usize>> = Vec::with_capacity(batch_size);
    let flush = |batch: &mut Vec<Vec<usize>>, run: &mut Run| -> ControlFlow<()> {
        let results: Vec<(bool, u64)> = batch
            .par_iter()
            .map(|t| {
                let r = graph.route_indices(t, None).expect("tuple entries are distinct");
                (r.is_routable(), r.nodes_expanded)
            })
            .collect();
        for (t, (routable, nodes)) in batch.drain(..).zip(results) {
            run.checked += 1;
            run.nodes += nodes;
            if !routable {
                run.refutation = Some(t);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    };
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; v];
    let live: Vec<usize> = (0..tables.len()).collect();
    let mut pending = 0u64;
    let _ = walker.walk(&mut prefix, &mut used, &live, start.as_deref(), &mut |t| {
        if budget.is_some_and(|b| pending >= b) {
            run.stopped_at = Some(t.to_vec());
            return ControlFlow::Break(());
        }
        pending += 1;
        batch.push(t.to_vec());
        if batch.len() == batch_size {
            flush(&mut batch, &mut run)?;
        }
        ControlFlow::Continue(())
    });
    if run.refutation.is_none() {
        let _ = flush(&mut batch, &mut run);
    }
    if run.refutation.is_some() {
        run.stopped_at = None;
    }
    Ok(run)
}

/// `tables[k][x]` is the index of vertex `x` under the k-th non-identity
/// coordinate permutation.
fn symmetry_tables(graph: &TrixGraph) -> Vec<Vec<usize>> {
    let n = graph.n();
    (0..n)
        .permutations(n)
        .filter(|perm| perm.iter().enumerate().any(|(i, &p)| i != p))
        .map(|perm| {
            graph
                .vertices()
                .iter()
                .map(|x| graph.vertex_index(&x.permuted(&perm)).expect("vertex set is symmetric"))
                .collect()
        })
        .collect()
}

struct Walker<'a> {
    tables: &'a [Vec<usize>],
    v: usize,
    n: usize,
}

impl Walker<'_> {
    /// `live` holds the permutations fixing the prefix pointwise; any other
    /// permutation already maps the prefix to something larger. `lower`
    /// bounds the enumeration from below while the prefix matches it.
    fn walk(
        &self,
        prefix: &mut Vec<usize>,
        used: &mut [bool],
        live: &[usize],
        lower: Option<&[usize]>,
        f: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let depth = prefix.len();
        if depth == self.n {
            return f(prefix);
        }
        let from = lower.map_or(0, |s| s[depth]);
        for x in from..self.v {
            if used[x] {
                continue;
            }
            let mut next_live = Vec::new();
            let mut least = true;
            for &k in live {
                let y = self.tables[k][x];
                if y < x {
                    least = false;
                    break;
                }
                if y == x {
                    next_live.push(k);
                }
            }
            if !least {
                continue;
            }
            prefix.push(x);
            used[x] = true;
            let sub = lower.filter(|_| x == from);
            let flow = self.walk(prefix, used, &next_live, sub, f);
            prefix.pop();
            used[x] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    AllRoutable,
    Refuted,
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub n: usize,
    pub status: RowStatus,
    pub level: usize,
    pub label: String,
    pub note: String,
    pub refutation: Option<TrixTuple>,
    pub tuples_checked: u64,
    pub nodes_expanded: u64,
    pub resume: Option<ResumeToken>,
}

impl From<&TrixSearch> for ProfileRow {
    fn from(s: &TrixSearch) -> Self {
        let (status, note) = match s.status {
            SearchStatus::Refuted => (RowStatus::Refuted, format!("proof of not {}-sac", s.tuple_len)),
            SearchStatus::Exhausted => (RowStatus::AllRoutable, format!("{EVIDENCE} at level {}", s.level)),
            SearchStatus::BudgetStop => (RowStatus::Incomplete, format!("budget stop at level {}", s.level)),
        };
        Self {
            n: s.tuple_len,
            status,
            level: s.level,
            label: s.label().into(),
            note,
            refutation: s.refutation.clone(),
            tuples_checked: s.tuples_checked,
            nodes_expanded: s.nodes_expanded,
            resume: s.resume.clone(),
        }
    }
}

/// One search per n in `2..=n_max`. Stops after the first refuted row
/// (larger n are refuted too) or the first budget stop.
pub fn trix_profile(p: &TrixParams, n_max: usize, opts: &SearchOptions) -> Result<Vec<ProfileRow>> {
    if n_max < 2 {
        return Err(SacError::InvalidArgument("n_max must be at least 2".into()));
    }
    let mut rows = Vec::new();
    let mut spent = 0;
    for n in 2..=n_max {
        let row_opts = SearchOptions {
            tuple_budget: opts.tuple_budget.map(|b| b.saturating_sub(spent)),
            resume: opts.resume.clone().filter(|t| t.tuple_len == n),
            ..opts.clone()
        };
        let s = trix_refutation_search(p, n, &row_opts)?;
        spent += s.tuples_checked;
        let row = ProfileRow::from(&s);
        let stop = row.status != RowStatus::AllRoutable;
        rows.push(row);
        if stop {
            break;
        }
    }
    Ok(rows)
}
