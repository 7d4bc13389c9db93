//! n-sac decisions for finite graphs.
//!
//! A graph is n-sac when every placement of n points on its realization can
//! be visited in order by an arc. Placements are enumerated on the 3-part
//! subdivision ([`normalize`]), realized as vertex terminals, and routed.
//! Refuting placements are therefore stated on the normalized graph.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SacError};
use crate::graph::{is_topologically_2connected, subdivide_uniform, Multigraph};
use crate::placement::{realize_placement, Placement, PlacementBase, RawPlacements};
use crate::route::{route_ordered, OrderedQuery};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SacDecision {
    pub n: usize,
    pub decision: Verdict,
    pub refuting_placement: Option<Placement>,
    pub placements_checked: u64,
    pub nodes_expanded: u64,
    /// Set when the refutation is a pair of points in different components.
    pub disconnected: bool,
}

impl SacDecision {
    pub fn is_yes(&self) -> bool {
        self.decision == Verdict::Yes
    }
}

#[derive(Clone, Debug)]
pub struct SacOptions {
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    /// Stop with a budget error after this many placements.
    pub placement_budget: Option<u64>,
    /// Placements routed per parallel batch.
    pub batch: usize,
}

impl Default for SacOptions {
    fn default() -> Self {
        Self {
            workers: 0,
            placement_budget: None,
            batch: 4096,
        }
    }
}

/// The 3-part uniform subdivision: simple, homeomorphic, and the graph every
/// refuting placement refers to.
pub fn normalize(g: &Multigraph) -> Multigraph {
    subdivide_uniform(g, 3).expect("parts = 3 is valid").0
}

pub fn decide_n_sac(g: &Multigraph, n: usize) -> Result<SacDecision> {
    decide_n_sac_with(g, n, &SacOptions::default())
}

pub fn decide_n_sac_with(g: &Multigraph, n: usize, opts: &SacOptions) -> Result<SacDecision> {
    if n < 2 {
        return Err(SacError::InvalidArgument("n must be at least 2".into()));
    }
    let ix = g.to_indexed();
    let comps = ix.components();
    if comps.len() > 1 {
        let placement = Placement::from_vertices(&[ix.id(comps[0][0]), ix.id(comps[1][0])]);
        return Ok(SacDecision {
            n,
            decision: Verdict::No,
            refuting_placement: Some(placement),
            placements_checked: 0,
            nodes_expanded: 0,
            disconnected: true,
        });
    }
    with_workers(opts.workers, || search_placements(g, n, opts))
}

pub(crate) fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(f)
}

fn search_placements(g: &Multigraph, n: usize, opts: &SacOptions) -> Result<SacDecision> {
    let normal = normalize(g);
    let base = PlacementBase::new(&normal)?;
    let mut raws = RawPlacements::new(&base, n);
    let batch_size = opts.batch.max(1);
    let mut checked = 0u64;
    let mut nodes = 0u64;
    loop {
        let mut batch: Vec<_> = raws.by_ref().take(batch_size).collect();
        if let Some(limit) = opts.placement_budget {
            let room = limit.saturating_sub(checked) as usize;
            if batch.len() > room {
                batch.truncate(room);
                if batch.is_empty() {
                    return Err(SacError::Budget {
                        what: "placement",
                        required: checked + 1,
                        limit,
                    });
                }
            }
        }
        if batch.is_empty() {
            return Ok(SacDecision {
                n,
                decision: Verdict::Yes,
                refuting_placement: None,
                placements_checked: checked,
                nodes_expanded: nodes,
                disconnected: false,
            });
        }
        let outcomes: Vec<(bool, u64)> = batch
            .par_iter()
            .map(|raw| {
                let (graph, terminals) = base.realize(raw);
                let q = OrderedQuery::new(&graph, terminals).expect("realized terminals are valid");
                let r = route_ordered(&q);
                (r.is_routable(), r.nodes_expanded)
            })
            .collect();
        for (raw, (ok, cost)) in batch.iter().zip(outcomes) {
            checked += 1;
            nodes += cost;
            if !ok {
                return Ok(SacDecision {
                    n,
                    decision: Verdict::No,
                    refuting_placement: Some(base.to_placement(raw)),
                    placements_checked: checked,
                    nodes_expanded: nodes,
                    disconnected: false,
                });
            }
        }
    }
}

/// Re-executes a refutation: realizes `placement` on `host` and routes it.
/// Returns true when the realized query is unroutable.
pub fn placement_is_unroutable(host: &Multigraph, placement: &Placement) -> Result<bool> {
    let (realized, terminals) = realize_placement(host, placement)?;
    let ix = realized.to_indexed();
    let q = OrderedQuery::from_ids(&ix, &terminals)?;
    Ok(!route_ordered(&q).is_routable())
}

/// Replays a [`SacDecision`] refutation against the graph it was computed
/// for.
pub fn verify_refutation(g: &Multigraph, decision: &SacDecision) -> Result<bool> {
    let Some(p) = &decision.refuting_placement else {
        return Ok(false);
    };
    if decision.disconnected {
        placement_is_unroutable(g, p)
    } else {
        placement_is_unroutable(&normalize(g), p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SacMethod {
    Characterization,
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SacNumber {
    pub value: u8,
    pub method: SacMethod,
}

/// 0 for no edges or an isolated vertex, 1 when disconnected, 3 when the
/// realization has no cut point, 2 otherwise. No graph is 4-sac.
pub fn sac_number(g: &Multigraph) -> SacNumber {
    let value = if degenerate(g) {
        0
    } else if !g.is_connected() {
        1
    } else if is_topologically_2connected(g) {
        3
    } else {
        2
    };
    SacNumber {
        value,
        method: SacMethod::Characterization,
    }
}

fn degenerate(g: &Multigraph) -> bool {
    g.edge_count() == 0 || g.vertices().any(|v| g.degree(v) == 0)
}

/// Recomputes the sac number by placement search: the largest n in 2..=4
/// such that every smaller-or-equal n is decided yes.
pub fn sac_number_slow(g: &Multigraph, opts: &SacOptions) -> Result<SacNumber> {
    let mut value = 0;
    if !degenerate(g) {
        value = 1;
        for n in 2..=4 {
            if !decide_n_sac_with(g, n, opts)?.is_yes() {
                break;
            }
            value = n as u8;
        }
    }
    Ok(SacNumber {
        value,
        method: SacMethod::Search,
    })
}

/// Cut-set refutation: the cut set in ascending id order, then the least
/// vertex of the first component of `g - f`, then the least vertex of the
/// second. No arc visits them in this order, so `g` is not
/// `(|f| + 2)`-sac.
pub fn refute_via_cutset(g: &Multigraph, f: &BTreeSet<String>) -> Result<Placement> {
    let ix = g.to_indexed();
    let mut removed = vec![false; ix.len()];
    for v in f {
        let i = ix.index_of(v).ok_or_else(|| SacError::UnknownVertex(v.clone()))?;
        removed[i] = true;
    }
    let comps = ix.components_without(&removed);
    if comps.len() < 2 {
        return Err(SacError::NotACutSet);
    }
    let mut ids: Vec<&str> = f.iter().map(String::as_str).collect();
    ids.push(ix.id(comps[0][0]));
    ids.push(ix.id(comps[1][0]));
    Ok(Placement::from_vertices(&ids))
}
