//! JSON certificates for every query, and their replay.
//!
//! The `run_*` functions execute a query and package the answer as a
//! [`SacReport`]; [`verify_report`] re-executes every embedded witness and
//! refutation against the echoed inputs.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Result, SacError};
use crate::graph::Multigraph;
use crate::placement::Placement;
use crate::route::{route_ordered, route_ordered_limited, verify_route, verify_route_ids, OrderedQuery};
use crate::sac::{decide_n_sac_with, normalize, placement_is_unroutable, refute_via_cutset, sac_number, SacOptions};
use crate::trix::{trix_graph, trix_route_limited, TrixParams, TrixTuple, TrixVertex};
use crate::trix_search::{
    trix_profile, trix_refutation_search, ProfileRow, ResumeToken, RowStatus, SearchOptions, SearchStatus, EVIDENCE,
    PROOF,
};

pub const TOOL: &str = "sac";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Query {
    GraphCheck {
        graph: Multigraph,
        n: usize,
    },
    GraphNumber {
        graph: Multigraph,
        slow: bool,
    },
    GraphRoute {
        graph: Multigraph,
        terminals: Vec<String>,
    },
    GraphRefute {
        graph: Multigraph,
        cutset: Vec<String>,
    },
    TrixRoute {
        params: TrixParams,
        tuple: TrixTuple,
    },
    TrixSearch {
        params: TrixParams,
        n: usize,
        max_level: usize,
        resume: Option<ResumeToken>,
    },
    TrixProfile {
        params: TrixParams,
        max_n: usize,
        max_level: usize,
    },
}

/// The graph a placement refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Host {
    /// The input graph itself.
    Input,
    /// Its 3-part uniform subdivision.
    Normalized,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Path { vertices: Vec<String> },
    TrixPath { level: usize, vertices: Vec<TrixVertex> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// An unroutable placement of `n` points.
    Placement { n: usize, host: Host, placement: Placement },
    /// An unroutable tuple of junction vertices at `level`.
    TrixTuple { level: usize, tuple: TrixTuple },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placements_checked: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuples_checked: Option<u64>,
    pub nodes_expanded: u64,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SacReport {
    pub tool: String,
    pub version: String,
    pub query: Query,
    pub decision: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<Refutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<ProfileRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resume: Option<ResumeToken>,
    pub stats: Stats,
}

impl SacReport {
    fn new(query: Query, decision: Value) -> Self {
        Self {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            query,
            decision,
            label: None,
            witness: None,
            refutation: None,
            rows: None,
            resume: None,
            stats: Stats::default(),
        }
    }

    /// True when a search stopped on its budget before deciding.
    pub fn is_budget_stop(&self) -> bool {
        self.resume.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Same report with the wall time zeroed, for determinism checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.stats.wall_time_ms = 0;
        r
    }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

pub fn run_graph_check(g: &Multigraph, n: usize, opts: &SacOptions) -> Result<SacReport> {
    let t = Instant::now();
    let d = decide_n_sac_with(g, n, opts)?;
    let mut r = SacReport::new(Query::GraphCheck { graph: g.clone(), n }, json!(d.decision));
    r.label = Some(PROOF.into());
    r.refutation = d.refuting_placement.map(|placement| Refutation::Placement {
        n,
        host: if d.disconnected { Host::Input } else { Host::Normalized },
        placement,
    });
    r.stats = Stats {
        placements_checked: Some(d.placements_checked),
        tuples_checked: None,
        nodes_expanded: d.nodes_expanded,
        wall_time_ms: elapsed_ms(t),
    };
    Ok(r)
}

/// The characterization gives the number directly. In slow mode the number
/// comes from placement search, and the first failing n contributes its
/// refutation.
pub fn run_graph_number(g: &Multigraph, slow: bool, opts: &SacOptions) -> Result<SacReport> {
    let t = Instant::now();
    let fast = sac_number(g);
    let mut value = fast.value;
    let mut refutation = None;
    let mut stats = Stats::default();
    if slow && fast.value > 0 {
        let mut placements = 0;
        value = 1;
        for n in 2..=4 {
            let d = decide_n_sac_with(g, n, opts)?;
            placements += d.placements_checked;
            stats.nodes_expanded += d.nodes_expanded;
            if !d.is_yes() {
                refutation = d.refuting_placement.map(|placement| Refutation::Placement {
                    n,
                    host: if d.disconnected { Host::Input } else { Host::Normalized },
                    placement,
                });
                break;
            }
            value = n as u8;
        }
        stats.placements_checked = Some(placements);
    }
    let mut r = SacReport::new(Query::GraphNumber { graph: g.clone(), slow }, json!(value));
    r.label = Some(PROOF.into());
    r.refutation = refutation;
    stats.wall_time_ms = elapsed_ms(t);
    r.stats = stats;
    Ok(r)
}

/// Routes vertex terminals in `g` itself.
pub fn run_graph_route(g: &Multigraph, terminals: &[String], max_nodes: Option<u64>) -> Result<SacReport> {
    let t = Instant::now();
    let ix = g.to_indexed();
    let q = OrderedQuery::from_ids(&ix, terminals)?;
    let res = route_ordered_limited(&q, max_nodes)?;
    let mut r = SacReport::new(
        Query::GraphRoute {
            graph: g.clone(),
            terminals: terminals.to_vec(),
        },
        json!(res.decision),
    );
    r.witness = res.witness_ids(&ix).map(|vertices| Witness::Path { vertices });
    r.stats.nodes_expanded = res.nodes_expanded;
    r.stats.wall_time_ms = elapsed_ms(t);
    Ok(r)
}

pub fn run_graph_refute(g: &Multigraph, cutset: &BTreeSet<String>) -> Result<SacReport> {
    let t = Instant::now();
    let placement = refute_via_cutset(g, cutset)?;
    let n = placement.len();
    let mut r = SacReport::new(
        Query::GraphRefute {
            graph: g.clone(),
            cutset: cutset.iter().cloned().collect(),
        },
        json!(format!("not {n}-sac")),
    );
    r.label = Some(PROOF.into());
    r.refutation = Some(Refutation::Placement {
        n,
        host: Host::Input,
        placement,
    });
    r.stats.wall_time_ms = elapsed_ms(t);
    Ok(r)
}

pub fn run_trix_route(p: &TrixParams, tuple: &TrixTuple, max_nodes: Option<u64>) -> Result<SacReport> {
    let t = Instant::now();
    let route = trix_route_limited(p, tuple, max_nodes)?;
    let mut r = SacReport::new(
        Query::TrixRoute {
            params: *p,
            tuple: tuple.clone(),
        },
        json!(route.result.decision),
    );
    if route.result.is_routable() {
        r.label = Some(EVIDENCE.into());
        r.witness = route.witness.map(|vertices| Witness::TrixPath {
            level: route.level,
            vertices,
        });
    } else {
        r.label = Some(PROOF.into());
        r.refutation = Some(Refutation::TrixTuple {
            level: route.level,
            tuple: tuple.clone(),
        });
    }
    r.stats.nodes_expanded = route.result.nodes_expanded;
    r.stats.wall_time_ms = elapsed_ms(t);
    Ok(r)
}

pub fn run_trix_search(p: &TrixParams, n: usize, opts: &SearchOptions) -> Result<SacReport> {
    let t = Instant::now();
    let s = trix_refutation_search(p, n, opts)?;
    let mut r = SacReport::new(
        Query::TrixSearch {
            params: *p,
            n,
            max_level: opts.max_level,
            resume: opts.resume.clone(),
        },
        json!(s.status),
    );
    r.label = Some(match s.status {
        SearchStatus::Refuted => PROOF.to_owned(),
        _ => format!("{EVIDENCE} at level {}", s.level),
    });
    r.refutation = s
        .refutation
        .map(|tuple| Refutation::TrixTuple { level: s.level, tuple });
    r.resume = s.resume;
    r.stats = Stats {
        placements_checked: None,
        tuples_checked: Some(s.tuples_checked),
        nodes_expanded: s.nodes_expanded,
        wall_time_ms: elapsed_ms(t),
    };
    Ok(r)
}

/// Decision: the largest n whose row is all routable, and the refuted n if
/// any.
pub fn run_trix_profile(p: &TrixParams, max_n: usize, opts: &SearchOptions) -> Result<SacReport> {
    let t = Instant::now();
    let rows = trix_profile(p, max_n, opts)?;
    let routable_up_to = rows
        .iter()
        .take_while(|r| r.status == RowStatus::AllRoutable)
        .map(|r| r.n)
        .last();
    let refuted_at = rows.iter().find(|r| r.status == RowStatus::Refuted).map(|r| r.n);
    let mut r = SacReport::new(
        Query::TrixProfile {
            params: *p,
            max_n,
            max_level: opts.max_level,
        },
        json!({ "all_routable_up_to": routable_up_to, "refuted_at": refuted_at }),
    );
    r.resume = rows.iter().find_map(|row| row.resume.clone());
    r.stats = Stats {
        placements_checked: None,
        tuples_checked: Some(rows.iter().map(|r| r.tuples_checked).sum()),
        nodes_expanded: rows.iter().map(|r| r.nodes_expanded).sum(),
        wall_time_ms: elapsed_ms(t),
    };
    r.rows = Some(rows);
    Ok(r)
}

/// Replays every certificate in `r`: witnesses through the route verifier,
/// refutations and unroutable answers by re-running the exhaustive router.
/// Exhaustive positive answers (all placements or tuples routable) carry no
/// certificate and pass.
pub fn verify_report(r: &SacReport) -> Result<bool> {
    match &r.query {
        Query::GraphCheck { graph, .. } | Query::GraphNumber { graph, .. } | Query::GraphRefute { graph, .. } => {
            match &r.refutation {
                Some(Refutation::Placement { n, host, placement }) => {
                    if placement.len() != *n {
                        return Ok(false);
                    }
                    if let Query::GraphCheck { n: asked, .. } = &r.query {
                        if asked != n {
                            return Ok(false);
                        }
                    }
                    let host_graph = match host {
                        Host::Input => graph.clone(),
                        Host::Normalized => normalize(graph),
                    };
                    placement_is_unroutable(&host_graph, placement)
                }
                Some(_) => Ok(false),
                // Positive answers carry no certificate; they must agree with
                // the characterization.
                None => Ok(match &r.query {
                    Query::GraphCheck { n, .. } => {
                        r.decision == json!("yes") && usize::from(sac_number(graph).value) >= *n
                    }
                    Query::GraphNumber { .. } => r.decision == json!(sac_number(graph).value),
                    _ => false,
                }),
            }
        }
        Query::GraphRoute { graph, terminals } => {
            let ix = graph.to_indexed();
            match &r.witness {
                Some(Witness::Path { vertices }) => Ok(verify_route_ids(&ix, terminals, vertices)),
                Some(_) => Ok(false),
                None => {
                    let q = OrderedQuery::from_ids(&ix, terminals)?;
                    Ok(!route_ordered(&q).is_routable())
                }
            }
        }
        Query::TrixRoute { params, tuple } => match (&r.witness, &r.refutation) {
            (Some(Witness::TrixPath { level, vertices }), None) => {
                let graph = trix_graph(&params.at_level(*level))?;
                let q = OrderedQuery::new(graph.graph(), graph.indices_of(tuple)?)?;
                let Some(path) = vertices
                    .iter()
                    .map(|v| graph.vertex_index(v))
                    .collect::<Option<Vec<_>>>()
                else {
                    return Ok(false);
                };
                Ok(verify_route(&q, &path))
            }
            (None, Some(Refutation::TrixTuple { level, tuple: t })) => {
                Ok(t == tuple && trix_tuple_unroutable(params, *level, t)?)
            }
            _ => Ok(false),
        },
        Query::TrixSearch { params, n, .. } => match &r.refutation {
            Some(Refutation::TrixTuple { level, tuple }) => {
                Ok(tuple.len() == *n && trix_tuple_unroutable(params, *level, tuple)?)
            }
            Some(_) => Ok(false),
            None => Ok(r.decision != json!(SearchStatus::Refuted)),
        },
        Query::TrixProfile { params, .. } => {
            let Some(rows) = &r.rows else {
                return Ok(false);
            };
            for row in rows {
                match (&row.status, &row.refutation) {
                    (RowStatus::Refuted, Some(t)) => {
                        if t.len() != row.n || !trix_tuple_unroutable(params, row.level, t)? {
                            return Ok(false);
                        }
                    }
                    (RowStatus::Refuted, None) | (_, Some(_)) => return Ok(false),
                    _ => {}
                }
            }
            Ok(true)
        }
    }
}

/// Expansions spent replaying a trix refutation on the full cell graph.
const REPLAY_NODES: u64 = 5_000_000;

fn trix_tuple_unroutable(p: &TrixParams, level: usize, tuple: &TrixTuple) -> Result<bool> {
    if level < p.level {
        return Err(SacError::InvalidArgument("refutation below the query level".into()));
    }
    let graph = trix_graph(&p.at_level(level))?;
    let terminals = graph.indices_of(tuple)?;
    let q = OrderedQuery::new(graph.graph(), terminals.clone())?;
    // Replay on the whole cell graph; past the budget, fall back to the
    // quotient router.
    match route_ordered_limited(&q, Some(REPLAY_NODES)) {
        Ok(r) => Ok(!r.is_routable()),
        Err(SacError::Budget { .. }) => Ok(!graph.route_indices(&terminals, None)?.is_routable()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::named_graph;
    use crate::trix::parse_tuple;

    fn round_trip(r: &SacReport) {
        let back = SacReport::from_json(&r.to_json()).unwrap();
        assert_eq!(&back, r);
        assert!(verify_report(&back).unwrap());
    }

    #[test]
    fn graph_reports_round_trip_and_verify() {
        let opts = SacOptions::default();
        let c4 = named_graph("cycle(4)").unwrap();
        let check = run_graph_check(&c4, 4, &opts).unwrap();
        assert_eq!(check.decision, json!("no"));
        round_trip(&check);
        let yes = run_graph_check(&c4, 3, &opts).unwrap();
        assert_eq!(yes.decision, json!("yes"));
        round_trip(&yes);

        let triod = named_graph("triod").unwrap();
        let number = run_graph_number(&triod, false, &opts).unwrap();
        assert_eq!(number.decision, json!(2));
        round_trip(&number);
        let slow = run_graph_number(&triod, true, &opts).unwrap();
        assert_eq!(slow.decision, json!(2));
        assert!(matches!(slow.refutation, Some(Refutation::Placement { n: 3, .. })));
        round_trip(&slow);

        let route = run_graph_route(&c4, &["a".into(), "b".into(), "c".into()], None).unwrap();
        assert_eq!(route.decision, json!("routable"));
        round_trip(&route);
        let blocked = run_graph_route(&c4, &["a".into(), "c".into(), "b".into(), "d".into()], None).unwrap();
        assert_eq!(blocked.decision, json!("unroutable"));
        round_trip(&blocked);

        let path = named_graph("path(3)").unwrap();
        let refute = run_graph_refute(&path, &["b".to_string()].into()).unwrap();
        round_trip(&refute);
    }

    #[test]
    fn trix_reports_round_trip_and_verify() {
        let p = TrixParams::new(4, 1).unwrap();
        let tetrix = parse_tuple(4, "w:.:1:2,c3,c2,w:.:1:3").unwrap();
        let r = run_trix_route(&p, &tetrix, None).unwrap();
        assert_eq!(
            (r.decision.clone(), r.label.as_deref()),
            (json!("unroutable"), Some(PROOF))
        );
        round_trip(&r);
        let corners = parse_tuple(4, "c1,c2,c3").unwrap();
        round_trip(&run_trix_route(&p, &corners, None).unwrap());
        let s = run_trix_search(&p, 4, &SearchOptions::default()).unwrap();
        assert_eq!(s.decision, json!("refuted"));
        round_trip(&s);
        let prof = run_trix_profile(&p, 4, &SearchOptions::default()).unwrap();
        assert_eq!(prof.decision, json!({"all_routable_up_to": 3, "refuted_at": 4}));
        round_trip(&prof);
    }

    #[test]
    fn tampered_certificates_fail() {
        let c4 = named_graph("cycle(4)").unwrap();
        let mut r = run_graph_route(&c4, &["a".into(), "b".into(), "c".into()], None).unwrap();
        r.witness = Some(Witness::Path {
            vertices: vec!["a".into(), "d".into(), "c".into()],
        });
        assert!(!verify_report(&r).unwrap());

        let mut r = run_graph_check(&c4, 4, &SacOptions::default()).unwrap();
        r.refutation = Some(Refutation::Placement {
            n: 4,
            host: Host::Input,
            placement: Placement::from_vertices(&["a", "b", "c", "d"]),
        });
        assert!(!verify_report(&r).unwrap());

        let p = TrixParams::new(4, 1).unwrap();
        let mut r = run_trix_search(&p, 4, &SearchOptions::default()).unwrap();
        r.refutation = Some(Refutation::TrixTuple {
            level: 1,
            tuple: parse_tuple(4, "c1,c2,c3,c4").unwrap(),
        });
        assert!(!verify_report(&r).unwrap());
    }

    #[test]
    fn budget_stop_carries_resume_token() {
        let p = TrixParams::new(3, 1).unwrap();
        let opts = SearchOptions {
            tuple_budget: Some(3),
            ..Default::default()
        };
        let r = run_trix_search(&p, 3, &opts).unwrap();
        assert!(r.is_budget_stop());
        assert_eq!(r.decision, json!("budget_stop"));
        round_trip(&r);
    }
}
