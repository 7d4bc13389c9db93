//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Time limits and counts are fixed below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use sac_core::constructions::{glue, named_graph, random_graph, standard_corpus, GlueSpec, Requirement};
use sac_core::graph::{is_topologically_2connected, Multigraph};
use sac_core::placement::realize_placement;
use sac_core::report::{
    run_graph_check, run_graph_number, run_graph_refute, run_trix_route, run_trix_search, verify_report, Refutation,
    SacReport,
};
use sac_core::route::{brute_route_oracle, route_ordered, verify_route, OrderedQuery, ORACLE_LIMIT};
use sac_core::sac::{placement_is_unroutable, SacOptions};
use sac_core::trix::{parse_tuple, trix_graph, trix_route, TrixParams, TrixTuple};
use sac_core::trix_search::SearchOptions;
use sac_core::SacError;

const CORPUS_RANDOM: usize = 90;
const CORPUS_SEED: u64 = 7;
const CUTSET_PAIRS: usize = 50;
const GLUED_PAIRS: usize = 20;
const ORACLE_INSTANCES: usize = 10_000;
const INVARIANCE_TUPLES: usize = 1_000;
/// Expansion cap for one exhaustive search on a whole cell graph.
const FULL_GRAPH_NODES: u64 = 1_000_000;

type Outcome = std::result::Result<String, String>;

#[derive(Default)]
struct Run {
    reports: Vec<SacReport>,
    failed: usize,
}

impl Run {
    fn criterion(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce(&mut Self) -> Outcome) {
        let t = Instant::now();
        let outcome = f(self);
        let took = t.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; over the {}s limit", limit.as_secs())),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} ({:.2}s)", took.as_secs_f64()),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {id:>2} {name}: {detail} ({:.2}s)", took.as_secs_f64());
            }
        }
    }

    fn keep(&mut self, r: SacReport) -> SacReport {
        self.reports.push(r.clone());
        r
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(String, Multigraph)> {
    standard_corpus(CORPUS_RANDOM, CORPUS_SEED)
}

fn check_corpus(run: &mut Run) -> Outcome {
    let corpus = corpus();
    ensure(corpus.len() >= 100, || format!("corpus has {} graphs", corpus.len()))?;
    let opts = SacOptions::default();
    let mut mismatches = Vec::new();
    for (name, g) in &corpus {
        ensure(g.is_connected() && g.vertex_count() <= 10, || {
            format!("{name} is outside the corpus rules")
        })?;
        let r = run.keep(run_graph_check(g, 3, &opts).map_err(|e| format!("{name}: {e}"))?);
        if (r.decision == json!("yes")) != is_topologically_2connected(g) {
            mismatches.push(name.clone());
        }
    }
    ensure(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
    Ok(format!("{} graphs, 0 mismatches", corpus.len()))
}

fn check_never_four(run: &mut Run) -> Outcome {
    let opts = SacOptions::default();
    let corpus = corpus();
    for (name, g) in &corpus {
        let r = run.keep(run_graph_check(g, 4, &opts).map_err(|e| format!("{name}: {e}"))?);
        ensure(r.decision == json!("no"), || format!("{name} decided {}", r.decision))?;
        ensure(r.refutation.is_some(), || format!("{name} has no refutation"))?;
        ensure(verify_report(&r).map_err(|e| e.to_string())?, || {
            format!("{name} refutation fails replay")
        })?;
    }
    Ok(format!("{} graphs refuted and replayed", corpus.len()))
}

fn check_examples(run: &mut Run) -> Outcome {
    let mut seen = Vec::new();
    for (name, want) in [("triod", 2), ("figure8", 2), ("cycle(4)", 3), ("theta", 3)] {
        let g = named_graph(name).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let r = run.keep(run_graph_number(&g, false, &SacOptions::default()).map_err(|e| e.to_string())?);
        let took = t.elapsed();
        ensure(r.decision == json!(want), || format!("{name} gave {}", r.decision))?;
        ensure(took <= Duration::from_secs(1), || format!("{name} took {took:?}"))?;
        let slow = run.keep(run_graph_number(&g, true, &SacOptions::default()).map_err(|e| e.to_string())?);
        ensure(slow.decision == json!(want), || {
            format!("{name} slow search gave {}", slow.decision)
        })?;
        seen.push(format!("{name}={want}"));
    }
    Ok(seen.join(" "))
}

/// Vertex cut sets of size one or two, in id order.
fn small_cutsets(g: &Multigraph) -> Vec<BTreeSet<String>> {
    let ix = g.to_indexed();
    let n = ix.len();
    let mut out = Vec::new();
    let mut consider = |vs: &[usize]| {
        let mut removed = vec![false; n];
        vs.iter().for_each(|&v| removed[v] = true);
        if ix.components_without(&removed).len() >= 2 {
            out.push(vs.iter().map(|&v| ix.id(v).to_owned()).collect());
        }
    };
    for a in 0..n {
        consider(&[a]);
        for b in a + 1..n {
            consider(&[a, b]);
        }
    }
    out
}

fn check_cutsets(run: &mut Run) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut pairs = 0;
    let mut oracle_checked = 0;
    while pairs < CUTSET_PAIRS {
        let v = rng.gen_range(4..=8);
        let e = rng.gen_range(v - 1..=v + 3);
        let req = if rng.gen_bool(0.5) {
            Requirement::TwoConnected
        } else {
            Requirement::Connected
        };
        let Ok(g) = random_graph(rng.gen(), v, e, req) else {
            continue;
        };
        let cuts = small_cutsets(&g);
        let Some(f) = cuts.choose(&mut rng) else { continue };
        let r = run.keep(run_graph_refute(&g, f).map_err(|e| e.to_string())?);
        let Some(Refutation::Placement { placement, .. }) = &r.refutation else {
            return Err(format!("no placement for cut set {f:?}"));
        };
        ensure(placement.len() == f.len() + 2, || "placement size".into())?;
        ensure(
            placement_is_unroutable(&g, placement).map_err(|e| e.to_string())?,
            || format!("cut set {f:?} gave a routable placement"),
        )?;
        let (host, terms) = realize_placement(&g, placement).map_err(|e| e.to_string())?;
        let hx = host.to_indexed();
        if hx.len() <= ORACLE_LIMIT {
            let q = OrderedQuery::from_ids(&hx, &terms).map_err(|e| e.to_string())?;
            ensure(
                !brute_route_oracle(&q).map_err(|e| e.to_string())?.is_routable(),
                || format!("oracle routes cut set {f:?}"),
            )?;
            oracle_checked += 1;
        }
        pairs += 1;
    }
    Ok(format!(
        "{pairs} pairs unroutable, {oracle_checked} also by the brute-force oracle"
    ))
}

fn check_tetrix(run: &mut Run) -> Outcome {
    let t = parse_tuple(4, "w:.:1:2,c3,c2,w:.:1:3").map_err(|e| e.to_string())?;
    for m in [1, 2] {
        let p = TrixParams::new(4, m).map_err(|e| e.to_string())?;
        let r = run.keep(run_trix_route(&p, &t, None).map_err(|e| e.to_string())?);
        ensure(r.decision == json!("unroutable"), || {
            format!("level {m} gave {}", r.decision)
        })?;
        let g = trix_graph(&p).map_err(|e| e.to_string())?;
        ensure(!g.route_full(&t).map_err(|e| e.to_string())?.is_routable(), || {
            format!("full cell graph routes at level {m}")
        })?;
    }
    Ok("unroutable at levels 1 and 2".into())
}

fn search_opts(max_level: usize, symmetry: bool) -> SearchOptions {
    SearchOptions {
        max_level,
        symmetry,
        ..SearchOptions::default()
    }
}

fn check_three_sac(run: &mut Run) -> Outcome {
    let mut counts = Vec::new();
    for n_dim in [3, 4, 5] {
        for m in [1, 2] {
            let p = TrixParams::new(n_dim, m).map_err(|e| e.to_string())?;
            let r = run.keep(run_trix_search(&p, 3, &search_opts(m, true)).map_err(|e| e.to_string())?);
            ensure(r.decision == json!("exhausted") && r.refutation.is_none(), || {
                format!("N={n_dim} m={m} gave {}", r.decision)
            })?;
            counts.push(format!("N={n_dim},m={m}:{}", r.stats.tuples_checked.unwrap_or(0)));
        }
    }
    Ok(format!("canonical 3-tuples all routable [{}]", counts.join(" ")))
}

fn check_five_trix(run: &mut Run) -> Outcome {
    let p = TrixParams::new(5, 1).map_err(|e| e.to_string())?;
    let five = run.keep(run_trix_search(&p, 5, &search_opts(1, true)).map_err(|e| e.to_string())?);
    ensure(five.decision == json!("exhausted"), || {
        format!("n=5 gave {}", five.decision)
    })?;
    // Without symmetry reduction every ordered 5-tuple of the 15 level-1
    // vertices is routed.
    let all = run_trix_search(&p, 5, &search_opts(1, false)).map_err(|e| e.to_string())?;
    let ordered: u64 = (11..=15).product();
    ensure(all.decision == json!("exhausted"), || {
        format!("unreduced n=5 gave {}", all.decision)
    })?;
    ensure(all.stats.tuples_checked == Some(ordered), || {
        format!("unreduced run checked {:?} of {ordered}", all.stats.tuples_checked)
    })?;
    let six = run.keep(run_trix_search(&p, 6, &search_opts(2, true)).map_err(|e| e.to_string())?);
    ensure(six.decision == json!("refuted"), || {
        format!("n=6 gave {}", six.decision)
    })?;
    let Some(Refutation::TrixTuple { level, tuple }) = &six.refutation else {
        return Err("n=6 has no tuple".into());
    };
    ensure(*level <= 2, || format!("refuted at level {level}"))?;
    ensure(verify_report(&six).map_err(|e| e.to_string())?, || {
        "n=6 refutation fails replay".into()
    })?;
    Ok(format!(
        "n=5 exhausted ({} canonical, {ordered} ordered); n=6 refuted at level {level} by ({})",
        five.stats.tuples_checked.unwrap_or(0),
        tuple
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    ))
}

fn check_gasket(run: &mut Run) -> Outcome {
    let p = TrixParams::new(3, 1).map_err(|e| e.to_string())?;
    let r = run.keep(run_trix_search(&p, 4, &search_opts(2, true)).map_err(|e| e.to_string())?);
    ensure(r.decision == json!("refuted"), || format!("gave {}", r.decision))?;
    let Some(Refutation::TrixTuple { level, tuple }) = &r.refutation else {
        return Err("no tuple".into());
    };
    ensure(*level <= 2, || format!("refuted at level {level}"))?;
    ensure(verify_report(&r).map_err(|e| e.to_string())?, || {
        "refutation fails replay".into()
    })?;
    Ok(format!(
        "refuted at level {level} by ({})",
        tuple
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    ))
}

fn check_gluing(run: &mut Run) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let v = rng.gen_range(3..=5);
        let e = rng.gen_range(v..=v + 2);
        if let Ok(g) = random_graph(rng.gen(), v, e, Requirement::TwoConnected) {
            return g;
        }
    };
    for i in 0..GLUED_PAIRS {
        let (left, right) = (draw(&mut rng), draw(&mut rng));
        let pair = (
            format!("v{}", rng.gen_range(0..left.vertex_count())),
            format!("v{}", rng.gen_range(0..right.vertex_count())),
        );
        let g = glue(&GlueSpec {
            left,
            right,
            pairs: vec![pair],
        })
        .map_err(|e| e.to_string())?;
        let fast = run.keep(run_graph_number(&g, false, &SacOptions::default()).map_err(|e| e.to_string())?);
        let slow = run.keep(run_graph_number(&g, true, &SacOptions::default()).map_err(|e| e.to_string())?);
        ensure(fast.decision == json!(2) && slow.decision == json!(2), || {
            format!("pair {i}: characterization {} search {}", fast.decision, slow.decision)
        })?;
    }
    Ok(format!("{GLUED_PAIRS} glued pairs have number 2 both ways"))
}

fn check_oracle(_: &mut Run) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let mut routable = 0;
    for i in 0..ORACLE_INSTANCES {
        let v = rng.gen_range(2..=8);
        let e = rng.gen_range(0..=v * (v - 1) / 2);
        let g = random_graph(rng.gen(), v, e, Requirement::None).map_err(|e| e.to_string())?;
        let ix = g.to_indexed();
        let mut vs: Vec<usize> = (0..v).collect();
        vs.shuffle(&mut rng);
        vs.truncate(rng.gen_range(2..=v.min(4)));
        let q = OrderedQuery::new(&ix, vs.clone()).map_err(|e| e.to_string())?;
        let a = route_ordered(&q);
        let b = brute_route_oracle(&q).map_err(|e| e.to_string())?;
        ensure(a.decision == b.decision, || format!("instance {i}: {vs:?} disagrees"))?;
        if let Some(w) = &a.witness {
            ensure(verify_route(&q, w), || format!("instance {i}: bad witness"))?;
            routable += 1;
        }
    }
    Ok(format!("{ORACLE_INSTANCES} instances agree ({routable} routable)"))
}

fn random_tuple(rng: &mut ChaCha8Rng, n_dim: usize, m: usize, max_len: usize) -> TrixTuple {
    let g = trix_graph(&TrixParams::new(n_dim, m).expect("valid shape")).expect("within budget");
    let vs = g.vertices();
    let len = rng.gen_range(2..=max_len.min(vs.len()));
    TrixTuple::new(vs.choose_multiple(rng, len).cloned().collect()).expect("distinct entries")
}

fn check_invariance(_: &mut Run) -> Outcome {
    // Level invariance is checked on whole cell graphs, where the answer
    // does not lean on the quotient router.
    let level_shapes = [(3, 1, 6), (3, 2, 6), (3, 3, 6), (4, 1, 6), (5, 1, 5), (6, 1, 6)];
    let sym_shapes = [
        (3, 3, 6),
        (4, 1, 6),
        (4, 2, 6),
        (5, 1, 6),
        (5, 2, 4),
        (6, 1, 6),
        (7, 1, 6),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut unroutable = 0;
    let graphs: Vec<_> = level_shapes
        .iter()
        .map(|&(n, m, _)| {
            let coarse = trix_graph(&TrixParams::new(n, m).expect("valid shape")).expect("within budget");
            let fine = trix_graph(&TrixParams::new(n, m + 1).expect("valid shape")).expect("within budget");
            (coarse, fine)
        })
        .collect();
    let (mut decided, mut skipped) = (0, 0);
    let mut i = 0;
    while decided < INVARIANCE_TUPLES {
        ensure(i < 2 * INVARIANCE_TUPLES, || {
            format!("only {decided} tuples decided within the node budget")
        })?;
        let k = i % level_shapes.len();
        i += 1;
        let (n, m, len) = level_shapes[k];
        let t = random_tuple(&mut rng, n, m, len);
        let (coarse, fine) = &graphs[k];
        let a = coarse.route_full_limited(&t, Some(FULL_GRAPH_NODES));
        let b = fine.route_full_limited(&t, Some(FULL_GRAPH_NODES));
        let (a, b) = match (a, b) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(SacError::Budget { .. }), _) | (_, Err(SacError::Budget { .. })) => {
                skipped += 1;
                continue;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e.to_string()),
        };
        ensure(a.decision == b.decision, || {
            format!("level invariance fails for N={n} m={m} ({t:?})")
        })?;
        unroutable += usize::from(!a.is_routable());
        decided += 1;
    }
    let mut sym_unroutable = 0;
    for i in 0..INVARIANCE_TUPLES {
        let (n, m, len) = sym_shapes[i % sym_shapes.len()];
        let t = random_tuple(&mut rng, n, m, len);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let p = TrixParams::new(n, m).map_err(|e| e.to_string())?;
        let a = trix_route(&p, &t).map_err(|e| e.to_string())?;
        let b = trix_route(&p, &t.permuted(&perm)).map_err(|e| e.to_string())?;
        ensure(a.result.decision == b.result.decision, || {
            format!("symmetry invariance fails for N={n} m={m} ({t:?}, {perm:?})")
        })?;
        sym_unroutable += usize::from(!a.result.is_routable());
    }
    Ok(format!(
        "level: {decided} tuples ({unroutable} unroutable, {skipped} over the node budget skipped); symmetry: {INVARIANCE_TUPLES} tuples ({sym_unroutable} unroutable)"
    ))
}

fn check_replay(run: &mut Run) -> Outcome {
    let mut bad = Vec::new();
    for (i, r) in run.reports.iter().enumerate() {
        let back = SacReport::from_json(&r.to_json()).map_err(|e| e.to_string())?;
        if back != *r || !verify_report(r).map_err(|e| e.to_string())? {
            bad.push(i);
        }
    }
    ensure(!run.reports.is_empty(), || "no reports collected".into())?;
    ensure(bad.is_empty(), || format!("reports failing replay: {bad:?}"))?;
    Ok(format!("{} reports replayed", run.reports.len()))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut run = Run::default();
    run.criterion(1, "three-sac iff 2-connected", secs(300), check_corpus);
    run.criterion(2, "no graph is four-sac", secs(600), check_never_four);
    run.criterion(3, "named examples", secs(60), check_examples);
    run.criterion(4, "cut-set refutations", secs(120), check_cutsets);
    run.criterion(5, "tetrix tuple unroutable", secs(10), check_tetrix);
    run.criterion(6, "trixes three-sac at vertex level", secs(900), check_three_sac);
    run.criterion(7, "5-trix profile", secs(7200), check_five_trix);
    run.criterion(8, "3-trix not four-sac", secs(60), check_gasket);
    run.criterion(9, "gluing gives two", secs(300), check_gluing);
    run.criterion(10, "router matches brute force", secs(600), check_oracle);
    run.criterion(11, "level and symmetry invariance", secs(900), check_invariance);
    run.criterion(12, "certificate replay", secs(900), check_replay);
    if run.failed == 0 {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria fail", run.failed);
        ExitCode::FAILURE
    }
}
