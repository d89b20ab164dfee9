//! Replay harness: seeds an initial set, pushes an update stream through an
//! engine, writes one CSV row per update and optionally cross-checks the
//! maintained set against the oracle.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::framework::{Engine, Maintainer, Simple};
use crate::graph::{DynamicGraph, GraphError, OpKind, Strictness, UpdateOp, VertexId};
use crate::oneswap::OneSwap;
use crate::oracle::{self, Certificate, OracleError};
use crate::state::InitError;
use crate::twoswap::TwoSwap;

pub const CSV_HEADER: &str = "step,op,is_size,swaps,elapsed_ns,checks";

/// Largest graph on which periodic oracle checks are allowed by default.
pub const DEFAULT_CHECK_CAP: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineKind {
    Simple,
    OneSwap,
    #[default]
    TwoSwap,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Simple => "simple",
            EngineKind::OneSwap => "oneswap",
            EngineKind::TwoSwap => "twoswap",
        }
    }

    pub fn max_level(self) -> usize {
        match self {
            EngineKind::Simple => 0,
            EngineKind::OneSwap => 1,
            EngineKind::TwoSwap => 2,
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "simple" => Ok(EngineKind::Simple),
            "oneswap" => Ok(EngineKind::OneSwap),
            "twoswap" => Ok(EngineKind::TwoSwap),
            other => Err(format!("unknown engine {other:?} (expected simple, oneswap or twoswap)")),
        }
    }
}

/// How the initial independent set is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum InitPolicy {
    /// Ascending-id greedy maximal independent set.
    #[default]
    Greedy,
    /// The given set, extended to maximality in ascending id order.
    Given(Vec<VertexId>),
    /// Start from the edgeless graph with every vertex in `M` and insert
    /// all edges in sorted order before the replay starts.
    Prefix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub engine: EngineKind,
    pub init: InitPolicy,
    /// Run the oracle every this many steps; 0 disables checks.
    pub check_every: usize,
    pub check_cap: usize,
    pub strictness: Strictness,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            engine: EngineKind::default(),
            init: InitPolicy::default(),
            check_every: 0,
            check_cap: DEFAULT_CHECK_CAP,
            strictness: Strictness::Strict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsRecord {
    pub step: usize,
    pub op: OpKind,
    pub is_size: usize,
    pub swaps: usize,
    pub elapsed_ns: u128,
    pub checks: Option<bool>,
}

impl MetricsRecord {
    pub fn csv_row(&self) -> String {
        let checks = self.checks.map_or(String::new(), |c| c.to_string());
        format!(
            "{},{},{},{},{},{}",
            self.step,
            self.op.mnemonic(),
            self.is_size,
            self.swaps,
            self.elapsed_ns,
            checks
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSummary {
    pub engine: &'static str,
    pub steps: usize,
    pub skipped: usize,
    pub initial_size: usize,
    pub stabilize_swaps: usize,
    pub total_swaps: usize,
    pub final_size: usize,
    pub final_vertices: usize,
    pub checks_run: usize,
    pub mean_ns: f64,
    pub p50_ns: u128,
    pub p99_ns: u128,
    pub max_ns: u128,
    pub total_ns: u128,
    /// Largest number of stored candidates seen after any step.
    pub peak_candidates: usize,
    /// Largest stored list per level at the end of the run.
    pub final_peak_lists: Vec<usize>,
}

impl RunSummary {
    pub fn updates_per_second(&self) -> f64 {
        if self.total_ns == 0 {
            return f64::INFINITY;
        }
        self.steps as f64 * 1e9 / self.total_ns as f64
    }
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "engine={} steps={} skipped={} swaps={} stabilize_swaps={} initial_is={} final_is={} n={} \
             checks={} mean_ns={:.0} p50_ns={} p99_ns={} max_ns={} peak_candidates={} peak_lists={:?}",
            self.engine,
            self.steps,
            self.skipped,
            self.total_swaps,
            self.stabilize_swaps,
            self.initial_size,
            self.final_size,
            self.final_vertices,
            self.checks_run,
            self.mean_ns,
            self.p50_ns,
            self.p99_ns,
            self.max_ns,
            self.peak_candidates,
            self.final_peak_lists
        )
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("initial set rejected: {0}")]
    Init(#[from] InitError),
    #[error("step {step}: {source}")]
    Update { step: usize, source: GraphError },
    #[error("step {step}: invariant violation: {detail}")]
    Violation { step: usize, detail: String },
    #[error("oracle checks need n <= {cap}, graph has {n} vertices")]
    CheckTooLarge { n: usize, cap: usize },
    #[error("oracle failed at step {step}: {source}")]
    Oracle { step: usize, source: OracleError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Runs `maximal + swap-free(k)` certification on the current state.
pub fn check_state(g: &DynamicGraph, m: &[VertexId], k: usize) -> Result<(), String> {
    oracle::certify_maximal(g, m).map_err(|e| e.to_string())?;
    match oracle::certify_swap_free(g, m, k).map_err(|e| e.to_string())? {
        Certificate::SwapFree => Ok(()),
        Certificate::Swap(w) => Err(format!(
            "{}-swap available: out {:?}, in {:?}",
            w.level(),
            w.swap_out,
            w.swap_in
        )),
    }
}

fn build<E: Engine>(graph: &DynamicGraph, init: &InitPolicy, engine: E) -> Result<Maintainer<E>, RunError> {
    Ok(match init {
        InitPolicy::Greedy => Maintainer::new(graph.clone(), &[], engine)?,
        InitPolicy::Given(set) => Maintainer::new(graph.clone(), set, engine)?,
        InitPolicy::Prefix => {
            let vertices = graph.sorted_vertices();
            let mut m = Maintainer::new(DynamicGraph::edgeless(vertices.iter().copied()), &vertices, engine)?;
            for (step, (u, v)) in graph.sorted_edges().into_iter().enumerate() {
                m.update(&UpdateOp::AddEdge(u, v))
                    .map_err(|source| RunError::Update { step, source })?;
            }
            m
        }
    })
}

fn replay_engine<E: Engine>(
    graph: &DynamicGraph,
    ops: &[UpdateOp],
    cfg: &RunConfig,
    engine: E,
    csv: &mut dyn Write,
) -> Result<RunSummary, RunError> {
    let k = engine.max_level();
    let mut m = build(graph, &cfg.init, engine)?.with_strictness(cfg.strictness);
    let initial_size = m.set_size();
    let stabilize_swaps = m.stabilize();
    let mut summary = RunSummary {
        engine: m.engine().name(),
        initial_size,
        stabilize_swaps,
        ..RunSummary::default()
    };
    writeln!(csv, "{CSV_HEADER}")?;
    let mut latencies = Vec::with_capacity(ops.len());
    for (i, op) in ops.iter().enumerate() {
        let step = i + 1;
        let start = Instant::now();
        let report = m.update(op).map_err(|source| RunError::Update { step, source })?;
        let elapsed_ns = start.elapsed().as_nanos();
        latencies.push(elapsed_ns);
        if !report.applied {
            summary.skipped += 1;
        }
        summary.peak_candidates = summary.peak_candidates.max(m.state().hierarchy().len());
        let checks = if cfg.check_every > 0 && step % cfg.check_every == 0 {
            let n = m.graph().num_vertices();
            if n > cfg.check_cap {
                return Err(RunError::CheckTooLarge { n, cap: cfg.check_cap });
            }
            summary.checks_run += 1;
            Some(check_state(m.graph(), &m.members(), k))
        } else {
            None
        };
        let record = MetricsRecord {
            step,
            op: op.kind(),
            is_size: m.set_size(),
            swaps: report.swaps,
            elapsed_ns,
            checks: checks.as_ref().map(|c| c.is_ok()),
        };
        writeln!(csv, "{}", record.csv_row())?;
        if let Some(Err(detail)) = checks {
            return Err(RunError::Violation { step, detail });
        }
    }
    summary.steps = ops.len();
    summary.total_swaps = m.total_swaps() - stabilize_swaps;
    summary.final_size = m.set_size();
    summary.final_vertices = m.graph().num_vertices();
    summary.final_peak_lists = m.state().hierarchy().peak_list_sizes();
    summary.total_ns = latencies.iter().sum();
    if !latencies.is_empty() {
        summary.mean_ns = summary.total_ns as f64 / latencies.len() as f64;
        latencies.sort_unstable();
        let pct = |p: f64| latencies[((latencies.len() - 1) as f64 * p).round() as usize];
        summary.p50_ns = pct(0.5);
        summary.p99_ns = pct(0.99);
        summary.max_ns = *latencies.last().expect("nonempty");
    }
    Ok(summary)
}

/// Replays `ops` on `graph` under `cfg`, writing CSV rows to `csv`.
///
/// The initial set is stabilized before the first op, so every row reports
/// a set with no `k`-swaps for the chosen engine.
pub fn replay(
    graph: &DynamicGraph,
    ops: &[UpdateOp],
    cfg: &RunConfig,
    csv: &mut dyn Write,
) -> Result<RunSummary, RunError> {
    if cfg.check_every > 0 && graph.num_vertices() > cfg.check_cap {
        return Err(RunError::CheckTooLarge { n: graph.num_vertices(), cap: cfg.check_cap });
    }
    match cfg.engine {
        EngineKind::Simple => replay_engine(graph, ops, cfg, Simple, csv),
        EngineKind::OneSwap => replay_engine(graph, ops, cfg, OneSwap, csv),
        EngineKind::TwoSwap => replay_engine(graph, ops, cfg, TwoSwap, csv),
    }
}

/// Exact distance of `M` from the independence number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub alpha: usize,
    pub size: usize,
    pub gap: usize,
    pub gamma: f64,
}

impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} is_size={} gap={} gamma={:.4}", self.alpha, self.size, self.gap, self.gamma)
    }
}

pub fn gap_report(g: &DynamicGraph, m: &[VertexId], cap: usize) -> Result<GapReport, OracleError> {
    if let Some((u, v)) = g.sorted_edges().into_iter().find(|&(u, v)| m.contains(&u) && m.contains(&v)) {
        return Err(OracleError::NotIndependent(u, v));
    }
    let (alpha, _) = oracle::brute_force_alpha(g, cap)?;
    let size = m.len();
    let gamma = if size == 0 { 1.0 } else { alpha as f64 / size as f64 };
    Ok(GapReport { alpha, size, gap: alpha - size, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_op_stream, gen_subdivided_clique, gen_subdivided_hypercube, OpMix};

    fn strip_elapsed(csv: &[u8]) -> Vec<String> {
        String::from_utf8_lossy(csv)
            .lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(4);
                f.join(",")
            })
            .collect()
    }

    #[test]
    fn engine_names_round_trip() {
        for e in [EngineKind::Simple, EngineKind::OneSwap, EngineKind::TwoSwap] {
            assert_eq!(e.name().parse::<EngineKind>().unwrap(), e);
        }
        assert!("threeswap".parse::<EngineKind>().is_err());
    }

    #[test]
    fn fixed_point_replay() {
        let (g, seed) = gen_subdivided_clique(4);
        let cfg = RunConfig { init: InitPolicy::Given(seed), ..RunConfig::default() };
        let mut out = Vec::new();
        let s = replay(&g, &[], &cfg, &mut out).unwrap();
        assert_eq!((s.stabilize_swaps, s.total_swaps, s.final_size), (0, 0, 4));
        assert_eq!(String::from_utf8(out).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn checked_replay_and_determinism() {
        let g = crate::generators::gen_plr(&crate::generators::PlrParams::new(20f64.ln(), 2.0, 1)).unwrap();
        let ops = gen_op_stream(&g, 200, &OpMix::default(), 2).unwrap();
        let cfg = RunConfig { check_every: 1, ..RunConfig::default() };
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let s = replay(&g, &ops, &cfg, &mut a).unwrap();
        replay(&g, &ops, &cfg, &mut b).unwrap();
        assert_eq!(s.checks_run, 200);
        assert_eq!(strip_elapsed(&a), strip_elapsed(&b));
        assert_eq!(String::from_utf8(a).unwrap().lines().count(), 201);
    }

    #[test]
    fn prefix_init_is_one_swap_free() {
        let (g, _) = gen_subdivided_clique(5);
        let cfg = RunConfig { engine: EngineKind::OneSwap, init: InitPolicy::Prefix, ..RunConfig::default() };
        let s = replay(&g, &[], &cfg, &mut io::sink()).unwrap();
        assert_eq!(s.stabilize_swaps, 0);
        assert!(s.final_size >= 5);
    }

    #[test]
    fn check_cap_enforced() {
        let (g, _) = gen_subdivided_hypercube(4);
        let cfg = RunConfig { check_every: 1, check_cap: 10, ..RunConfig::default() };
        assert!(matches!(
            replay(&g, &[], &cfg, &mut io::sink()),
            Err(RunError::CheckTooLarge { n: 48, cap: 10 })
        ));
    }

    #[test]
    fn gap_on_worst_case_families() {
        let (g, seed) = gen_subdivided_clique(4);
        let r = gap_report(&g, &seed, 64).unwrap();
        assert_eq!((r.alpha, r.gap, r.gamma), (6, 2, 1.5));
        let (g, seed) = gen_subdivided_hypercube(4);
        let r = gap_report(&g, &seed, 64).unwrap();
        assert_eq!((r.alpha, r.gap, r.gamma), (32, 16, 2.0));
        let (alpha, best) = oracle::brute_force_alpha(&g, 64).unwrap();
        let r = gap_report(&g, &best, 64).unwrap();
        assert_eq!((r.alpha, r.gap, r.gamma), (alpha, 0, 1.0));
    }
}
