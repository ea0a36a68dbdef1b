//! End-to-end runners: one pass over an edge stream, then path extraction.
//!
//! [`run_semi_streaming`] picks the sampler the stream model allows —
//! reservoir sampling for insertion-only streams, ℓ0 sketches once deletions
//! appear — draws about `10·n·ln n` edges, and extracts a path from the
//! sampled subgraph.  [`hybrid_run`] additionally keeps an exact edge store
//! until a space budget is exceeded, solving small streams exactly and
//! falling back to the sampled pipeline on large ones.  Every returned path
//! is re-validated against the full stream before it is reported.

use std::collections::{HashMap, HashSet};

use rand::seq::IndexedRandom;

use crate::graph::{Graph, PathWitness};
use crate::path::greedy::canon_edge;
use crate::path::{
    exact_longest_path, greedy_extend, greedy_extend_bidirectional, peel_core, PathError,
};
use crate::rng;
use crate::sample::{
    recommended_sample_size, reservoir_sample, sample_support_turnstile_stats, EdgeSample,
};
use crate::stream::{EventStream, StreamError, StreamOp};

/// Default cap on exact-search tree nodes (see
/// [`exact_longest_path`]).
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Random greedy starts tried per extraction.
const EXTRACT_STARTS: usize = 10;

/// Default query failure probability allotted to the sketch sampler.
pub const SKETCH_DELTA: f64 = 0.01;

/// Multiplier in the default sample size `ceil(C · n · ln n)`.
const SAMPLE_CONSTANT: f64 = 10.0;

/// How a path is extracted from the sampled subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractMode {
    /// Exhaustive search on the sampled subgraph; only sensible when small.
    Exact,
    /// Peel the *full input graph* to its degree core `U`, then greedy-walk
    /// the sampled edges inside `U` from random core starts.  This realizes
    /// the min-degree path guarantee and therefore needs the input graph as
    /// an oracle; it is a verification device, not a streaming capability.
    CoreVerify,
    /// Greedy extension from random starts on the sample alone.
    Heuristic,
}

impl ExtractMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtractMode::Exact => "exact",
            ExtractMode::CoreVerify => "core-verify",
            ExtractMode::Heuristic => "heuristic",
        }
    }
}

impl std::str::FromStr for ExtractMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(ExtractMode::Exact),
            "core-verify" => Ok(ExtractMode::CoreVerify),
            "heuristic" => Ok(ExtractMode::Heuristic),
            other => Err(format!(
                "unknown extraction mode {other:?} (expected exact, core-verify, or heuristic)"
            )),
        }
    }
}

/// How a report's path was produced end to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// Sampled pipeline with exact extraction.
    Exact,
    /// Sampled pipeline with core-peeling verification extraction.
    CoreVerify,
    /// Sampled pipeline with greedy-only extraction.
    Heuristic,
    /// The hybrid's exact store held every distinct edge.
    HybridExact,
    /// The hybrid overflowed and reported the sampled pipeline's result.
    HybridSampled,
}

impl RunMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunMode::Exact => "exact",
            RunMode::CoreVerify => "core-verify",
            RunMode::Heuristic => "heuristic",
            RunMode::HybridExact => "hybrid-exact",
            RunMode::HybridSampled => "hybrid-sampled",
        }
    }
}

impl From<ExtractMode> for RunMode {
    fn from(mode: ExtractMode) -> Self {
        match mode {
            ExtractMode::Exact => RunMode::Exact,
            ExtractMode::CoreVerify => RunMode::CoreVerify,
            ExtractMode::Heuristic => RunMode::Heuristic,
        }
    }
}

/// Which storage structure the pass kept its edges in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerKind {
    /// Uniform reservoir over an insertion-only stream.
    Reservoir,
    /// ℓ0-sketch support sampling over an insertion-deletion stream.
    L0Sketch,
    /// The hybrid's exact edge store.
    ExactStore,
}

impl SamplerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SamplerKind::Reservoir => "reservoir",
            SamplerKind::L0Sketch => "l0",
            SamplerKind::ExactStore => "exact-store",
        }
    }
}

/// Caller's sampler selection for [`run_semi_streaming_with_sampler`].
///
/// Unlike [`SamplerKind`] (what a finished run *used*), this is what the
/// caller *asks for*; the hybrid's exact store is not a choice here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplerChoice {
    /// Reservoir on insertion-only streams, sketch once deletions appear.
    #[default]
    Auto,
    /// Force the reservoir; fails on streams that delete edges.
    Reservoir,
    /// Force the ℓ0 sketch even on insertion-only streams.
    L0Sketch,
}

impl SamplerChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            SamplerChoice::Auto => "auto",
            SamplerChoice::Reservoir => "reservoir",
            SamplerChoice::L0Sketch => "l0",
        }
    }
}

impl std::str::FromStr for SamplerChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(SamplerChoice::Auto),
            "reservoir" => Ok(SamplerChoice::Reservoir),
            "l0" => Ok(SamplerChoice::L0Sketch),
            other => Err(format!(
                "unknown sampler {other:?} (expected auto, reservoir, or l0)"
            )),
        }
    }
}

/// Everything a runner learned in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub path: PathWitness,
    pub mode: RunMode,
    pub sampler: SamplerKind,
    pub n: usize,
    /// Edges the sampler aimed for (or the hybrid's space budget).
    pub sample_target: usize,
    /// Distinct edges actually retained.
    pub sample_achieved: usize,
    /// Peak distinct edges held at once.
    pub stored_edges: usize,
    /// Sketch cells allocated (zero unless the sketch sampler ran).
    pub sketch_cells: usize,
    /// The retained edge set itself (sample or final exact store), sorted;
    /// lets callers serialize the sample as an edge list.
    pub sample_edges: Vec<(usize, usize)>,
}

impl RunReport {
    /// One `key=value` line per field; the path is space-separated vertices.
    pub fn to_kv(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        writeln!(s, "mode={}", self.mode.as_str()).unwrap();
        writeln!(s, "sampler={}", self.sampler.as_str()).unwrap();
        writeln!(s, "n={}", self.n).unwrap();
        writeln!(s, "path_len={}", self.path.len()).unwrap();
        writeln!(s, "sample_target={}", self.sample_target).unwrap();
        writeln!(s, "sample_achieved={}", self.sample_achieved).unwrap();
        writeln!(s, "stored_edges={}", self.stored_edges).unwrap();
        writeln!(s, "sketch_cells={}", self.sketch_cells).unwrap();
        let verts: Vec<String> = self.path.vertices.iter().map(|v| v.to_string()).collect();
        writeln!(s, "path={}", verts.join(" ")).unwrap();
        s
    }
}

/// Extract a path from a sampled subgraph.
///
/// The witness is a valid path of the subgraph spanned by the sample (and
/// hence of any supergraph).  [`ExtractMode::CoreVerify`] peels `oracle` —
/// the full input graph — and walks only sampled edges inside the core; the
/// other modes ignore `oracle`.  `budget` only applies to
/// [`ExtractMode::Exact`].
pub fn extract_path_from_sample(
    sample: &EdgeSample,
    mode: ExtractMode,
    oracle: Option<&Graph>,
    seed: u64,
    budget: u64,
) -> Result<PathWitness, PathError> {
    if mode == ExtractMode::CoreVerify && oracle.is_none() {
        return Err(PathError::MissingOracle);
    }
    let gf = Graph::new(sample.n, sample.directed, &sample.edges)?;
    if gf.n() == 0 {
        return Ok(PathWitness::empty());
    }
    if gf.m() == 0 {
        return Ok(PathWitness::new(vec![0]));
    }
    match mode {
        ExtractMode::Exact => exact_longest_path(&gf, budget),
        ExtractMode::CoreVerify => {
            let oracle = oracle.expect("checked above");
            let core = peel_core(oracle)?.core;
            let in_core = {
                let mut flags = vec![false; oracle.n()];
                for &v in &core {
                    flags[v] = true;
                }
                flags
            };
            // Sampled edges that are also edges of the core-induced subgraph.
            let allowed: HashSet<(usize, usize)> = gf
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| {
                    u < in_core.len()
                        && v < in_core.len()
                        && in_core[u]
                        && in_core[v]
                        && oracle.has_edge(u, v)
                })
                .collect();
            best_greedy(&gf, &core, Some(&allowed), seed, false)
        }
        ExtractMode::Heuristic => {
            let all: Vec<usize> = (0..gf.n()).collect();
            best_greedy(&gf, &all, None, seed, true)
        }
    }
}

/// Greedy walks from a handful of random starts; returns the longest.
/// `reroot` additionally tries extending the start-side endpoint.
fn best_greedy(
    gf: &Graph,
    candidates: &[usize],
    allowed: Option<&HashSet<(usize, usize)>>,
    seed: u64,
    reroot: bool,
) -> Result<PathWitness, PathError> {
    let mut rng = rng::component_rng(seed, "extract-starts", 0);
    let starts: Vec<usize> = candidates
        .choose_multiple(&mut rng, EXTRACT_STARTS)
        .copied()
        .collect();
    let mut best: Option<PathWitness> = None;
    for &s in &starts {
        let forward = greedy_extend(gf, allowed, s, None)?;
        if best.as_ref().is_none_or(|b| forward.len() > b.len()) {
            best = Some(forward);
        }
        if reroot {
            let both = greedy_extend_bidirectional(gf, allowed, s, None)?;
            if best.as_ref().is_none_or(|b| both.len() > b.len()) {
                best = Some(both);
            }
        }
    }
    Ok(best.expect("at least one start candidate"))
}

/// One-pass pipeline: sample the stream, extract, validate.
///
/// `k` defaults to `ceil(10 · n · ln n)`.  Insertion-only streams use the
/// reservoir sampler; streams with deletions use the ℓ0-sketch sampler.  The
/// returned path is validated against the graph the stream builds, which
/// also serves as the peeling oracle for [`ExtractMode::CoreVerify`].
pub fn run_semi_streaming(
    stream: &EventStream,
    k: Option<usize>,
    mode: ExtractMode,
    seed: u64,
    budget: u64,
) -> Result<RunReport, PathError> {
    run_semi_streaming_with_sampler(
        stream,
        k,
        mode,
        SamplerChoice::Auto,
        SKETCH_DELTA,
        seed,
        budget,
    )
}

/// [`run_semi_streaming`] with the sampler and sketch failure probability
/// pinned by the caller.
///
/// Forcing [`SamplerChoice::Reservoir`] on a stream that deletes edges fails
/// with the reservoir's own deletion error; forcing
/// [`SamplerChoice::L0Sketch`] on an insertion-only stream is legal and
/// exercises the sketch at reservoir-friendly inputs.  `delta` only matters
/// when the sketch runs.
pub fn run_semi_streaming_with_sampler(
    stream: &EventStream,
    k: Option<usize>,
    mode: ExtractMode,
    choice: SamplerChoice,
    delta: f64,
    seed: u64,
    budget: u64,
) -> Result<RunReport, PathError> {
    let k = k.unwrap_or_else(|| recommended_sample_size(stream.n, SAMPLE_CONSTANT));
    let sample_seed = rng::derive_seed(seed, "run-sample", 0);
    let use_sketch = match choice {
        SamplerChoice::Auto => stream.has_deletions(),
        SamplerChoice::Reservoir => false,
        SamplerChoice::L0Sketch => true,
    };
    let (sample, sampler, cells) = if use_sketch {
        let (s, cells) = sample_support_turnstile_stats(stream, k, sample_seed, delta)?;
        (s, SamplerKind::L0Sketch, cells)
    } else {
        let s = reservoir_sample(stream, k, sample_seed)?;
        (s, SamplerKind::Reservoir, 0)
    };
    let g = stream.apply()?;
    let oracle = (mode == ExtractMode::CoreVerify).then_some(&g);
    let path = extract_path_from_sample(
        &sample,
        mode,
        oracle,
        rng::derive_seed(seed, "run-extract", 0),
        budget,
    )?;
    g.validate_path(&path).map_err(PathError::Witness)?;
    Ok(RunReport {
        path,
        mode: mode.into(),
        sampler,
        n: stream.n,
        sample_target: sample.target,
        sample_achieved: sample.achieved,
        stored_edges: sample.achieved,
        sketch_cells: cells,
        sample_edges: sample.edges,
    })
}

/// Space-bounded run: keep every distinct edge until more than `space`
/// would be held at once.  Streams that fit are solved exactly, deletions
/// included; larger streams fall back to the sampled pipeline with
/// `sampled_mode` and the default sample size.
///
/// The fallback re-reads the stream, which stands in for the single pass a
/// deployment would interleave (callers should pick `space` at least the
/// default sample size so both structures fit).
pub fn hybrid_run(
    stream: &EventStream,
    space: usize,
    sampled_mode: ExtractMode,
    seed: u64,
    budget: u64,
) -> Result<RunReport, PathError> {
    let mut store: HashMap<(usize, usize), u64> = HashMap::new();
    let mut overflowed = false;
    let mut peak = 0usize;
    for (index, ev) in stream.events.iter().enumerate() {
        if overflowed {
            break;
        }
        let (u, v) = ev.edge;
        let key = canon_edge(stream.directed, u, v);
        match ev.op {
            StreamOp::Insert => {
                *store.entry(key).or_insert(0) += 1;
                if store.len() > space {
                    overflowed = true;
                    store.clear();
                } else {
                    peak = peak.max(store.len());
                }
            }
            StreamOp::Delete => match store.get_mut(&key) {
                Some(c) => {
                    *c -= 1;
                    if *c == 0 {
                        store.remove(&key);
                    }
                }
                None => {
                    return Err(PathError::Stream(StreamError::NegativeMultiplicity {
                        index,
                        u: key.0,
                        v: key.1,
                    }))
                }
            },
        }
    }

    if overflowed {
        let mut report = run_semi_streaming(stream, None, sampled_mode, seed, budget)?;
        report.mode = RunMode::HybridSampled;
        report.stored_edges = report.stored_edges.max(peak);
        return Ok(report);
    }

    let mut edges: Vec<(usize, usize)> = store.keys().copied().collect();
    edges.sort_unstable();
    let final_count = edges.len();
    let g = Graph::new(stream.n, stream.directed, &edges)?;
    let path = exact_longest_path(&g, budget)?;
    let check = stream.apply()?;
    check.validate_path(&path).map_err(PathError::Witness)?;
    Ok(RunReport {
        path,
        mode: RunMode::HybridExact,
        sampler: SamplerKind::ExactStore,
        n: stream.n,
        sample_target: space,
        sample_achieved: final_count,
        stored_edges: peak,
        sketch_cells: 0,
        sample_edges: edges,
    })
}
