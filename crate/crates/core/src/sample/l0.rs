//! Support sampling for turnstile streams via linear ℓ0 sketches.
//!
//! Each sketch bank keeps a stack of cells; an edge is hashed to a geometric
//! level and added to every cell up to that level, so deeper cells hold
//! geometrically thinned sub-streams.  A cell stores the signed count, the
//! key-weighted sum, and a polynomial fingerprint mod `2^61 - 1`; a cell whose
//! contents have collapsed to a single distinct edge can be decoded exactly,
//! and the fingerprint rejects spurious decodes.  Querying a bank inspects its
//! deepest nonzero cell: that cell holds exactly the edges of maximal level,
//! so a successful decode returns an edge that is uniform over the support by
//! exchangeability of the level assignment.  Banks are replicated to drive the
//! failure probability below a caller-chosen `delta`.
//!
//! [`sample_support_turnstile`] scales this to k-subset sampling: each edge is
//! routed to one of `4k` single-bank sketches (so most classes collapse to few
//! edges and decode), a fixed band of always-on banks covers tiny supports,
//! and the union of decoded edges is shuffled down to `k`.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::rng;
use crate::sample::{EdgeSample, SampleError};
use crate::stream::{EventStream, StreamEvent, StreamOp};

/// Fingerprint modulus: the Mersenne prime `2^61 - 1`.
pub const P61: u64 = (1 << 61) - 1;

fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P61 {
        s - P61
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P61 - b
    }
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P61 as u128) as u64
}

fn pow_mod(base: u64, mut exp: u64) -> u64 {
    let mut result = 1u64;
    let mut b = base % P61;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b);
        }
        b = mul_mod(b, b);
        exp >>= 1;
    }
    result
}

/// Banks needed so that `(2/5)^banks <= delta`; each bank fails to decode
/// with probability at most 2/5 on any support.
fn bank_count(delta: f64) -> usize {
    let d = delta.clamp(1e-12, 0.5);
    ((1.0 / d).ln() / 2.5f64.ln()).ceil().max(1.0) as usize
}

/// Levels deep enough that no two of the `n^2` possible keys are expected to
/// tie at the bottom.
fn level_count(n: usize) -> usize {
    let keys = ((n as u128) * (n as u128)).max(2);
    let bits = 128 - (keys - 1).leading_zeros() as usize;
    (bits + 1).min(64)
}

/// One linear cell: signed multiplicity count, key-weighted sum, and a
/// polynomial fingerprint `sum_e mult(e) * base^key(e) mod 2^61-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Cell {
    count: i64,
    id_sum: i128,
    fp: u64,
}

/// Decode a cell that putatively holds one distinct edge; `None` when the
/// divisibility or fingerprint check rejects it.
fn recover_one(cell: &Cell, n: usize, base: u64) -> Option<u64> {
    if cell.count <= 0 {
        return None;
    }
    let c = cell.count as i128;
    if cell.id_sum <= 0 || cell.id_sum % c != 0 {
        return None;
    }
    let key = cell.id_sum / c;
    if key >= (n as i128) * (n as i128) {
        return None;
    }
    let key = key as u64;
    let expect = mul_mod(cell.count as u64 % P61, pow_mod(base, key));
    if expect == cell.fp {
        Some(key)
    } else {
        None
    }
}

/// Split a key back into an edge, rejecting keys no valid edge maps to.
fn decode_key(key: u64, n: usize, directed: bool) -> Option<(usize, usize)> {
    let u = key as usize / n;
    let v = key as usize % n;
    if u == v || u >= n || (!directed && u > v) {
        return None;
    }
    Some((u, v))
}

enum BankOutcome {
    Empty,
    Recovered(u64),
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct LevelBank {
    seed: u64,
    cells: Vec<Cell>,
}

impl LevelBank {
    fn new(seed: u64) -> Self {
        LevelBank {
            seed,
            cells: Vec::new(),
        }
    }

    fn level_of(&self, key_mix: u64, levels: usize) -> usize {
        let h = rng::mix64(self.seed ^ key_mix);
        (h.trailing_zeros() as usize).min(levels - 1)
    }

    fn update(&mut self, key: u64, key_mix: u64, term: u64, delta: i64, levels: usize) {
        let level = self.level_of(key_mix, levels);
        if self.cells.len() <= level {
            self.cells.resize(level + 1, Cell::default());
        }
        let mag = mul_mod(delta.unsigned_abs() % P61, term);
        for cell in &mut self.cells[..=level] {
            cell.count += delta;
            cell.id_sum += delta as i128 * key as i128;
            cell.fp = if delta >= 0 {
                add_mod(cell.fp, mag)
            } else {
                sub_mod(cell.fp, mag)
            };
        }
    }

    /// Inspect the deepest nonzero cell only: its contents are the edges of
    /// maximal level, so decoding it (when it is 1-sparse) yields a uniform
    /// member of the support.
    fn query(&self, n: usize, base: u64) -> BankOutcome {
        for cell in self.cells.iter().rev() {
            if *cell != Cell::default() {
                return match recover_one(cell, n, base) {
                    Some(key) => BankOutcome::Recovered(key),
                    None => BankOutcome::Failed,
                };
            }
        }
        BankOutcome::Empty
    }

    fn is_zero(&self) -> bool {
        self.cells.iter().all(|c| *c == Cell::default())
    }
}

/// Outcome of querying an [`L0Sketch`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L0Query {
    /// A member of the current support, uniform over it.
    Edge((usize, usize)),
    /// Every bank is identically zero: the support is empty.
    EmptySupport,
    /// The support is nonempty but no bank decoded; happens with probability
    /// at most `delta`.
    Fail,
}

/// A bank-replicated ℓ0-sampling sketch over the edges of one graph stream.
///
/// The sketch is linear in the stream: applying the same multiset of events
/// in any order produces the identical state, and an insert/delete pair
/// cancels exactly.
#[derive(Debug, Clone)]
pub struct L0Sketch {
    n: usize,
    directed: bool,
    levels: usize,
    base: u64,
    banks: Vec<LevelBank>,
}

impl L0Sketch {
    /// Sketch for streams over `n` vertices that answers queries with failure
    /// probability at most `delta`.
    pub fn new(n: usize, directed: bool, delta: f64, seed: u64) -> Self {
        Self::with_banks(n, directed, bank_count(delta), seed)
    }

    fn with_banks(n: usize, directed: bool, banks: usize, seed: u64) -> Self {
        let base = rng::component_rng(seed, "l0-base", 0).random_range(2..P61);
        L0Sketch {
            n,
            directed,
            levels: level_count(n),
            base,
            banks: (0..banks)
                .map(|i| LevelBank::new(rng::derive_seed(seed, "l0-bank", i as u64)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of allocated cells across all banks.
    pub fn cell_count(&self) -> usize {
        self.banks.iter().map(|b| b.cells.len()).sum()
    }

    /// Whether every cell is identically zero (as after cancelling streams).
    pub fn is_zero(&self) -> bool {
        self.banks.iter().all(|b| b.is_zero())
    }

    /// Add `delta` copies of the edge `(u, v)`; negative `delta` removes.
    pub fn update_edge(&mut self, u: usize, v: usize, delta: i64) {
        let (u, v) = if !self.directed && u > v { (v, u) } else { (u, v) };
        debug_assert!(u < self.n && v < self.n && u != v);
        let key = (u * self.n + v) as u64;
        let key_mix = rng::mix64(key);
        let term = pow_mod(self.base, key);
        let levels = self.levels;
        for bank in &mut self.banks {
            bank.update(key, key_mix, term, delta, levels);
        }
    }

    pub fn update_event(&mut self, ev: &StreamEvent) {
        let delta = match ev.op {
            StreamOp::Insert => 1,
            StreamOp::Delete => -1,
        };
        self.update_edge(ev.edge.0, ev.edge.1, delta);
    }

    pub fn ingest(&mut self, stream: &EventStream) {
        for ev in &stream.events {
            self.update_event(ev);
        }
    }

    /// Draw one edge uniformly from the current support.
    pub fn query(&self) -> L0Query {
        let mut any_nonempty = false;
        for bank in &self.banks {
            match bank.query(self.n, self.base) {
                BankOutcome::Recovered(key) => {
                    if let Some(edge) = decode_key(key, self.n, self.directed) {
                        return L0Query::Edge(edge);
                    }
                    any_nonempty = true;
                }
                BankOutcome::Failed => any_nonempty = true,
                BankOutcome::Empty => {}
            }
        }
        if any_nonempty {
            L0Query::Fail
        } else {
            L0Query::EmptySupport
        }
    }
}

/// Sample up to `k` distinct edges, uniformly over the support of a turnstile
/// stream, in one pass.
///
/// Every event is routed by its edge key to one of `4k` single-bank sketch
/// classes and also fed to a fixed band of always-on banks.  After the pass,
/// every decodable bank contributes one support edge; the deduplicated union
/// is shuffled and truncated to `k`.  Supports well below the class count are
/// recovered whole, and supports comfortably above `k` yield a full `k`
/// distinct edges; `delta` sizes the always-on band.  Streams whose running
/// multiplicity goes negative, or whose final multiplicities are negative,
/// are rejected.
pub fn sample_support_turnstile(
    stream: &EventStream,
    k: usize,
    seed: u64,
    delta: f64,
) -> Result<EdgeSample, SampleError> {
    sample_support_turnstile_stats(stream, k, seed, delta).map(|(sample, _)| sample)
}

/// As [`sample_support_turnstile`], also reporting the number of sketch cells
/// allocated during the pass.
pub(crate) fn sample_support_turnstile_stats(
    stream: &EventStream,
    k: usize,
    seed: u64,
    delta: f64,
) -> Result<(EdgeSample, usize), SampleError> {
    stream.multiplicities()?;
    let n = stream.n;
    let directed = stream.directed;
    let levels = level_count(n);
    let base = rng::component_rng(seed, "l0-base", 0).random_range(2..P61);
    let route_seed = rng::derive_seed(seed, "l0-route", 0);
    let classes = 4usize.saturating_mul(k);
    let mut class_banks: Vec<LevelBank> = (0..classes)
        .map(|i| LevelBank::new(rng::derive_seed(seed, "l0-class", i as u64)))
        .collect();
    let global_count = bank_count(delta).max(64);
    let mut global_banks: Vec<LevelBank> = (0..global_count)
        .map(|i| LevelBank::new(rng::derive_seed(seed, "l0-global", i as u64)))
        .collect();

    for ev in &stream.events {
        let (mut u, mut v) = ev.edge;
        if !directed && u > v {
            std::mem::swap(&mut u, &mut v);
        }
        let delta_i = match ev.op {
            StreamOp::Insert => 1i64,
            StreamOp::Delete => -1,
        };
        let key = (u * n + v) as u64;
        let key_mix = rng::mix64(key);
        let term = pow_mod(base, key);
        if classes > 0 {
            let class = ((rng::mix64(route_seed ^ key_mix) as u128 * classes as u128) >> 64) as usize;
            class_banks[class].update(key, key_mix, term, delta_i, levels);
        }
        for bank in &mut global_banks {
            bank.update(key, key_mix, term, delta_i, levels);
        }
    }

    let cells = class_banks
        .iter()
        .chain(global_banks.iter())
        .map(|b| b.cells.len())
        .sum();
    let mut found: HashSet<(usize, usize)> = HashSet::new();
    for bank in class_banks.iter().chain(global_banks.iter()) {
        if let BankOutcome::Recovered(key) = bank.query(n, base) {
            if let Some(edge) = decode_key(key, n, directed) {
                found.insert(edge);
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = found.into_iter().collect();
    edges.sort_unstable();
    edges.shuffle(&mut rng::component_rng(seed, "l0-select", 0));
    edges.truncate(k);
    Ok((EdgeSample::new(n, directed, edges, k), cells))
}
