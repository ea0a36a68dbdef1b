//! `gen`: build a seeded graph or planted instance and emit its files.
//!
//! Every kind writes `graph.txt` and `meta.txt` into `--out`.  The planted
//! instance kinds add `stream.txt` (event order mirrors each construction's
//! one-way communication order) and `witness.txt`; the decomposition-based
//! kinds add `rs.txt`.  The metadata records the full generation parameters,
//! so `verify lemma` can re-derive the instance and check it.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use rand::Rng;

use longpath_core::graph::{Graph, PathWitness};
use longpath_core::instances::{
    decode_insdel, decode_undirected, dlp_witness_path, gen_dlp, gen_insdel_reduction, gen_slp,
    gen_undirected_reduction, longest_cycle, rs_matching, slp_exact_lp, slp_graph_lp,
    slp_witness_path, RsGraph,
};
use longpath_core::rng::component_rng;
use longpath_core::stream::EventStream;
use longpath_core::{gnp, planted_path, random_regular};

use crate::meta::{bit_groups_string, bits_string, parse_bits, perm_string, Meta};

/// Arguments every generator shares.
#[derive(Args, Debug)]
pub struct GenCommon {
    /// Master seed; every emitted file is a pure function of it.
    #[arg(long, env = "LONGPATH_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Directory to write the emitted files into (created if absent).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Directed twin-column instance of a random permutation.
    Slp {
        #[command(flatten)]
        common: GenCommon,
        /// Permutation size.
        #[arg(long, default_value_t = 64)]
        r: usize,
    },
    /// Directed coin-split instance over an induced-matching decomposition.
    Dlp {
        #[command(flatten)]
        common: GenCommon,
        /// Decomposition file to build on (default: disjoint matchings).
        #[arg(long)]
        rs: Option<PathBuf>,
        /// Side size of the default decomposition.
        #[arg(long, default_value_t = 4, conflicts_with = "rs")]
        side: usize,
        /// Matching size of the default decomposition.
        #[arg(long, default_value_t = 3, conflicts_with = "rs")]
        r: usize,
    },
    /// Undirected index-embedding instance (sender edges stream first).
    UndirReduction {
        #[command(flatten)]
        common: GenCommon,
        /// Decomposition file to build on (default: disjoint matchings).
        #[arg(long)]
        rs: Option<PathBuf>,
        /// Side size of the default decomposition.
        #[arg(long, default_value_t = 3, conflicts_with = "rs")]
        side: usize,
        /// Matching size of the default decomposition.
        #[arg(long, default_value_t = 2, conflicts_with = "rs")]
        r: usize,
        /// Subdivision length of each backbone edge.
        #[arg(long, default_value_t = 4)]
        ell: usize,
        /// Sender's bit string, e.g. `0110` (default: seeded random bits).
        #[arg(long)]
        x: Option<String>,
        /// Receiver's queried index (default: seeded random index).
        #[arg(long)]
        j: Option<usize>,
    },
    /// Insertion-deletion index-embedding instance.
    InsdelReduction {
        #[command(flatten)]
        common: GenCommon,
        /// Vertex count of the path gadget.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Planted index length (a perfect square).
        #[arg(long, default_value_t = 4)]
        bits: usize,
        /// Sender's bit string (default: seeded random bits).
        #[arg(long)]
        x: Option<String>,
        /// Receiver's queried index (default: seeded random index).
        #[arg(long)]
        j: Option<usize>,
    },
    /// Binomial random graph G(n, p).
    Gnp {
        #[command(flatten)]
        common: GenCommon,
        /// Vertex count.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Edge probability.
        #[arg(long)]
        p: Option<f64>,
        /// Target average degree, as probability d/(n-1).
        #[arg(long, conflicts_with = "p")]
        d: Option<f64>,
    },
    /// Near-regular graph by stub pairing.
    Regular {
        #[command(flatten)]
        common: GenCommon,
        /// Vertex count (n·d must be even).
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Degree.
        #[arg(long, default_value_t = 6)]
        d: usize,
    },
    /// Connected graph with a planted spanning path.
    Planted {
        #[command(flatten)]
        common: GenCommon,
        /// Vertex count.
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Total edge count, at least n-1 (default: 2·(n-1)).
        #[arg(long)]
        m: Option<usize>,
    },
}

impl GenKind {
    fn common(&self) -> &GenCommon {
        match self {
            GenKind::Slp { common, .. }
            | GenKind::Dlp { common, .. }
            | GenKind::UndirReduction { common, .. }
            | GenKind::InsdelReduction { common, .. }
            | GenKind::Gnp { common, .. }
            | GenKind::Regular { common, .. }
            | GenKind::Planted { common, .. } => common,
        }
    }
}

/// Writes one instance's files into a directory, announcing each.
struct Emitter {
    dir: PathBuf,
}

impl Emitter {
    fn new(dir: &Path) -> Result<Emitter> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Emitter {
            dir: dir.to_path_buf(),
        })
    }

    fn emit(&self, name: &str, write: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
        let path = self.dir.join(name);
        write(&path).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
        Ok(())
    }

    fn graph(&self, g: &Graph) -> Result<()> {
        self.emit("graph.txt", |p| Ok(g.write_file(p)?))
    }

    fn stream(&self, s: &EventStream) -> Result<()> {
        self.emit("stream.txt", |p| Ok(s.write_file(p)?))
    }

    fn witness(&self, w: &PathWitness) -> Result<()> {
        self.emit("witness.txt", |p| Ok(w.write_file(p)?))
    }

    fn rs(&self, rs: &RsGraph) -> Result<()> {
        self.emit("rs.txt", |p| Ok(rs.write_file(p)?))
    }

    fn meta(&self, m: &Meta) -> Result<()> {
        self.emit("meta.txt", |p| m.write_file(p))
    }
}

pub fn generate(kind: &GenKind) -> Result<()> {
    let common = kind.common();
    let emit = Emitter::new(&common.out)?;
    let seed = common.seed;
    match kind {
        GenKind::Slp { r, .. } => emit_slp(&emit, *r, seed),
        GenKind::Dlp { rs, side, r, .. } => {
            let rs = load_rs(rs.as_deref(), *side, *r)?;
            emit_dlp(&emit, &rs, seed)
        }
        GenKind::UndirReduction {
            rs,
            side,
            r,
            ell,
            x,
            j,
            ..
        } => {
            let rs = load_rs(rs.as_deref(), *side, *r)?;
            emit_undir(&emit, &rs, *ell, x.as_deref(), *j, seed)
        }
        GenKind::InsdelReduction {
            n, bits, x, j, ..
        } => emit_insdel(&emit, *n, *bits, x.as_deref(), *j, seed),
        GenKind::Gnp { n, p, d, .. } => emit_gnp(&emit, *n, *p, *d, seed),
        GenKind::Regular { n, d, .. } => emit_regular(&emit, *n, *d, seed),
        GenKind::Planted { n, m, .. } => emit_planted(&emit, *n, *m, seed),
    }
}

fn load_rs(path: Option<&Path>, side: usize, r: usize) -> Result<RsGraph> {
    match path {
        Some(p) => {
            let rs =
                RsGraph::read_file(p).with_context(|| format!("reading {}", p.display()))?;
            rs.verify()
                .with_context(|| format!("{} is not an induced-matching decomposition", p.display()))?;
            Ok(rs)
        }
        None => Ok(rs_matching(side, r)?),
    }
}

/// Resolve `--x`/`--j` against the planted index length: explicit values are
/// validated, absent ones are drawn from the seed.
fn resolve_plant(
    x: Option<&str>,
    j: Option<usize>,
    len: usize,
    seed: u64,
) -> Result<(Vec<bool>, usize)> {
    let x = match x {
        Some(raw) => {
            let bits = parse_bits(raw)?;
            if bits.len() != len {
                bail!("--x has {} bits, the instance needs {len}", bits.len());
            }
            bits
        }
        None => {
            let mut rng = component_rng(seed, "gen-bits", 0);
            (0..len).map(|_| rng.random_bool(0.5)).collect()
        }
    };
    let j = match j {
        Some(j) => {
            if j >= len {
                bail!("--j is {j}, the instance has indices 0..{len}");
            }
            j
        }
        None => component_rng(seed, "gen-index", 0).random_range(0..len),
    };
    Ok((x, j))
}

fn base_meta(kind: &str, seed: u64) -> Meta {
    let mut m = Meta::new();
    m.push("kind", kind);
    m.push("seed", seed);
    m
}

fn emit_slp(emit: &Emitter, r: usize, seed: u64) -> Result<()> {
    let inst = gen_slp(r, seed);
    let witness = slp_witness_path(&inst);
    let mut meta = base_meta("slp", seed);
    meta.push("r", r);
    meta.push("sigma", perm_string(&inst.sigma));
    meta.push("coins", bits_string(&inst.coins));
    meta.push("longest_cycle", longest_cycle(&inst.sigma));
    meta.push("exact_value", slp_exact_lp(&inst));
    meta.push("graph_value", slp_graph_lp(&inst));
    meta.push("witness_len", witness.len());
    emit.graph(&inst.graph)?;
    emit.stream(&inst.stream())?;
    emit.witness(&witness)?;
    emit.meta(&meta)
}

fn emit_dlp(emit: &Emitter, rs: &RsGraph, seed: u64) -> Result<()> {
    let inst = gen_dlp(rs, seed)?;
    let witness = dlp_witness_path(&inst);
    let mut meta = base_meta("dlp", seed);
    meta.push("side", inst.side);
    meta.push("r", rs.r());
    meta.push("t", rs.t());
    meta.push("choice", inst.choice);
    meta.push("rho", perm_string(&inst.rho));
    meta.push("coins", bit_groups_string(&inst.coins));
    meta.push("longest_cycle", longest_cycle(&inst.rho));
    meta.push("witness_len", witness.len());
    emit.graph(&inst.graph)?;
    emit.stream(&inst.stream())?;
    emit.witness(&witness)?;
    emit.rs(rs)?;
    emit.meta(&meta)
}

fn emit_undir(
    emit: &Emitter,
    rs: &RsGraph,
    ell: usize,
    x: Option<&str>,
    j: Option<usize>,
    seed: u64,
) -> Result<()> {
    let (r, t) = rs.verify()?;
    let (x, j) = resolve_plant(x, j, r * t, seed)?;
    let inst = gen_undirected_reduction(rs, &x, j, ell, seed)?;
    let mut meta = base_meta("undir-reduction", seed);
    meta.push("side", inst.side);
    meta.push("r", r);
    meta.push("t", t);
    meta.push("ell", inst.ell);
    meta.push("j", inst.j);
    meta.push("x", bits_string(&inst.x));
    meta.push("y", bits_string(&inst.y));
    meta.push("pi", perm_string(&inst.pi));
    meta.push("rho", perm_string(&inst.rho));
    meta.push("i_star", inst.i_star);
    meta.push("j_star", inst.j_star);
    meta.push("backbone_len", inst.p_path.len());
    meta.push("return_len", inst.r_len());
    meta.push("witness_len", inst.witness.len());
    meta.push("decoded", decode_string(decode_undirected(&inst, &inst.witness)));
    emit.graph(&inst.graph)?;
    emit.stream(&inst.stream())?;
    emit.witness(&inst.witness)?;
    emit.rs(rs)?;
    emit.meta(&meta)
}

fn emit_insdel(
    emit: &Emitter,
    n: usize,
    bits: usize,
    x: Option<&str>,
    j: Option<usize>,
    seed: u64,
) -> Result<()> {
    let (x, j) = resolve_plant(x, j, bits, seed)?;
    let inst = gen_insdel_reduction(&x, n, j, seed)?;
    let mut meta = base_meta("insdel-reduction", seed);
    meta.push("n", inst.n);
    meta.push("bits", inst.bits);
    meta.push("j", inst.j);
    meta.push("x", bits_string(&inst.x));
    meta.push("y", bits_string(&inst.y));
    meta.push("z", bits_string(&inst.z));
    meta.push("i_star", inst.i_star);
    meta.push("j_star", inst.j_star);
    meta.push("root", inst.root);
    meta.push("witness_len", inst.witness.len());
    meta.push("decoded", decode_string(decode_insdel(&inst, &inst.witness)));
    emit.graph(&inst.graph)?;
    emit.stream(&inst.stream)?;
    emit.witness(&inst.witness)?;
    emit.meta(&meta)
}

fn decode_string(bit: Option<bool>) -> &'static str {
    match bit {
        Some(true) => "1",
        Some(false) => "0",
        None => "none",
    }
}

fn emit_gnp(emit: &Emitter, n: usize, p: Option<f64>, d: Option<f64>, seed: u64) -> Result<()> {
    let p = match (p, d) {
        (Some(p), _) => p,
        (None, Some(d)) => {
            if n < 2 {
                bail!("--d needs at least 2 vertices");
            }
            d / (n as f64 - 1.0)
        }
        (None, None) => 0.1,
    };
    let g = gnp(n, p, seed)?;
    let mut meta = base_meta("gnp", seed);
    meta.push("n", n);
    meta.push("p", p);
    meta.push("m", g.m());
    emit.graph(&g)?;
    emit.meta(&meta)
}

fn emit_regular(emit: &Emitter, n: usize, d: usize, seed: u64) -> Result<()> {
    let g = random_regular(n, d, seed)?;
    let mut meta = base_meta("regular", seed);
    meta.push("n", n);
    meta.push("d", d);
    meta.push("m", g.m());
    emit.graph(&g)?;
    emit.meta(&meta)
}

fn emit_planted(emit: &Emitter, n: usize, m: Option<usize>, seed: u64) -> Result<()> {
    let m = m.unwrap_or_else(|| 2 * n.saturating_sub(1));
    let g = planted_path(n, m, seed)?;
    let mut meta = base_meta("planted", seed);
    meta.push("n", n);
    meta.push("m", g.m());
    meta.push("planted_len", n.saturating_sub(1));
    emit.graph(&g)?;
    emit.meta(&meta)
}
