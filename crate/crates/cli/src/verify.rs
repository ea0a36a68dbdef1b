//! `verify`: structural checks on emitted files — decomposition validity,
//! path validity, and full re-derivation of a generated instance's claims.
//!
//! `lemma` re-runs the generator from the parameters and seed recorded in
//! `meta.txt`, fails if any recorded value differs from the re-derivation
//! (tampering, version drift), and then checks the instance's witness and —
//! when `--path` is given — an arbitrary path against the instance's bounds
//! and decoders.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Subcommand;

use longpath_core::graph::{Graph, PathWitness};
use longpath_core::instances::{
    decode_insdel, decode_undirected, gen_dlp, gen_insdel_reduction, gen_slp,
    gen_undirected_reduction, insdel_bound_holds, longest_cycle, slp_exact_lp, slp_graph_lp,
    undirected_bound_holds, verify_induced_planted, verify_trimmed_path, InsDelInstance, RsGraph,
    UndirInstance,
};
use longpath_core::stream::EventStream;

use crate::meta::{bit_groups_string, bits_string, perm_string, MetaMap};

#[derive(Subcommand, Debug)]
pub enum VerifyKind {
    /// Check an induced-matching decomposition file.
    Rs {
        /// Instance directory (uses its rs.txt) or a decomposition file.
        #[arg(long)]
        instance: PathBuf,
    },
    /// Validate a path file against an instance's graph.
    Path {
        /// Instance directory (uses its graph.txt) or a graph file.
        #[arg(long)]
        instance: PathBuf,
        /// Path file: one line of space-separated vertex ids.
        #[arg(long)]
        path: PathBuf,
    },
    /// Re-derive a generated instance from meta.txt and check its claims.
    Lemma {
        /// Instance directory holding meta.txt and the emitted files.
        #[arg(long)]
        instance: PathBuf,
        /// Optional path file to put through the instance's bounds.
        #[arg(long)]
        path: Option<PathBuf>,
    },
}

pub fn verify(kind: &VerifyKind) -> Result<()> {
    match kind {
        VerifyKind::Rs { instance } => verify_rs(instance),
        VerifyKind::Path { instance, path } => verify_path(instance, path),
        VerifyKind::Lemma { instance, path } => verify_lemma(instance, path.as_deref()),
    }
}

/// A directory argument names the conventional file inside it; anything
/// else is used as the file itself.
fn resolve(instance: &Path, name: &str) -> PathBuf {
    if instance.is_dir() {
        instance.join(name)
    } else {
        instance.to_path_buf()
    }
}

fn verify_rs(instance: &Path) -> Result<()> {
    let file = resolve(instance, "rs.txt");
    let rs = RsGraph::read_file(&file).with_context(|| format!("reading {}", file.display()))?;
    let (r, t) = rs
        .verify()
        .with_context(|| format!("{} is not an induced-matching decomposition", file.display()))?;
    println!("ok: decomposition side={} r={r} t={t}", rs.side);
    Ok(())
}

fn verify_path(instance: &Path, path: &Path) -> Result<()> {
    let gfile = resolve(instance, "graph.txt");
    let g = Graph::read_file(&gfile).with_context(|| format!("reading {}", gfile.display()))?;
    let w =
        PathWitness::read_file(path).with_context(|| format!("reading {}", path.display()))?;
    let len = g
        .validate_path(&w)
        .map_err(|e| anyhow!("not a path of {}: {e}", gfile.display()))?;
    println!("ok: path of length {len} in {}", gfile.display());
    Ok(())
}

fn verify_lemma(instance: &Path, extra: Option<&Path>) -> Result<()> {
    if !instance.is_dir() {
        bail!("--instance must be a generated instance directory");
    }
    let meta = MetaMap::read_file(&instance.join("meta.txt"))?;
    let kind = meta.get("kind")?.to_string();
    let seed: u64 = meta.parse("seed")?;
    match kind.as_str() {
        "slp" => lemma_slp(instance, &meta, seed, extra),
        "dlp" => lemma_dlp(instance, &meta, seed, extra),
        "undir-reduction" => lemma_undir(instance, &meta, seed, extra),
        "insdel-reduction" => lemma_insdel(instance, &meta, seed, extra),
        other => bail!("kind `{other}` has no lemma checks (plain graph family)"),
    }
}

fn read_graph(dir: &Path) -> Result<Graph> {
    let p = dir.join("graph.txt");
    Graph::read_file(&p).with_context(|| format!("reading {}", p.display()))
}

fn read_stream(dir: &Path) -> Result<EventStream> {
    let p = dir.join("stream.txt");
    EventStream::read_file(&p).with_context(|| format!("reading {}", p.display()))
}

fn read_witness(dir: &Path) -> Result<PathWitness> {
    let p = dir.join("witness.txt");
    PathWitness::read_file(&p).with_context(|| format!("reading {}", p.display()))
}

fn read_extra(path: &Path) -> Result<PathWitness> {
    PathWitness::read_file(path).with_context(|| format!("reading {}", path.display()))
}

fn graphs_equal(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.is_directed() == b.is_directed() && a.edges() == b.edges()
}

/// The stored graph, stored stream, and stream replay must all agree with
/// the re-derived instance.
fn check_emitted_files(dir: &Path, g: &Graph, stream: &EventStream) -> Result<()> {
    let stored_graph = read_graph(dir)?;
    if !graphs_equal(&stored_graph, g) {
        bail!("graph.txt does not match the re-derived instance graph");
    }
    println!("ok: graph.txt matches the re-derived instance");

    let stored_stream = read_stream(dir)?;
    if stored_stream.n != stream.n
        || stored_stream.directed != stream.directed
        || stored_stream.events != stream.events
    {
        bail!("stream.txt does not match the re-derived event sequence");
    }
    let applied = stored_stream.apply().context("replaying stream.txt")?;
    if !graphs_equal(&applied, g) {
        bail!("replaying stream.txt does not rebuild the instance graph");
    }
    println!("ok: stream.txt replays to the instance graph");
    Ok(())
}

fn validated_len(g: &Graph, w: &PathWitness, what: &str) -> Result<usize> {
    g.validate_path(w)
        .map_err(|e| anyhow!("{what} is not a path of the instance graph: {e}"))
}

fn lemma_slp(dir: &Path, meta: &MetaMap, seed: u64, extra: Option<&Path>) -> Result<()> {
    let r: usize = meta.parse("r")?;
    let inst = gen_slp(r, seed);
    meta.expect_eq("sigma", &perm_string(&inst.sigma))?;
    meta.expect_eq("coins", &bits_string(&inst.coins))?;
    check_emitted_files(dir, &inst.graph, &inst.stream())?;

    let w = read_witness(dir)?;
    let len = validated_len(&inst.graph, &w, "witness.txt")?;
    let lc = longest_cycle(&inst.sigma);
    let graph_value = slp_graph_lp(&inst);
    if len != graph_value {
        bail!("witness length {len} differs from the graph optimum {graph_value}");
    }
    meta.expect_eq("witness_len", &len.to_string())?;
    meta.expect_eq("exact_value", &slp_exact_lp(&inst).to_string())?;
    println!(
        "ok: witness walks the longest cycle, length {len} = 2*{lc} (merged value {})",
        slp_exact_lp(&inst)
    );

    if let Some(p) = extra {
        let path = read_extra(p)?;
        let plen = validated_len(&inst.graph, &path, "the provided path")?;
        if plen > graph_value {
            bail!("provided path has length {plen}, above the exact optimum {graph_value}");
        }
        println!("ok: provided path has length {plen} <= exact optimum {graph_value}");
    }
    Ok(())
}

fn lemma_dlp(dir: &Path, meta: &MetaMap, seed: u64, extra: Option<&Path>) -> Result<()> {
    let rs_path = dir.join("rs.txt");
    let rs = RsGraph::read_file(&rs_path)
        .with_context(|| format!("reading {}", rs_path.display()))?;
    let inst = gen_dlp(&rs, seed)?;
    meta.expect_eq("choice", &inst.choice.to_string())?;
    meta.expect_eq("rho", &perm_string(&inst.rho))?;
    meta.expect_eq("coins", &bit_groups_string(&inst.coins))?;
    check_emitted_files(dir, &inst.graph, &inst.stream())?;

    let w = read_witness(dir)?;
    let len = validated_len(&inst.graph, &w, "witness.txt")?;
    let lc = longest_cycle(&inst.rho);
    let promised = (2 * lc).saturating_sub(1);
    if len != promised {
        bail!("witness length {len} differs from the cycle value {promised}");
    }
    if len >= 2 {
        verify_trimmed_path(&inst, &w)
            .map_err(|e| anyhow!("witness violates matching confinement: {e}"))?;
    }
    println!("ok: witness walks the longest return cycle, length {len} = 2*{lc}-1");

    if let Some(p) = extra {
        let path = read_extra(p)?;
        let plen = validated_len(&inst.graph, &path, "the provided path")?;
        if plen < 2 {
            println!("ok: provided path has length {plen}, below the confinement lemma's scope");
        } else {
            verify_trimmed_path(&inst, &path)
                .map_err(|e| anyhow!("provided path violates matching confinement: {e}"))?;
            println!("ok: provided path of length {plen} stays inside the chosen matching");
        }
    }
    Ok(())
}

fn report_decoded(what: &str, decoded: Option<bool>) {
    match decoded {
        Some(b) => println!("ok: {what} decodes bit {}", b as u8),
        None => println!("ok: {what} yields no decision"),
    }
}

fn lemma_undir(dir: &Path, meta: &MetaMap, seed: u64, extra: Option<&Path>) -> Result<()> {
    let rs_path = dir.join("rs.txt");
    let rs = RsGraph::read_file(&rs_path)
        .with_context(|| format!("reading {}", rs_path.display()))?;
    let ell: usize = meta.parse("ell")?;
    let x = meta.bits("x")?;
    let j: usize = meta.parse("j")?;
    let inst: UndirInstance = gen_undirected_reduction(&rs, &x, j, ell, seed)?;
    meta.expect_eq("y", &bits_string(&inst.y))?;
    meta.expect_eq("pi", &perm_string(&inst.pi))?;
    meta.expect_eq("rho", &perm_string(&inst.rho))?;
    meta.expect_eq("i_star", &inst.i_star.to_string())?;
    meta.expect_eq("j_star", &inst.j_star.to_string())?;
    check_emitted_files(dir, &inst.graph, &inst.stream())?;

    let w = read_witness(dir)?;
    let len = validated_len(&inst.graph, &w, "witness.txt")?;
    let promised = inst.p_path.len() + 1 + inst.r_len();
    if len != promised {
        bail!("witness length {len}, construction promises {promised}");
    }
    if !undirected_bound_holds(&inst, &w) {
        bail!("witness violates the segment-budget bound");
    }
    let bit = x[j];
    if decode_undirected(&inst, &w) != Some(bit) {
        bail!("witness fails to decode the planted bit x[{j}] = {}", bit as u8);
    }
    println!("ok: witness has the promised length {len} and decodes x[{j}] = {}", bit as u8);

    if let Some(p) = extra {
        let path = read_extra(p)?;
        let plen = validated_len(&inst.graph, &path, "the provided path")?;
        if !undirected_bound_holds(&inst, &path) {
            bail!("provided path violates the segment-budget bound");
        }
        println!("ok: provided path of length {plen} respects the segment budget");
        report_decoded("provided path", decode_undirected(&inst, &path));
    }
    Ok(())
}

fn lemma_insdel(dir: &Path, meta: &MetaMap, seed: u64, extra: Option<&Path>) -> Result<()> {
    let n: usize = meta.parse("n")?;
    let x = meta.bits("x")?;
    let j: usize = meta.parse("j")?;
    let inst: InsDelInstance = gen_insdel_reduction(&x, n, j, seed)?;
    meta.expect_eq("bits", &inst.bits.to_string())?;
    meta.expect_eq("y", &bits_string(&inst.y))?;
    meta.expect_eq("z", &bits_string(&inst.z))?;
    meta.expect_eq("i_star", &inst.i_star.to_string())?;
    meta.expect_eq("j_star", &inst.j_star.to_string())?;
    meta.expect_eq("root", &inst.root.to_string())?;
    check_emitted_files(dir, &inst.graph, &inst.stream)?;
    if !verify_induced_planted(&inst) {
        bail!("deletions do not leave exactly the planted diagonal structure");
    }
    println!("ok: surviving edges form the planted induced structure");

    let w = read_witness(dir)?;
    let len = validated_len(&inst.graph, &w, "witness.txt")?;
    let floor = 2 * (n - inst.root) - 1;
    if len < floor {
        bail!("witness length {len} is below the guaranteed {floor}");
    }
    meta.expect_eq("witness_len", &len.to_string())?;
    let bit = x[j];
    if decode_insdel(&inst, &w) != Some(bit) {
        bail!("witness fails to decode the planted bit x[{j}] = {}", bit as u8);
    }
    println!("ok: witness has length {len} >= {floor} and decodes x[{j}] = {}", bit as u8);

    if let Some(p) = extra {
        let path = read_extra(p)?;
        let plen = validated_len(&inst.graph, &path, "the provided path")?;
        if !insdel_bound_holds(&inst, &path) {
            bail!("provided path violates the length bound");
        }
        println!("ok: provided path of length {plen} respects the length bound");
        match decode_insdel(&inst, &path) {
            Some(b) if b != bit => {
                bail!("provided path decodes {}, but x[{j}] = {}", b as u8, bit as u8)
            }
            decoded => report_decoded("provided path", decoded),
        }
    }
    Ok(())
}
