//! End-to-end coverage of the `longpath` binary: generate, stream, run,
//! exact, verify, and experiment, chained through real files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_longpath"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawning longpath");
    assert!(
        out.status.success(),
        "longpath {args:?} failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

fn run_raw(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawning longpath")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn kv_value<'a>(kv: &'a str, key: &str) -> &'a str {
    kv.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .unwrap_or_else(|| panic!("missing {key}= in:\n{kv}"))
}

#[test]
fn slp_instance_round_trips_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("slp");
    let inst_s = inst.to_str().unwrap();
    run_ok(&["gen", "slp", "--r", "10", "--seed", "5", "--out", inst_s]);
    for name in ["graph.txt", "stream.txt", "witness.txt", "meta.txt"] {
        assert!(inst.join(name).exists(), "missing {name}");
    }
    run_ok(&["verify", "lemma", "--instance", inst_s]);
    let witness = inst.join("witness.txt");
    run_ok(&[
        "verify",
        "path",
        "--instance",
        inst_s,
        "--path",
        witness.to_str().unwrap(),
    ]);

    // Re-deriving from the seed must notice an edited metadata value.
    let meta_path = inst.join("meta.txt");
    let doctored = fs::read_to_string(&meta_path)
        .unwrap()
        .replace("coins=", "coins=1");
    fs::write(&meta_path, doctored).unwrap();
    let out = run_raw(&["verify", "lemma", "--instance", inst_s]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("coins"), "unexpected stderr: {stderr}");
}

#[test]
fn dlp_instance_verifies_with_its_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("dlp");
    let inst_s = inst.to_str().unwrap();
    run_ok(&[
        "gen", "dlp", "--side", "4", "--r", "3", "--seed", "7", "--out", inst_s,
    ]);
    run_ok(&["verify", "lemma", "--instance", inst_s]);
    let listing = run_ok(&["verify", "rs", "--instance", inst_s]);
    assert!(listing.contains("side=4 r=3 t=1"), "got: {listing}");
}

#[test]
fn undir_instance_honors_explicit_plant() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("undir");
    let inst_s = inst.to_str().unwrap();
    run_ok(&[
        "gen",
        "undir-reduction",
        "--side",
        "3",
        "--r",
        "2",
        "--ell",
        "4",
        "--x",
        "10",
        "--j",
        "0",
        "--seed",
        "9",
        "--out",
        inst_s,
    ]);
    let meta = fs::read_to_string(inst.join("meta.txt")).unwrap();
    assert!(meta.contains("x=10\n"), "meta: {meta}");
    assert!(meta.contains("j=0\n"), "meta: {meta}");
    assert!(meta.contains("decoded=1\n"), "meta: {meta}");
    run_ok(&["verify", "lemma", "--instance", inst_s]);
    run_ok(&["verify", "rs", "--instance", inst_s]);
}

#[test]
fn insdel_instance_verifies_and_rejects_reservoir() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("insdel");
    let inst_s = inst.to_str().unwrap();
    run_ok(&[
        "gen",
        "insdel-reduction",
        "--n",
        "8",
        "--bits",
        "4",
        "--seed",
        "3",
        "--out",
        inst_s,
    ]);
    run_ok(&["verify", "lemma", "--instance", inst_s]);

    // The emitted stream deletes edges, so a forced reservoir must fail.
    let stream = inst.join("stream.txt");
    let out = run_raw(&[
        "run",
        "--in",
        stream.to_str().unwrap(),
        "--sampler",
        "reservoir",
    ]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("insertion-only"),
        "unexpected stderr: {stderr}"
    );

    // The auto sampler switches to the sketch and succeeds.
    let kv = run_ok(&["run", "--in", stream.to_str().unwrap(), "--seed", "1"]);
    assert_eq!(kv_value(&kv, "sampler"), "l0");
}

#[test]
fn graph_stream_run_pipeline_produces_consistent_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name);
    let gdir = d("g");
    run_ok(&[
        "gen", "gnp", "--n", "40", "--p", "0.3", "--seed", "11", "--out",
        gdir.to_str().unwrap(),
    ]);
    let graph = gdir.join("graph.txt");
    let stream = d("s.txt");
    let msg = run_ok(&[
        "stream",
        "--in",
        graph.to_str().unwrap(),
        "--order",
        "random",
        "--seed",
        "4",
        "--out",
        stream.to_str().unwrap(),
    ]);
    assert!(msg.contains("n=40"), "got: {msg}");

    let report = d("rep.txt");
    let path_out = d("p.txt");
    let sample_out = d("samp.txt");
    let kv = run_ok(&[
        "run",
        "--in",
        stream.to_str().unwrap(),
        "--mode",
        "core-verify",
        "--oracle",
        graph.to_str().unwrap(),
        "--seed",
        "2",
        "--report",
        report.to_str().unwrap(),
        "--path-out",
        path_out.to_str().unwrap(),
        "--sample-out",
        sample_out.to_str().unwrap(),
    ]);
    assert_eq!(kv_value(&kv, "mode"), "core-verify");
    assert_eq!(kv_value(&kv, "sampler"), "reservoir");
    assert_eq!(fs::read_to_string(&report).unwrap(), kv);
    run_ok(&[
        "verify",
        "path",
        "--instance",
        graph.to_str().unwrap(),
        "--path",
        path_out.to_str().unwrap(),
    ]);
    let sample_text = fs::read_to_string(&sample_out).unwrap();
    assert!(sample_text.starts_with("# graph directed=0 n=40"));

    // Forcing the sketch and pinning k are reflected in the report.
    let kv = run_ok(&[
        "run",
        "--in",
        stream.to_str().unwrap(),
        "--sampler",
        "l0",
        "--k",
        "17",
        "--seed",
        "2",
    ]);
    assert_eq!(kv_value(&kv, "sampler"), "l0");
    assert_eq!(kv_value(&kv, "sample_target"), "17");

    // A wrong oracle is a hard error.
    let other = d("other");
    run_ok(&[
        "gen", "gnp", "--n", "40", "--p", "0.3", "--seed", "12", "--out",
        other.to_str().unwrap(),
    ]);
    let out = run_raw(&[
        "run",
        "--in",
        stream.to_str().unwrap(),
        "--oracle",
        other.join("graph.txt").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn exact_and_hybrid_find_the_planted_path() {
    let dir = tempfile::tempdir().unwrap();
    let gdir = dir.path().join("pl");
    run_ok(&[
        "gen", "planted", "--n", "12", "--m", "16", "--seed", "8", "--out",
        gdir.to_str().unwrap(),
    ]);
    let graph = gdir.join("graph.txt");
    let out = run_ok(&["exact", "--in", graph.to_str().unwrap()]);
    assert!(out.contains("length=11"), "got: {out}");

    let stream = dir.path().join("s.txt");
    run_ok(&[
        "stream",
        "--in",
        graph.to_str().unwrap(),
        "--out",
        stream.to_str().unwrap(),
    ]);
    let kv = run_ok(&[
        "run",
        "--in",
        stream.to_str().unwrap(),
        "--hybrid-space",
        "1000",
    ]);
    assert_eq!(kv_value(&kv, "mode"), "hybrid-exact");
    assert_eq!(kv_value(&kv, "path_len"), "11");
}

#[test]
fn experiment_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");

    // A clean pass writes trials + header + aggregate rows and exits 0.
    let out = run_raw(&[
        "experiment",
        "--name",
        "dlp-struct",
        "--trials",
        "12",
        "--seed",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 14, "csv:\n{text}");
    assert!(text.starts_with("trial,path_len,bound,ratio,success,space\n"));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("dlp-struct: pass"), "stdout: {stdout}");

    // A threshold miss exits 1 (a starved sample cannot reach the bound).
    let out = run_raw(&[
        "experiment",
        "--name",
        "theorem1",
        "--n",
        "60",
        "--d",
        "20",
        "--trials",
        "2",
        "--seed",
        "1",
        "--sample-constant",
        "0.0001",
    ]);
    assert_eq!(exit_code(&out), 1);

    // Unknown names are usage errors.
    let out = run_raw(&["experiment", "--name", "bogus"]);
    assert_eq!(exit_code(&out), 2);

    // The round-trip demonstration records results but never gates.
    let out = run_raw(&[
        "experiment",
        "--name",
        "index-roundtrip",
        "--n",
        "8",
        "--r",
        "4",
        "--trials",
        "6",
        "--seed",
        "2",
    ]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn env_seed_matches_explicit_seed() {
    let dir = tempfile::tempdir().unwrap();
    let by_env = dir.path().join("env");
    let by_flag = dir.path().join("flag");
    let out = bin()
        .env("LONGPATH_SEED", "5")
        .args(["gen", "slp", "--r", "9", "--out", by_env.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    run_ok(&[
        "gen", "slp", "--r", "9", "--seed", "5", "--out",
        by_flag.to_str().unwrap(),
    ]);
    let env_meta = fs::read_to_string(by_env.join("meta.txt")).unwrap();
    let flag_meta = fs::read_to_string(by_flag.join("meta.txt")).unwrap();
    assert_eq!(env_meta, flag_meta);
}

fn graph_file(dir: &Path, name: &str, n: usize, edges: &[(usize, usize)]) -> String {
    let mut text = format!("# graph directed=0 n={n}\n");
    for (u, v) in edges {
        text.push_str(&format!("{u} {v}\n"));
    }
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_path_rejects_a_non_path() {
    let dir = tempfile::tempdir().unwrap();
    let graph = graph_file(dir.path(), "g.txt", 4, &[(0, 1), (1, 2), (2, 3)]);
    let good = dir.path().join("good.txt");
    fs::write(&good, "0 1 2 3\n").unwrap();
    run_ok(&["verify", "path", "--instance", &graph, "--path", good.to_str().unwrap()]);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 2 1\n").unwrap();
    let out = run_raw(&["verify", "path", "--instance", &graph, "--path", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}
