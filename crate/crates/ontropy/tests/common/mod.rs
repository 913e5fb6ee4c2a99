#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn ontropy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ontropy"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("spawn ontropy")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs `benchmark` on the 50-gene fixture into `out`.
pub fn bench_run(metric: &str, out: &Path, extra: &[&str]) -> Output {
    let obo = fixture("bench.obo");
    let corpus = fixture("bench_annotations.tsv");
    let bits = fixture("bench_bitscores.tsv");
    let conf = fixture("bench.conf");
    let mut args = vec![
        "benchmark",
        "--config",
        path_str(&conf),
        "--obo",
        path_str(&obo),
        "--corpus",
        path_str(&corpus),
        "--bitscores",
        path_str(&bits),
        "--metric",
        metric,
        "--out-dir",
        path_str(out),
    ];
    args.extend_from_slice(extra);
    ontropy(&args)
}
