use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gburn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gburn")).args(args).output().expect("spawn gburn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn files_with_ext(dir: &Path, ext: &str) -> Vec<String> {
    let mut out: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .map(|p| p.to_string_lossy().into_owned())
        .collect();
    out.sort();
    out
}

#[test]
fn generate_then_burn_then_stats() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst");
    let inst_s = inst.to_str().unwrap();
    let o = gburn(&["generate", "--family", "theta", "--count", "3", "--n-min", "30", "--n-max", "60", "--seed", "5", "--out", inst_s]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let edges = files_with_ext(&inst, "edges");
    assert_eq!(edges.len(), 3);
    assert_eq!(files_with_ext(&inst, "json").len(), 3);

    let csv = dir.path().join("r.csv");
    let mut args = vec!["burn", "--no-timing", "--out", csv.to_str().unwrap()];
    args.extend(edges.iter().map(String::as_str));
    let o = gburn(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), graph_burning::io::CSV_HEADER);
    // Center heuristics run once, the rest once per rep: 6 rows per instance.
    assert_eq!(lines.count(), 3 * 6);
    assert!(text.contains(",theta,"));

    let o = gburn(&["stats", csv.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("best-of-all"));
}

#[test]
fn generate_zero_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty");
    let o = gburn(&["generate", "--family", "cluster", "--count", "0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let count = fs::read_dir(&out).map(|d| d.count()).unwrap_or(0);
    assert_eq!(count, 0);
}

#[test]
fn exact_on_dimacs_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("tiny.clq");
    fs::write(&f, "c star plus tail\np edge 6 5\ne 1 2\ne 1 3\ne 1 4\ne 4 5\ne 5 6\n").unwrap();
    let o = gburn(&["exact", "--format", "jsonl", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(rec["instance"], "tiny");
    assert_eq!(rec["length"], 3);
    assert_eq!(rec["bound_name"], "degree-lower");
    assert!(rec["gap"].is_null());
}

#[test]
fn bad_input_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.clq");
    fs::write(&f, "p edge 3 5\ne 1 2\n").unwrap();
    let o = gburn(&["burn", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = gburn(&["burn", "--heuristics", "nope", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = gburn(&["burn", dir.path().join("missing.edges").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_is_reproducible_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let out = dir.path().join(format!("w{workers}"));
        let o = gburn(&[
            "bench", "--family", "theta", "--count", "8", "--n-min", "40", "--n-max", "200", "--seed", "11", "--reps", "2",
            "--workers", workers, "--no-timing", "--keep-instances", "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(out.join("summary.json").exists());
        assert_eq!(files_with_ext(&out.join("instances"), "edges").len(), 8);
        outputs.push(fs::read_to_string(out.join("results.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}
