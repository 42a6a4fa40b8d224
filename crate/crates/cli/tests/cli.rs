use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("basis.txt"), "# golden basis\n0 1\n").unwrap();
        std::fs::write(dir.path().join("full.txt"), "N 1\n").unwrap();
        std::fs::write(dir.path().join("seed.txt"), "z 0 1\nx 0 1 2\ny 0 1 2 3 4\n").unwrap();
        Workspace { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_baire"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }

    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.path(name)).unwrap()
    }
}

fn data_rows(csv: &str) -> Vec<Vec<&str>> {
    csv.lines().skip(1).map(|l| l.split(',').collect()).collect()
}

fn assert_ok(out: &Output) {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_sft_golden_run() {
    let ws = Workspace::new();
    let out = ws.run(&["verify-sft", "--basis", "basis.txt", "--word", "0", "--q", "3", "--max-j", "6", "--out", "r.csv"]);
    assert_ok(&out);
    let csv = ws.read("r.csv");
    assert!(csv.starts_with("n,count,ratio_num,ratio_den,ratio_float64,bound_num,bound_den,kind,j,satisfied,pair\n"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[9] == "true"));
    assert!(String::from_utf8_lossy(&out.stdout).contains("8/8 reports satisfied"));
    assert!(ws.read("r.csv.meta").contains("rng_seed = 0"));
}

#[test]
fn identical_flags_give_identical_bytes() {
    let ws = Workspace::new();
    let runs: [&[&str]; 3] = [
        &["verify-sft", "--basis", "basis.txt", "--trials", "4", "--rng-seed", "11"],
        &["verify-dense", "--basis", "basis.txt", "--p", "2", "--g", "1", "--q", "3", "--h", "0", "--trials", "3", "--rng-seed", "5"],
        &["verify-sbt", "--basis", "full.txt", "--seed-config", "seed.txt", "--trials", "3", "--rng-seed", "5"],
    ];
    for args in runs {
        let a = ws.run(&[args, &["--out", "a.csv"]].concat());
        let b = ws.run(&[args, &["--out", "b.csv"]].concat());
        assert_ok(&a);
        assert_ok(&b);
        assert_eq!(std::fs::read(ws.path("a.csv")).unwrap(), std::fs::read(ws.path("b.csv")).unwrap(), "{args:?}");
        // stdout CSV matches the file
        let c = ws.run(args);
        assert_eq!(c.stdout, std::fs::read(ws.path("a.csv")).unwrap());
    }
}

#[test]
fn seed_changes_the_pairs() {
    let ws = Workspace::new();
    let a = ws.run(&["verify-sft", "--basis", "basis.txt", "--rng-seed", "1"]);
    let b = ws.run(&["verify-sft", "--basis", "basis.txt", "--rng-seed", "2"]);
    assert_ok(&a);
    assert_ok(&b);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn lemmas_find_every_witness() {
    let ws = Workspace::new();
    let out = ws.run(&["lemmas", "--k", "2", "--g", "0", "--h", "1", "--p", "1", "--q", "2", "--trials", "1000", "--out", "l.csv"]);
    assert_ok(&out);
    let csv = ws.read("l.csv");
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 2000);
    assert!(rows.iter().all(|r| !r[2].is_empty()));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("g_ne_h: 1000/1000"));
    assert!(stdout.contains("p_ne_q: 1000/1000"));
}

#[test]
fn xi_of_a_point_with_itself_is_one() {
    let ws = Workspace::new();
    assert_ok(&ws.run(&["gen", "--basis", "basis.txt", "--length", "500", "--out", "x.txt"]));
    let out = ws.run(&["xi", "--x", "x.txt", "--y", "x.txt", "--window", "4", "--length", "300", "--points", "6"]);
    assert_ok(&out);
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[2] == "1" && r[3] == "1" && r[7] == "trajectory"));
}

#[test]
fn gen_prefix_starts_with_the_word() {
    let ws = Workspace::new();
    assert_ok(&ws.run(&["gen", "--basis", "basis.txt", "--word", "0", "--length", "10", "--out", "x.txt"]));
    let dump = ws.read("x.txt");
    let first: Vec<&str> = dump.lines().filter(|l| !l.starts_with('#')).flat_map(str::split_whitespace).collect();
    assert_eq!(first.len(), 10);
    assert_eq!(first[0], "0");
    assert!(first[1..].iter().all(|s| *s == "2" || *s == "3"));

    assert_ok(&ws.run(&["gen", "--variant", "dense", "--basis", "basis.txt", "--p", "2", "--g", "1", "--length", "10", "--out", "d.txt"]));
    // w^{2,1} = 1 0 in the enumeration (0 0, then 1 0 since 0 1 is forbidden), then K = 2
    assert!(ws.read("d.txt").lines().nth(1).unwrap().starts_with("1 0 2 "));
}

#[test]
fn bounds_table_has_exact_worked_values() {
    let ws = Workspace::new();
    let out = ws.run(&["bounds", "--variant", "sft", "--word", "0", "--window", "1", "--max-j", "3"]);
    assert_ok(&out);
    let csv = String::from_utf8(out.stdout).unwrap();
    let first = &data_rows(&csv)[0];
    assert_eq!((first[1], first[2], first[3], first[5], first[6]), ("9", "4", "9", "5", "9"));

    let out = ws.run(&["bounds", "--variant", "dense", "--p", "1", "--window", "1", "--max-j", "2"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let second = &data_rows(&csv)[1];
    assert_eq!((second[2], second[3], second[5], second[6]), ("10", "17", "5", "17"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let ws = Workspace::new();
    std::fs::write(ws.path("bad.txt"), "0 1\n0  2\n").unwrap();
    let out = ws.run(&["verify-sft", "--basis", "bad.txt"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn streaming_budget_is_a_warning() {
    let ws = Workspace::new();
    let out = ws.run(&["verify-sft", "--basis", "basis.txt", "--min-j", "1", "--max-j", "6", "--engine", "streaming"]);
    assert_ok(&out);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("warning") && err.contains("largest feasible j: 1"), "{err}");
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(data_rows(&csv).iter().all(|r| r[8] == "1"));
}

#[test]
fn sbt_selectors_from_seed_config() {
    let ws = Workspace::new();
    std::fs::write(
        ws.path("fixed.txt"),
        "z 0 1\nx 0 1 2\ny 0 1 2 3 4\nalpha pattern 0 1\nbeta pattern 1 1\n",
    )
    .unwrap();
    let out = ws.run(&["verify-sbt", "--basis", "full.txt", "--seed-config", "fixed.txt", "--window", "4"]);
    assert_ok(&out);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("injectivity witness 1 (predicted 1)"), "{err}");
    assert!(err.contains("4/4 reports satisfied"));
}

#[test]
fn sbt_seed_without_gluing_constant_is_rejected() {
    let ws = Workspace::new();
    let out = ws.run(&["verify-sbt", "--basis", "basis.txt", "--seed-config", "seed.txt"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("gluing"));
}
