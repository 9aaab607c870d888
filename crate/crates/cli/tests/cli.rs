use std::path::PathBuf;
use std::process::{Command, Output};

fn dcgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcgf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn repo(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel).to_string_lossy().into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

#[test]
fn gen_examples() {
    let o = dcgf(&["gen", "--family", "t3", "--c", "2", "--n", "8", "--via", "gf", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,2,2,4,2,4,4,8\n");

    let o = dcgf(&["gen", "--expr", "prod(k){1 - z^(2^k)}", "--n", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "1,-1,-1,1\n");

    let o = dcgf(&["gen", "--family", "ones-count", "--n", "4"]);
    assert_eq!(stdout(&o), "0 0\n1 1\n2 1\n3 2\n");
}

#[test]
fn gen_usage_errors() {
    let o = dcgf(&["gen", "--family", "t1", "--c", "0", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("|c| > 0"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    for args in [
        &["gen", "--family", "t9", "--c", "1"][..],
        &["gen", "--family", "t4", "--c", "1"],
        &["gen", "--family", "t1", "--c", "1", "--tail", "1"],
        &["gen", "--family", "t1", "--c", "1", "--n", "1"],
        &["gen", "--expr", "z", "--via", "rec"],
        &["gen", "--expr", "k + 1"],
        &["gen"],
    ] {
        assert_eq!(dcgf(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn gen_runtime_error() {
    let o = dcgf(&["gen", "--expr", "1/(2 - z)", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("+1 or -1"), "{}", stderr(&o));
}

#[test]
fn verify_examples() {
    let o = dcgf(&["verify", "--family", "t5", "--c", "1", "--tail", "1", "--n", "512"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));

    let o = dcgf(&["verify", "--family", "t6", "--tail", "1,1", "--n", "512"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("convention: regularized"), "{}", stdout(&o));

    let o = dcgf(&["verify", "--family", "t4", "--alpha", "0", "--c", "1", "--d", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = dcgf(&["verify", "--family", "t4", "--alpha", "-3", "--c", "-2", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn classify_examples() {
    let o = dcgf(&["classify", &repo("crates/core/tests/fixtures/oeis/A001511.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "T1 c=1 align=1 len=64"), "{}", stdout(&o));

    let o = dcgf(&["classify", &data("norgard.txt")]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), "no match in bounds\n");

    let o = dcgf(&["classify", &data("short.txt")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sample too short"));

    let o = dcgf(&["classify", &data("does-not-exist.txt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_is_deterministic() {
    let path = repo("crates/core/tests/fixtures/oeis/A000120.txt");
    let a = dcgf(&["classify", &path]);
    let b = dcgf(&["classify", &path]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mahler_examples() {
    let ones = repo("equations/ones_count.eq");
    let o = dcgf(&["mahler", &ones, "--family", "t4", "--alpha", "1", "--c", "0", "--d", "1", "--n", "512"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS"));

    let o = dcgf(&["mahler", &repo("equations/thue_morse.eq"), "--family", "t3", "--c", "-1", "--n", "512"]);
    assert_eq!(o.status.code(), Some(0));

    let o = dcgf(&["mahler", &repo("equations/two_pow_e0.eq"), "--oracle", "two-pow-e0", "--n", "512"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS (verified to order 511)"), "{}", stdout(&o));

    // wrong series for the equation
    let o = dcgf(&["mahler", &ones, "--family", "t3", "--c", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL at z^"));

    let o = dcgf(&["mahler", &data("bad.eq"), "--family", "t3", "--c", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn tworat_examples() {
    let o = dcgf(&["tworat", "--alpha", "2", "--c", "0", "--d", "1", "--range", "0..8", "--check", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0,1,2,3,4,5,6,7\nPASS (8 values match the T4 recurrence)\n");

    let o = dcgf(&["tworat", "--alpha", "1", "--c", "0", "--d", "1", "--range", "7..8"]);
    assert_eq!(stdout(&o), "7 3\n");

    let o = dcgf(&["tworat", "--alpha", "-1", "--c", "0", "--d", "1", "--range", "0..8", "--check", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0,1,-1,0,1,2,0,1\nPASS"));

    let o = dcgf(&["tworat", "--alpha", "0", "--c", "0", "--d", "1", "--range", "0..8"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dcgf(&["tworat", "--alpha", "1", "--c", "0", "--d", "1", "--range", "8..3"]);
    assert_eq!(o.status.code(), Some(2));
}

fn tails() -> Vec<String> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::<i64>::new()];
    for _ in 0..3 {
        layer = layer
            .iter()
            .flat_map(|t| {
                (-2..=2).map(move |ci| {
                    let mut t = t.clone();
                    t.push(ci);
                    t
                })
            })
            .collect();
        for t in &layer {
            if t.last() != Some(&0) {
                out.push(t.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            }
        }
    }
    out
}

/// Every grid point as `gen` arguments.
fn grid() -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let nonzero: Vec<String> = (-3i64..=3).filter(|v| *v != 0).map(|v| v.to_string()).collect();
    let all: Vec<String> = (-3i64..=3).map(|v| v.to_string()).collect();
    let mut out = Vec::new();
    for fam in ["t1", "t2", "t3"] {
        for c in &nonzero {
            out.push(s(&["--family", fam, "--c", c]));
        }
    }
    for a in &nonzero {
        for c in &all {
            for d in &all {
                out.push(s(&["--family", "t4", "--alpha", a, "--c", c, "--d", d]));
            }
        }
    }
    let tails = tails();
    for c in &nonzero {
        for t in &tails {
            out.push(s(&["--family", "t5", "--c", c, "--tail", t]));
        }
    }
    for t in &tails {
        out.push(s(&["--family", "t6", "--tail", t]));
    }
    out
}

#[test]
fn gf_and_rec_output_identical_over_grid() {
    let grid = grid();
    assert_eq!(grid.len(), 1180);
    for point in &grid {
        let run = |via: &str| {
            let mut args: Vec<&str> = vec!["gen", "--via", via];
            args.extend(point.iter().map(String::as_str));
            let o = dcgf(&args);
            assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
            o.stdout
        };
        assert_eq!(run("gf"), run("rec"), "{point:?}");
    }
}
