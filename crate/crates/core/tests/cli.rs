use std::path::PathBuf;
use std::process::{Command, Output};

const E2: &str = "ep;prefix=;period=0,1";
const E3: &str = "ep;prefix=;period=0,1,2";

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ultrapart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn orth_of_residues() {
    assert_eq!(
        stdout(&["part", "orth", E2, E3, "--mode", "coarse"]),
        "true\n"
    );
    assert_eq!(
        stdout(&["part", "orth", E2, E3, "--mode", "fine"]),
        "false\n"
    );
}

#[test]
fn meet_is_idempotent() {
    assert_eq!(stdout(&["part", "meet", E2, E2]), format!("{E2}\n"));
    assert_eq!(
        stdout(&["part", "meet", "ep;prefix=1,0;period=1,0", E2]),
        "ep;prefix=;period=0,1\n"
    );
}

#[test]
fn join_and_modes() {
    assert_eq!(
        stdout(&["part", "join", E2, E3]),
        "ep;prefix=;period=0,1,2,3,4,5\n"
    );
    assert_eq!(
        stdout(&["part", "meet", E2, E3, "--mode", "fine"]),
        "ep;prefix=;period=0,1,2,3,4,5\n"
    );
    assert_eq!(
        stdout(&["part", "join", E2, "ep;prefix=0,0;period=0,1"]),
        "bottom\n"
    );
    assert_eq!(
        stdout(&["part", "leq", E2, "ep;prefix=;period=0,1,2,3"]),
        "true\n"
    );
    assert_eq!(
        stdout(&[
            "part",
            "leq",
            E2,
            "ep;prefix=;period=0,1,2,3",
            "--mode",
            "fine"
        ]),
        "false\n"
    );
}

#[test]
fn chain3_has_one_ultrafilter() {
    let out = stdout(&["lat", "ultrafilters", &data("chain3.lat")]);
    assert_eq!(out, "ultrafilter {a,b} generator=a\n");
}

#[test]
fn check_reports_structure() {
    let out = stdout(&["lat", "check", &data("chain3.lat")]);
    assert!(out.contains("atoms a\n"));
    assert!(out.contains("downward_splitting false violator=b\n"));
    assert!(out.contains("complemented false"));
    let out = stdout(&["--format", "tsv", "lat", "check", &data("diamond.lat")]);
    assert!(out.contains("downward_splitting\ttrue\n"));
    assert!(out.contains("complemented\ttrue zero->top,a->b,b->a,top->zero\n"));
}

#[test]
fn framework_and_stone() {
    let out = stdout(&["--format", "tsv", "lat", "framework", &data("diamond.lat")]);
    assert!(
        out.lines().all(|l| l.split('\t').nth(1) == Some("PASS")),
        "{out}"
    );
    let out = stdout(&["lat", "stone", &data("chain3.lat"), "--side", "neg"]);
    assert!(out.contains("PROP discrete PASS"));
    assert!(stdout(&["lat", "corpus", "--max-size", "4"]).contains("PROP instances PASS 24"));
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["lat", "check", &data("nomeet.lat")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("greatest lower bound"));
    assert_eq!(
        run(&["part", "meet", "ep;prefix=2;period=0,1", E2])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["part", "frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["part", "glue", E2, "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["lat", "check", "/nonexistent.lat"]).status.code(),
        Some(2)
    );
}

#[test]
fn file_indirection() {
    let dir = std::env::temp_dir().join(format!("ultrapart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e3.txt");
    std::fs::write(&path, format!("{E3}\n")).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(stdout(&["part", "meet", &arg, &arg]), format!("{E3}\n"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn witnesses_round_trip() {
    let out = stdout(&["part", "witness", "--mode", "coarse", E2, E3]);
    let y = out
        .lines()
        .next()
        .unwrap()
        .strip_prefix("witness ")
        .unwrap();
    for x in [E2, E3] {
        assert_eq!(
            stdout(&["part", "orth", y, x, "--mode", "coarse"]),
            "true\n"
        );
    }
    let out = stdout(&["part", "witness", "--mode", "fine", E2, E3]);
    let y = out
        .lines()
        .next()
        .unwrap()
        .strip_prefix("witness ")
        .unwrap();
    for x in [E2, E3] {
        assert_eq!(stdout(&["part", "orth", y, x, "--mode", "fine"]), "true\n");
        assert_eq!(stdout(&["part", "join", y, x]), "bottom\n");
    }
    let out = stdout(&[
        "part",
        "demo-noncompact",
        E2,
        E3,
        "ep;prefix=;period=0,1,0,2",
    ]);
    assert!(out
        .lines()
        .filter(|l| l.starts_with("orth "))
        .all(|l| l.ends_with(" true")));
}

#[test]
fn partition_queries() {
    assert_eq!(
        stdout(&["part", "mmins", "ep;prefix=0,0;period=1,0,2"]),
        "0,2,4\n"
    );
    assert_eq!(
        stdout(&["part", "glue", E3, "2"]),
        "ep;prefix=;period=0,0,1\n"
    );
    let out = stdout(&["part", "block", E3, "2", "--show", "3"]);
    assert_eq!(out, "color 2\nmin 2\nmembers 2,5,8,...\n");
    assert_eq!(stdout(&["part", "primes", "2"]), format!("{E2}\n{E3}\n"));
}

#[test]
fn column_partitions() {
    let p0 = "sc;runs=;periodic=2";
    assert_eq!(
        stdout(&["pinf", "leqstar", "sc;runs=1,3;periodic=2", p0]),
        "3\n"
    );
    assert_eq!(
        stdout(&["pinf", "leqstar", p0, "sc;runs=1;periodic=2"]),
        "absent\n"
    );
    assert_eq!(stdout(&["pinf", "leqstar", p0, p0]), "1\n");
    assert_eq!(
        stdout(&["pinf", "glue", p0, "6", "--show-cuts", "4"]),
        "sc;runs=4;periodic=2\ncuts 0,4,6,8\n"
    );
    assert_eq!(
        stdout(&["pinf", "meet", p0, "sc;runs=1;periodic=2"]),
        "finite-remainder cuts=0\n"
    );
    assert_eq!(
        stdout(&["pinf", "mmins", p0, "--count", "4"]),
        "0,5,14,27\n"
    );
    assert_eq!(
        stdout(&["pinf", "leq", p0, "sc;runs=;periodic=1"]),
        "true\n"
    );
    assert_eq!(
        stdout(&["pinf", "orth", p0, "sc;runs=1;periodic=2"]),
        "true\n"
    );
}

#[test]
fn output_is_deterministic() {
    let a = run(&["table", "--seed", "3"]);
    let b = run(&["table", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text
        .lines()
        .all(|l| l.starts_with("PROP ") && l.contains(" PASS")));
}
