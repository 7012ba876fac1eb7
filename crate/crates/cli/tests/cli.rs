use std::path::Path;
use std::process::{Command, Output};

use ropelength::{gen_random_walk, thickness, SearchOptions};
use ropelength_cli::{curve_file, CSV_HEADER};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ropelength"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ropelength")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(key)).then(|| it.next().unwrap().to_string())
        })
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

const HOPF_TAGS: &str = "\
# edge x-box y-box z-box bits octal decimal
e0.2 0 0 1 000100 04 4
e0.3 0 1 1 000110 06 6
e0.0 3 1 0 001011 13 11
e0.1 2 0 1 001100 14 12
e1.2 1 3 0 010011 23 19
e1.3 2 2 0 011000 30 24
e1.0 1 1 3 100111 47 39
e1.4 2 0 2 101000 50 40
e0.4 0 2 2 110000 60 48
e1.1 1 2 2 110001 61 49
";

#[test]
fn tags_for_hopf_fixture() {
    let o = run(&["tags", "--gen", "hopf-pentagons"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), HOPF_TAGS);
}

#[test]
fn tags_from_file_match_generator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hopf.rlp");
    assert!(
        run(&["gen", "hopf-pentagons", "-o", path.to_str().unwrap()])
            .status
            .success()
    );
    let o = run(&["tags", path.to_str().unwrap(), "--levels", "3"]);
    assert_eq!(stdout(&o), HOPF_TAGS);
}

#[test]
fn hopf_file_has_fixture_coordinates() {
    let text = stdout(&run(&["gen", "hopf-pentagons"]));
    for line in ["14.5 20 0", "-14.5 20 0", "-23.5 -7.6 0", "0 -24.7 0"] {
        assert!(text.lines().any(|l| l == line), "{line} missing:\n{text}");
    }
}

#[test]
fn csv_header_is_stable() {
    let o = run(&["compute", "--gen", "trefoil", "-n", "64", "--csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), CSV_HEADER.split(',').count());
    assert_eq!(row[0], "trefoil");
    assert_eq!(row[1], "64");

    let o = run(&["bench", "trefoil", "--sizes", "32,64", "--reps", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert_eq!(text.lines().count(), 5);
    let levels: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(levels[1], "1");
    assert_eq!(levels[3], "1");
    assert!(stderr(&o).contains("crossover"));
}

#[test]
fn gen_compute_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walk.rlp");
    let p = path.to_str().unwrap();
    assert!(run(&["gen", "random-walk", "300", "--seed", "3", "-o", p])
        .status
        .success());
    let read = curve_file::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let made = gen_random_walk(300, 3, 1.0).unwrap();
    assert_eq!(read, made);

    let want = thickness(&made, &SearchOptions::default());
    let report = stdout(&run(&["compute", p]));
    assert_eq!(
        field(&report, "thickness").parse::<f64>().unwrap(),
        want.thickness
    );
    assert_eq!(
        field(&report, "ropelength").parse::<f64>().unwrap(),
        want.ropelength
    );
    assert_eq!(
        field(&report, "edge_edge_checks").parse::<u64>().unwrap(),
        want.counters.edge_edge_checks
    );
}

#[test]
fn gen_is_reproducible() {
    let a = run(&["gen", "random-walk", "100", "--seed", "7"]);
    let b = run(&["gen", "random-walk", "100", "--seed", "7"]);
    let c = run(&["gen", "random-walk", "100", "--seed", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn square_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["compute", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"RLPOLY 1\ncomponents 1\ncomponent closed 4\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let report = stdout(&o);
    assert_eq!(field(&report, "min_rad"), "0.5");
    assert_eq!(field(&report, "thickness"), "1");
    assert_eq!(field(&report, "ropelength"), "4");
    assert_eq!(field(&report, "limited_by"), "both");
}

#[test]
fn depth_one_matches_default() {
    let base = [
        "compute",
        "--gen",
        "random-walk",
        "-n",
        "400",
        "--seed",
        "5",
    ];
    let tree = stdout(&run(&base));
    let flat = stdout(&run(&[&base[..], &["--depth-1"]].concat()));
    assert_eq!(field(&tree, "thickness"), field(&flat, "thickness"));
    assert_eq!(field(&flat, "levels"), "1");
    assert_eq!(
        field(&flat, "edge_edge_checks"),
        (399 * 398 / 2).to_string()
    );
    assert_ne!(
        field(&tree, "edge_edge_checks"),
        field(&flat, "edge_edge_checks")
    );
}

#[test]
fn exact_hopf_lists_nine_chords() {
    let o = run(&["compute", "--gen", "hopf-pentagons-exact", "--all-pocas"]);
    let report = stdout(&o);
    assert_eq!(field(&report, "pocas"), "9");
    let listed: Vec<&str> = report.lines().filter(|l| l.contains(" -- ")).collect();
    assert_eq!(listed.len(), 9);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rlp");
    std::fs::write(
        &path,
        "RLPOLY 1\ncomponents 1\ncomponent closed 3\n0 0 0\n1 0\n0 1 0\n",
    )
    .unwrap();
    let o = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
}

#[test]
fn strict_degenerate_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cross.rlp");
    // A bow tie: edges 0 and 2 cross at (0.5, 0.5, 0).
    std::fs::write(
        &path,
        "RLPOLY 1\ncomponents 1\ncomponent closed 4\n0 0 0\n1 1 0\n1 0 0\n0 1 0\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["compute", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("degenerate"));
    assert_eq!(field(&stdout(&o), "status"), "degenerate");
    assert_eq!(run(&["compute", p, "--strict"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("x.rlp");
    let o = run(&["gen", "trefoil", "32", "-o", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!Path::new(&target).exists());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["compute"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "spiral"]).status.code(), Some(1));
    assert_eq!(
        run(&["compute", "--gen", "trefoil", "--levels", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
