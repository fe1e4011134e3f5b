use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitseq"))
        .arg("--fixtures-dir")
        .arg(fixtures())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// A scratch file unique to this test process.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("splitseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).map(str::trim).filter(|_| l.starts_with(&format!("{key} "))))
}

fn torus_cycle() -> PathBuf {
    let o = run(&["cycle", "tracks/torus.track"]);
    assert_eq!(code(&o), 0);
    scratch("torus.cycle", &stdout(&o))
}

#[test]
fn validate_exit_codes() {
    let o = run(&["validate", "tracks/torus.track"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("recurrent: true"));
    let o = run(&["validate", "tracks/nonrecurrent.track"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("recurrent: false"));
    let bad = scratch("bad.track", "surface genus=1\nbranch x\nswitch u: large=q.0\n");
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(code(&run(&["validate", "tracks/missing.track"])), 2);
}

#[test]
fn negative_fixtures_are_classified() {
    for (file, flag) in [
        ("nongeneric", "generic: false"),
        ("nonfilling", "filling: false"),
        ("nonrecurrent", "recurrent: false"),
        ("switch_violation", "switch_conditions: false"),
    ] {
        let o = run(&["validate", &format!("tracks/{file}.track")]);
        assert_eq!(code(&o), 1, "{file}");
        assert!(stdout(&o).contains(flag), "{file}");
    }
}

#[test]
fn split_outputs_a_track() {
    let o = run(&["split", "tracks/torus.track"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("# maximal split x:Left"));
    let o = run(&["split", "tracks/torus.track", "--branch", "y"]);
    assert_eq!(code(&o), 1, "y is not large");
}

#[test]
fn cycle_and_bounds() {
    let path = torus_cycle();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(value(&text, "period").is_some_and(|v| v.trim_start_matches("= ").parse::<usize>().unwrap() >= 1));
    assert!(text.contains("lambda_minpoly = 1 -3 1"));
    assert_eq!(code(&run(&["cycle", "tracks/torus.track", "--max-iters", "0"])), 1);
    let bare = scratch("bare.track", "surface genus=1 punctures=1\nbranch x\nbranch y\nbranch z\nswitch u: large=x.0 small_left=z.0 small_right=y.0\nswitch v: large=x.1 small_left=z.1 small_right=y.1\n");
    assert_eq!(code(&run(&["cycle", bare.to_str().unwrap()])), 2);

    let o = run(&["bounds", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let rep = stdout(&o);
    for key in ["r", "K", "c", "c_prime", "M_psi", "dd_bound"] {
        assert!(value(&rep, key).is_some(), "{key} missing");
    }
    let big = |k: &str| value(&rep, k).unwrap().len();
    assert!(big("dd_bound") >= big("M_psi"));
    let corrupt = scratch("corrupt.cycle", &text.replace("period = ", "period = 9"));
    assert_eq!(code(&run(&["bounds", corrupt.to_str().unwrap()])), 2);
}

#[test]
fn factorize_torus() {
    let path = torus_cycle();
    let o = run(&["factorize", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("# loop true"));
    assert!(text.contains("# capped_h1_trace 3"));
    assert!(text.contains("# capped_h1_det 1"));
    assert!(text.contains("# sigma u"), "empty sigma takes the least valid mark");
    let o = run(&["factorize", path.to_str().unwrap(), "--sigma", "u,v"]);
    assert_eq!(code(&o), 1);
    let o = run(&["factorize", path.to_str().unwrap(), "--sigma", "v"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn heegaard_torus() {
    let cycle = torus_cycle();
    let bounds = scratch("torus.bounds", &stdout(&run(&["bounds", cycle.to_str().unwrap()])));
    let o = run(&[
        "heegaard",
        "tracks/torus.track",
        "--basis",
        "bases/torus.basis",
        "--bound-report",
        bounds.to_str().unwrap(),
        "--enumerate",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    // 2(g + s − 1) with g = 1, s = 2
    assert_eq!(value(&text, "alpha_arcs"), Some("4"));
    assert_eq!(value(&text, "generators"), Some("32"));
    assert_eq!(text.lines().filter(|l| l.starts_with("generator ")).count(), 32);
    assert!(text.contains("bound pass"));
    let o = run(&["heegaard", "tracks/torus.track", "--basis", "bases/torus_crossing.basis"]);
    assert_eq!(code(&o), 1);
    let bad = scratch("bad.basis", "curve a: 1 1\n");
    assert_eq!(code(&run(&["heegaard", "tracks/torus.track", "--basis", bad.to_str().unwrap()])), 2);
}

#[test]
fn support_reports() {
    let o = run(&["support", "complexes/s2s1.cx"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(value(&text, "dim_tangent"), Some("0"));
    assert_eq!(value(&text, "dim_pointcount"), Some("0"));
    assert_eq!(value(&text, "dimension"), Some("0"));
    let zero = scratch("zero.cx", "ring vars = x, y\nrank 1\n");
    let o = run(&["support", zero.to_str().unwrap(), "--method", "points"]);
    assert_eq!(code(&o), 0);
    assert_eq!(value(&stdout(&o), "dimension"), Some("2"));
    let o = run(&["support", "complexes/square.cx", "--method", "tangent"]);
    assert!(stdout(&o).contains("degeneracy square generator"));
    let bad = scratch("bad.cx", "ring vars = x\nrank 2\nd[0][1] = 1\nd[1][0] = 1\n");
    assert_eq!(code(&run(&["support", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["support", "complexes/s2s1.cx", "--kmax", "1"])), 1);
}

#[test]
fn outputs_are_deterministic_and_manifested() {
    let path = torus_cycle();
    for args in [
        vec!["validate", "tracks/genus2.track"],
        vec!["factorize", path.to_str().unwrap()],
        vec!["support", "complexes/s2s1_sq.cx", "--threads", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(String::from_utf8_lossy(&a.stderr).contains("# run manifest"));
    }
    let out = std::env::temp_dir().join(format!("splitseq-cli-{}", std::process::id())).join("bounds.txt");
    let o = run(&["bounds", path.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&out).unwrap().contains("dd_bound"));
    let man = std::fs::read_to_string(out.with_extension("txt.manifest")).unwrap();
    assert!(man.contains("command Bounds") && man.contains("elapsed_ms") && man.contains("exit 0"));
}
