use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../unitri/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitri")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_pairs() {
    let o = run(&["classify", "--pq", "5", "13"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("q=13 p=5 canonical_p=5 tetragonal=false"));
    let o = run(&["classify", "--pq", "0", "1"]);
    assert!(stdout(&o).contains("unimodular=true"));
    let o = run(&["classify", "--pq", "3", "12"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_rejects_cube() {
    let o = run(&["classify", &fixture("cube.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a simplex"));
}

#[test]
fn triangulate_then_verify() {
    let out = scratch("t_5_13_12.json");
    let off = scratch("t_5_13_12.off");
    let o = run(&["triangulate", "--pq", "5", "13", "--k", "12", "--boundary", "standard", "-o", out.to_str().unwrap(), "--off", off.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let t: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(t["tetrahedra"].as_array().unwrap().len(), 22464);
    assert!(std::fs::read_to_string(&off).unwrap().starts_with("OFF\n"));
    let o = run(&["verify", out.to_str().unwrap(), "--region", "dilate:5,13,12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["name"] == "boundary_standard"));

    let again = scratch("t_5_13_12_again.json");
    run(&["triangulate", "--pq", "5", "13", "--k", "12", "-o", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&again).unwrap(), text.as_bytes());
}

#[test]
fn inadmissible_dilations() {
    let o = run(&["triangulate", "--pq", "5", "13", "--k", "7", "--boundary", "standard"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k=7 requires quasi-standard"));
    assert!(stderr(&o).contains("{1,2,3,5,7,11}"));
    let o = run(&["triangulate", "--pq", "5", "13", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("impossible"));
}

#[test]
fn polytope_cube() {
    let o = run(&["--jobs", "1", "triangulate", "--polytope", &fixture("cube.json"), "--k", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["tetrahedra"].as_array().unwrap().len(), 1296);
}

#[test]
fn verify_fixtures() {
    let o = run(&["verify", &fixture("tetragonal_2_3.json"), "--region", "dilate:1,3,2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", &fixture("overlap.json"), "--region", &fixture("overlap.region.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
    let o = run(&["verify", &fixture("face_mismatch.json"), "--region", &fixture("face_mismatch.region.json")]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["faces"]);
}

#[test]
fn survey_rows() {
    let o = run(&["survey", "--qmax", "7", "--kmax", "13", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.splitn(4, ',').collect();
        let (p, q, k): (i64, i64, i64) = (cols[0].parse().unwrap(), cols[1].parse().unwrap(), cols[2].parse().unwrap());
        let tetragonal = q <= 2 || p == 1 || p == q - 1;
        let expect_pass = if tetragonal { k >= 2 || q == 1 } else { ![1, 2, 3, 5].contains(&k) };
        assert_eq!(line.contains(",pass,"), expect_pass, "{line}");
        if !tetragonal && k == 2 {
            assert!(line.contains("impossible"), "{line}");
        }
        if !tetragonal && (k == 7 || k == 11) {
            assert!(line.contains("quasi"), "{line}");
        }
    }
    let md = stdout(&run(&["survey", "--qmax", "2", "--kmax", "2"]));
    assert!(md.starts_with("| p | q | k |"));
}

#[test]
fn squares_ascii_and_svg() {
    let svg = scratch("square_2_5.svg");
    let o = run(&["squares", "--pq", "2", "5", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("paths compatible: false"));
    assert_eq!(text.lines().filter(|l| l.trim_start().chars().next().is_some_and(|c| c.is_ascii_digit())).count(), 6);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    // A compatible pair of quasi-maximal paths exists for every class.
    let o = run(&["squares", "--pq", "2", "5", "--kind", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let grid: String = stdout(&o).lines().skip(4).collect();
    assert!(grid.contains('X') || grid.contains('#'));
    assert!(grid.contains('Y') || grid.contains('#'));
    let o = run(&["squares", "--pq", "1", "4"]);
    assert!(stdout(&o).contains("paths compatible: true"));
}
