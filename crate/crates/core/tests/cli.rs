use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn quizforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quizforge")).args(args).env("QUIZFORGE_COLOR", "never").output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let empty = quizforge(&["validate", s(&data("empty.qbk"))]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(empty.stdout.is_empty());

    let ok = quizforge(&["validate", s(&data("mosca.qbk"))]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("\\begin{Problem}{Mosca}{geometry}\n"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qbk");
    let src = std::fs::read_to_string(data("mosca.qbk")).unwrap().replace("{int,1,10}", "{set,-1}");
    std::fs::write(&bad, src).unwrap();
    let diag = quizforge(&["validate", s(&bad)]);
    assert_eq!(diag.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&diag.stderr).contains("unsatisfiable conditions"));

    std::fs::write(&bad, "\\begin{Problem}{P}\n").unwrap();
    assert_eq!(quizforge(&["validate", s(&bad)]).status.code(), Some(2));
    assert_eq!(quizforge(&["validate", "/nonexistent.qbk"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(quizforge(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(quizforge(&["count", s(&data("mosca.qbk")), "--bogus"]).status.code(), Some(2));
    assert_eq!(quizforge(&["--help"]).status.code(), Some(0));
}

#[test]
fn count_prints_one_line_per_question() {
    let o = quizforge(&["count", s(&data("mosca.qbk"))]);
    assert_eq!(stdout(&o), "Mosca\t1\t1000\n");
    let o = quizforge(&["count", s(&data("mosca.qbk")), "--ordered"]);
    assert_eq!(stdout(&o), "Mosca\t1\t24000\n");
}

#[test]
fn generate_score_stats_cohort() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("build");
    let o = quizforge(&["generate", s(&data("entrance.qbk")), s(&data("entrance.tsp")), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for c in 1..=4 {
        assert!(out.join(format!("entrance-2004-{c}.tex")).exists());
        assert!(out.join(format!("entrance-2004-{c}.key.tsv")).exists());
    }

    // a key-copy sheet for copy 1 and an all-blank one
    let key = std::fs::read_to_string(out.join("entrance-2004-1.key.tsv")).unwrap();
    let letters: Vec<&str> = key.lines().skip(1).map(|l| l.split('\t').nth(4).unwrap()).collect();
    let header: Vec<String> = (1..=20).map(|i| format!("a{i}")).collect();
    let rsp = format!(
        "student_id,test_id,{}\nann,entrance-2004-1,{}\nbob,entrance-2004-1,{}\n",
        header.join(","),
        letters.join(","),
        vec!["-"; 20].join(",")
    );
    let rsp_path = dir.path().join("r.rsp");
    std::fs::write(&rsp_path, rsp).unwrap();
    let key_path = out.join("entrance-2004.keys.tsv");
    let report = dir.path().join("report.csv");
    let o = quizforge(&["score", s(&key_path), s(&rsp_path), "--out", s(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(
        text,
        "student_id,test_id,n_right,n_wrong,n_blank,score,passed\nann,entrance-2004-1,20,0,0,60,true\nbob,entrance-2004-1,0,0,20,0,false\n"
    );
    let o = quizforge(&["score", s(&key_path), s(&rsp_path), "--grant", "7,12"]);
    assert!(stdout(&o).contains("bob,entrance-2004-1,2,0,18,6,false"));

    let chart = dir.path().join("chart.txt");
    let svg = dir.path().join("chart.svg");
    let o = quizforge(&["stats", s(&key_path), s(&rsp_path), "--chart", s(&chart), "--svg", s(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("geometry\t0.50\t0.50\t0.00"));
    assert!(std::fs::read_to_string(&chart).unwrap().lines().count() == 9);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let o = quizforge(&["cohort", s(&report), s(&report)]);
    assert!(stdout(&o).contains("both          2"));

    let bad = dir.path().join("bad.rsp");
    std::fs::write(&bad, "student_id,test_id,a1\nx,entrance-2004-1,A\n").unwrap();
    assert_eq!(quizforge(&["score", s(&key_path), s(&bad)]).status.code(), Some(2));
}

#[test]
fn guess_sim_reports_both_estimates() {
    let o = quizforge(&["guess-sim", "--trials", "2000", "--seed", "3"]);
    let text = stdout(&o);
    assert!(text.starts_with("closed form  mean 0.0000  sd 7.7460\n"), "{text}");
}
