use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn subreg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subreg"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compile_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("sl_aa.expr"), "!\"aa\"\n").unwrap();
    stdout(&subreg(&["compile", "--expr", "sl_aa.expr", "--sigma", "5", "--att", "out.att"], d));
    let att = fs::read_to_string(d.join("out.att")).unwrap();
    assert!(att.starts_with("0\t"));
    let out = stdout(&subreg(&["classify", "--att", "out.att", "--sigma", "5"], d));
    assert!(out.contains("SL\t1\n"));
    assert!(out.contains("coSL\t0\n"));
    assert!(out.ends_with("representative\tSL\n"));

    let monoid = stdout(&subreg(&["monoid", "--att", "out.att", "--sigma", "5"], d));
    assert!(monoid.starts_with("states "));
}

#[test]
fn compile_inline_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&subreg(&["compile", "--text", "\"a\" < \"a\"", "--alphabet", "ab"], dir.path()));
    assert_eq!(out.lines().filter(|l| l.split('\t').count() == 3).count(), 6);
}

#[test]
fn generate_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("lang.expr"), "!\"aa\"").unwrap();
    let name = "04.04.SL.2.0.0";
    let gen = |threads: &str, out: &str| {
        stdout(&subreg(
            &["generate", "--lang", "lang.expr", "--name", name, "--large", "4000", "--seed", "7", "--threads", threads, "--out", out],
            d,
        ))
    };
    gen("1", "a");
    gen("3", "b");
    for entry in fs::read_dir(d.join("a")).unwrap() {
        let f = entry.unwrap().file_name();
        assert_eq!(fs::read(d.join("a").join(&f)).unwrap(), fs::read(d.join("b").join(&f)).unwrap(), "{f:?}");
    }

    let report = stdout(&subreg(&["verify", "--dir", "a", "--lang", "lang.expr"], d));
    assert!(!report.contains("FAIL"), "{report}");
    stdout(&subreg(&["compile", "--expr", "lang.expr", "--sigma", "4", "--att", "lang.att"], d));
    stdout(&subreg(&["verify", "--dir", "a", "--att", "lang.att"], d));

    let small = stdout(&subreg(&["downsample", "--split", "a/Train_Large.tsv", "--size", "Small", "--seed", "7"], d));
    assert_eq!(small, fs::read_to_string(d.join("a/Train_Small.tsv")).unwrap());

    let path = d.join("a/Dev_Small.tsv");
    let text = fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("\tTRUE\n", "\tFALSE\n", 1);
    fs::write(&path, tampered).unwrap();
    let o = subreg(&["verify", "--dir", "a", "--att", "lang.att"], d);
    assert_eq!(o.status.code(), Some(2));
    let report = String::from_utf8(o.stdout).unwrap();
    assert!(report.contains("FAIL\tmembership"));
    assert!(report.contains("Dev_Small.tsv:"));
}

#[test]
fn randdfa_csv() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["randdfa", "--n", "3,4", "--s", "2", "--pe", "0.5", "--pf", "0.5", "--trials", "30", "--seed", "1"];
    let a = stdout(&subreg(&args, dir.path()));
    assert!(a.starts_with("n,s,p_e,p_f,trials,sl_count\n3,2,0.5,0.5,30,"));
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "2"]);
    assert_eq!(a, stdout(&subreg(&threaded, dir.path())));
}

#[test]
fn score_toy_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("p.tsv"), "aa\tTRUE\t0.9\nab\tTRUE\t0.4\nba\tFALSE\t0.6\nbb\tFALSE\t0.1\n").unwrap();
    fs::write(d.join("Train_Small.tsv"), "aa\tTRUE\nab\tTRUE\nba\tFALSE\nbb\tFALSE\n").unwrap();
    let out = stdout(&subreg(&["score", "--pred", "p.tsv", "--split", "Train_Small.tsv"], d));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["accuracy"], 0.5);
    assert_eq!(json["auc"], 0.75);
    assert!((json["brier"].as_f64().unwrap() - 0.185).abs() < 1e-12);

    fs::write(d.join("Train_Small.tsv"), "aa\tTRUE\n").unwrap();
    let o = subreg(&["score", "--pred", "p.tsv", "--split", "Train_Small.tsv"], d);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn operational_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(subreg(&["classify", "--att", "missing.att"], dir.path()).status.code(), Some(1));
    assert_eq!(subreg(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(subreg(&["compile", "--text", "\"a\"", "--sigma", "99"], dir.path()).status.code(), Some(1));
    assert_eq!(subreg(&["--help"], dir.path()).status.code(), Some(0));
}
