use std::fs;
use std::process::{Command, Output};

use ekr_core::counting::count_disjoint_pairs;
use ekr_core::family::lex_segment;
use ekr_core::io::{parse_text, to_text};
use serde_json::Value;

fn ekr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(args)
        .env_remove("EKR_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_writes_the_lex_segment() {
    let out = ekr(&["gen", "--construction", "lex", "--n", "6", "--k", "3", "--s", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert_eq!(text, to_text(&lex_segment(6, 3, 11).unwrap()));
}

#[test]
fn gen_then_count_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (n, k, s) in [(6u32, 3u32, 11u128), (7, 2, 13), (8, 3, 40)] {
        let path = dir.path().join(format!("{n}-{k}-{s}.txt"));
        let p = path.to_str().unwrap();
        let (ns, ks, ss) = (n.to_string(), k.to_string(), s.to_string());
        let gen = ekr(&[
            "gen",
            "--construction",
            "lex",
            "--n",
            &ns,
            "--k",
            &ks,
            "--s",
            &ss,
            "-o",
            p,
        ]);
        assert!(gen.status.success());
        let count = ekr(&["count", "--stat", "disj", p]);
        assert!(count.status.success());
        let v = json(&count);
        let direct = count_disjoint_pairs(&parse_text(&fs::read_to_string(&path).unwrap()).unwrap());
        assert_eq!(direct, count_disjoint_pairs(&lex_segment(n, k, s).unwrap()));
        assert_eq!(v["value"], direct.to_string());
        assert_eq!(v["params"]["n"], n);
        assert_eq!(v["params"]["s"], ss);
    }
}

#[test]
fn count_reads_json_families() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.json");
    fs::write(&path, r#"{"n":4,"k":2,"sets":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#).unwrap();
    let out = ekr(&["count", "--stat", "disj", path.to_str().unwrap()]);
    assert_eq!(json(&out)["value"], "3");
    let out = ekr(&["count", "--stat", "qmatch", "--q", "3", path.to_str().unwrap()]);
    assert_eq!(json(&out)["value"], "0");
}

#[test]
fn certify_small_instance() {
    let out = ekr(&[
        "certify",
        "--n",
        "5",
        "--k",
        "2",
        "--s",
        "5",
        "--stat",
        "disj",
        "--mode",
        "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["minimum"], "2");
    assert_eq!(v["lex_optimal"], true);
    assert_eq!(v["complete"], true);
    assert_eq!(v["params"]["r"], 2);
}

#[test]
fn outputs_are_byte_identical() {
    let args = ["certify", "--n", "6", "--k", "3", "--s", "11", "--mode", "bnb"];
    assert_eq!(ekr(&args).stdout, ekr(&args).stdout);
    let args = ["sweep", "--n", "5", "--k", "2"];
    assert_eq!(ekr(&args).stdout, ekr(&args).stdout);
}

#[test]
fn budget_exhaustion_exits_two_with_partial_certificate() {
    let out = ekr(&["certify", "--n", "7", "--k", "3", "--s", "20", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["complete"], false);
    assert!(v["minimum"].is_string());
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(["certify", "--n", "7", "--k", "3", "--s", "20"])
        .env("EKR_NODE_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_one() {
    let out = ekr(&["certify", "--n", "5", "--k", "9", "--s", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--k"));

    let out = ekr(&["formula", "--n", "5", "--k", "2", "--s", "11"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--s"));

    let out = ekr(&["count", "--stat", "nonsense", "x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "n=5 k=2\n1,2\n2,3\n3,4,5\n").unwrap();
    let out = ekr(&["count", "--stat", "disj", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    fs::write(&path, "n=5 k=2\n1,2\n2,1\n").unwrap();
    let out = ekr(&["count", "--stat", "disj", path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn sweep_rows_cover_the_range() {
    let out = ekr(&["sweep", "--n", "6", "--k", "2", "--s-from", "3", "--s-to", "9"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let s: Vec<u32> = rows
        .iter()
        .map(|r| r.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(s, (3..=9).collect::<Vec<_>>());
    assert!(rows
        .iter()
        .all(|r| r.ends_with(|c: char| c.is_ascii_digit()) && r.contains(",true,")));
}

#[test]
fn formula_table_and_all() {
    let out = ekr(&[
        "formula", "--n", "6", "--k", "3", "--table", "--s-from", "10", "--s-to", "12",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(2).unwrap().starts_with("6,3,11,2,1,"));

    let out = ekr(&["formula", "--n", "6", "--k", "3", "--s", "11", "--all"]);
    let v = json(&out);
    assert_eq!(v["bounds"][0]["name"], "lex_formula");
    assert_eq!(v["bounds"][0]["value"], "1");
    assert_eq!(v["thresholds"]["r"], 2);
}

#[test]
fn kneser_verbs() {
    let out = ekr(&["kneser", "--n", "5", "--k", "2", "--spectrum"]);
    let v = json(&out);
    assert_eq!(v["degree"], "3");
    assert_eq!(v["eigenvalues"][1]["value"], "-2");
    assert_eq!(v["eigenvalues"][2]["value"], "1");

    let out = ekr(&["kneser", "--n", "4", "--k", "2", "--edges"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 5\n1 4\n2 3\n");

    let out = ekr(&["kneser", "--n", "5", "--k", "2", "--bound", "5"]);
    assert_eq!(json(&out)["spectral_lower"], "5/4");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(&path, to_text(&lex_segment(5, 2, 5).unwrap())).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        json(&ekr(&["kneser", "--n", "5", "--k", "2", "--induced", p]))["induced_edges"],
        "2"
    );
    // 5 vertices of degree 3, minus twice the 2 inside edges
    assert_eq!(
        json(&ekr(&["kneser", "--n", "5", "--k", "2", "--cut", p]))["cut_edges"],
        "11"
    );

    assert_eq!(ekr(&["kneser", "--n", "5", "--k", "2"]).status.code(), Some(1));
}

#[test]
fn lemma_aliases() {
    let a = ekr(&[
        "verify-lemmas",
        "--lemma",
        "4.2",
        "--n",
        "8",
        "--k",
        "3",
        "--t",
        "2",
        "--r",
        "2",
    ]);
    let b = ekr(&[
        "verify-lemmas",
        "--lemma",
        "star-union",
        "--n",
        "8",
        "--k",
        "3",
        "--t",
        "2",
        "--r",
        "2",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["report"]["minimum"], "11");
    assert_eq!(v["report"]["holds"], true);

    let out = ekr(&[
        "verify-lemmas",
        "--lemma",
        "4.3",
        "--n",
        "8",
        "--k",
        "3",
        "--t",
        "2",
        "--r",
        "2",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["complete"], false);
}

#[test]
fn gen_other_constructions() {
    let out = ekr(&[
        "gen",
        "--construction",
        "tstars",
        "--n",
        "6",
        "--k",
        "3",
        "--t",
        "2",
        "--r",
        "2",
    ]);
    let f = parse_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    // 1,2 and 1,3 stars: 4 + 4 - 1 shared set {1,2,3}
    assert_eq!(f.len(), 7);

    let out = ekr(&[
        "gen",
        "--construction",
        "ellball",
        "--n",
        "6",
        "--k",
        "3",
        "--r",
        "3",
        "--ell",
        "2",
        "--format",
        "json",
    ]);
    let v = json(&out);
    // sets meeting {1,2,3} twice or more: 3*3 + 1
    assert_eq!(v["sets"].as_array().unwrap().len(), 10);

    let out = ekr(&["gen", "--construction", "ellball", "--n", "6", "--k", "3", "--r", "3"]);
    assert_eq!(out.status.code(), Some(1));
}
