use std::process::{Command, Output};

use serde_json::Value;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

fn ytab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ytab"))
        .args(args)
        .output()
        .expect("spawn ytab")
}

fn stdout(args: &[&str]) -> String {
    let out = ytab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    ytab(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{GOLDEN}/{name}")).unwrap()
}

#[test]
fn cell_probabilities() {
    assert_eq!(
        stdout(&["prob", "cell", "--row", "1", "--col", "2", "--k", "4"]),
        "1/8\n"
    );
    assert_eq!(
        stdout(&["prob", "cell", "--row", "2", "--col", "3", "--k", "6"]),
        "5/144\n"
    );
    assert_eq!(
        stdout(&["prob", "cell", "--row", "1", "--col", "4", "--k", "2"]),
        "0\n"
    );
    assert_eq!(
        code(&["prob", "cell", "--row", "0", "--col", "4", "--k", "2"]),
        2
    );
    assert_eq!(
        code(&["prob", "cell", "--row", "x", "--col", "4", "--k", "2"]),
        2
    );
}

#[test]
fn assignments() {
    assert_eq!(
        stdout(&["prob", "cells", "--assign", "(1,2)=2;(1,3)=3"]),
        "1/6\n"
    );
    assert_eq!(
        stdout(&["prob", "cells", "--assign", "(1,2)=6;(1,3)=9"]),
        "5/4536\n"
    );
    assert_eq!(code(&["prob", "cells", "--assign", "(1,2)=2;(1,2)=3"]), 2);
    assert_eq!(code(&["prob", "cells", "--assign", "(1,2)=2;(1,3)=13"]), 3);
    let out = ytab(&["prob", "cells", "--assign", "(1,2)=2;(1,3)=13"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("estimated cost"));
}

#[test]
fn shape_lists() {
    assert_eq!(stdout(&["prob", "shapes", "--shapes", "2,1"]), "2/3\n");
    assert_eq!(stdout(&["prob", "shapes", "--two-columns", "3"]), "5/6\n");
    assert_eq!(stdout(&["prob", "shapes", "--shapes", "2;1,1"]), "1\n");
    assert_eq!(code(&["prob", "shapes", "--shapes", "2;2,1"]), 2);
    assert_eq!(code(&["prob", "shapes"]), 2);
}

#[test]
fn tableau_files() {
    let dir = std::env::temp_dir().join(format!("ytab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let one = dir.join("one.json");
    std::fs::write(&one, r#"{"rows":[[1,2],[3]]}"#).unwrap();
    let f = one.to_str().unwrap();
    assert_eq!(stdout(&["prob", "tableau", "--file", f]), "1/3\n");
    assert_eq!(
        stdout(&["prob", "empirical", "--file", f, "--n", "3"]),
        "1/4\n"
    );
    let many = dir.join("many.json");
    std::fs::write(&many, r#"[{"rows":[[1,2]]},{"rows":[[1],[2]]}]"#).unwrap();
    assert_eq!(
        stdout(&["prob", "tableau", "--file", many.to_str().unwrap()]),
        "1\n"
    );
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"rows":[[2,1]]}"#).unwrap();
    assert_eq!(
        code(&["prob", "tableau", "--file", bad.to_str().unwrap()]),
        2
    );
    assert_eq!(
        code(&[
            "prob",
            "tableau",
            "--file",
            dir.join("missing.json").to_str().unwrap()
        ]),
        2
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exact_counts() {
    assert_eq!(stdout(&["exact", "f12", "--n", "9", "--k", "2"]), "1310\n");
    assert_eq!(stdout(&["exact", "f12", "--n", "5", "--k", "1"]), "0\n");
    assert_eq!(code(&["exact", "f12", "--n", "1", "--k", "1"]), 2);
    assert_eq!(code(&["exact", "f12", "--n", "5", "--k", "0"]), 2);
    assert_eq!(
        stdout(&["exact", "f12", "--table", "--n-max", "9"]),
        golden("f12_n9.csv")
    );
    let v = json(&["exact", "f12", "--n", "8", "--k", "3"]);
    assert_eq!(v["value"], "246/1");
    assert_eq!(v["command"], "exact f12");
    assert_eq!(v["params"]["n"], 8);
    assert!(v.get("decimal").is_none());
}

#[test]
fn tables_match_golden_files() {
    assert_eq!(
        stdout(&["table", "occupancy", "--k-max", "6"]),
        golden("occupancy_k6.csv")
    );
    assert_eq!(
        stdout(&["table", "joint", "--r-max", "6", "--s-max", "9"]),
        golden("joint_r6_s9.csv")
    );
}

#[test]
fn table_json_carries_the_same_values() {
    let v = json(&["table", "occupancy", "--k-max", "6"]);
    let cell = &v["value"]["values"][4][6];
    assert_eq!(cell["num"], "5");
    assert_eq!(cell["den"], "144");
    assert_eq!(v["value"]["columns"][0], "(1,2)");
    let v = json(&[
        "table",
        "joint",
        "--r-max",
        "6",
        "--s-max",
        "9",
        "--decimal",
    ]);
    assert_eq!(v["value"]["values"][2][4]["den"], "2520");
    assert_eq!(v["decimal"][0][0], "0.1666666667");
}

#[test]
fn decimal_output_is_opt_in() {
    assert_eq!(
        stdout(&["prob", "cell", "--row", "1", "--col", "2", "--k", "3", "--format", "decimal"]),
        "0.3333333333\n"
    );
    let v = json(&[
        "prob",
        "cell",
        "--row",
        "1",
        "--col",
        "2",
        "--k",
        "3",
        "--decimal",
    ]);
    assert_eq!(v["value"], "1/3");
    assert_eq!(v["decimal"], "0.3333333333");
}

#[test]
fn quasirandom_reports() {
    let v = json(&[
        "quasirandom",
        "--family",
        "involutions",
        "--n",
        "8",
        "--k",
        "2",
        "--mode",
        "exact",
    ]);
    assert_eq!(v["value"]["within_bounds"], true);
    assert_eq!(v["value"]["argmax_pattern"].as_array().unwrap().len(), 2);
    let all = json(&["quasirandom", "--family", "all", "--n", "8", "--k", "3"]);
    assert_eq!(all["value"]["max_deviation"], "0/1");
    let sample = [
        "quasirandom",
        "--family",
        "involutions",
        "--n",
        "20",
        "--k",
        "2",
        "--mode",
        "sample",
        "--samples",
        "100000",
        "--seed",
        "42",
    ];
    let a = stdout(&sample);
    assert_eq!(a, stdout(&sample));
    let mut sharded = sample.to_vec();
    sharded.extend(["--jobs", "3"]);
    assert_eq!(a, stdout(&sharded));
    let v = json(&sample);
    assert_eq!(v["seed"], 42);
}

#[test]
fn quasirandom_errors() {
    assert_eq!(
        code(&["quasirandom", "--family", "all", "--n", "12", "--k", "2"]),
        3
    );
    assert_eq!(
        code(&[
            "quasirandom",
            "--family",
            "involutions",
            "--n",
            "12",
            "--k",
            "4",
            "--max-patterns",
            "1000"
        ]),
        3
    );
    assert_eq!(
        code(&["quasirandom", "--family", "nope", "--n", "6", "--k", "2"]),
        2
    );
    assert_eq!(
        code(&[
            "quasirandom",
            "--family",
            "fixed-point-free",
            "--n",
            "7",
            "--k",
            "2"
        ]),
        2
    );
}

#[test]
fn sandwich_subsets() {
    let v = json(&[
        "quasirandom",
        "--family",
        "involutions",
        "--n",
        "8",
        "--subset",
        "1,2,3",
    ]);
    assert_eq!(v["value"]["passes"], true);
    assert_eq!(v["value"]["orderings"].as_array().unwrap().len(), 6);
}

#[test]
fn oracle_suites() {
    for args in [
        ["--suite", "parseval", "--k-max", "8"],
        ["--suite", "fform", "--n-max", "10"],
        ["--suite", "zset", "--k-max", "6"],
    ] {
        let mut a = vec!["oracle"];
        a.extend(args);
        assert!(stdout(&a).starts_with("PASS"), "{args:?}");
    }
    assert_eq!(code(&["oracle", "--suite", "sandwich", "--n", "6"]), 0);
    assert_eq!(code(&["oracle", "--suite", "theorem1", "--cells", "2"]), 0);
    assert_eq!(code(&["oracle", "--suite", "bogus"]), 2);
    let v = json(&["oracle", "--suite", "zset", "--k-max", "3"]);
    assert_eq!(v["value"]["passed"], true);
    assert_eq!(code(&["oracle", "--suite", "fform", "--n-max", "16"]), 3);
}
