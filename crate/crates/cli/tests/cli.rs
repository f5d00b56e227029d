use std::process::{Command, Output};

use serde_json::Value;

fn crossfam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossfam"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--output json` and returns the exit code and parsed report.
fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let out = crossfam(&all);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), doc)
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, doc) = json(args);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 1);
    (code, doc["reports"][0].clone())
}

#[test]
fn alpha_of_the_petersen_graph() {
    let (code, r) = report(&["alpha", "--n", "5", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["alpha_formula"], "4");
    assert_eq!(r["alpha_solver"], 4);
    assert_eq!(r["is_imprimitive_predicate"], false);
}

#[test]
fn alpha_of_two_edges() {
    let (code, r) = report(&["alpha", "--n", "2,2", "--k", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(r["alpha_formula"], "2");
    assert_eq!(r["is_imprimitive_search"], true);
    assert_eq!(r["mis_normal"], true);
}

#[test]
fn alpha_of_three_edges_is_not_mis_normal() {
    let (code, r) = report(&["alpha", "--n", "2,2,2", "--k", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(r["mis_normal"], false);
    assert_eq!(r["mis_witness"].as_array().unwrap().len(), 4);
}

#[test]
fn crossmax_exhaustive_classifies_every_optimum() {
    let (code, r) = report(&["crossmax", "--n", "4", "--k", "2", "--m", "2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(r["bound"], "6");
    assert_eq!(r["search"]["optimum"], 6);
    assert_eq!(r["search"]["unclassified"], 0);
    assert_eq!(r["search"]["systems"], 63);
}

#[test]
fn crossmax_emits_the_identical_construction() {
    let (code, r) = report(&["crossmax", "--n", "4,5", "--k", "1,2", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["bound"], "48");
    let emitted = r["emitted"].as_array().unwrap();
    assert_eq!(emitted.len(), 1);
    assert_eq!(emitted[0]["case"], "(ii)");
    assert_eq!(emitted[0]["families"][0].as_array().unwrap().len(), 16);
}

#[test]
fn crossmax_below_the_ratio_uses_the_full_layer() {
    let (code, r) = report(&["crossmax", "--n", "5", "--k", "2", "--m", "2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(r["bound"], "10");
    let attaining: Vec<_> = r["constructions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["attains_bound"] == true)
        .map(|c| c["case"].as_str().unwrap())
        .collect();
    assert_eq!(attaining, ["(i)"]);
    assert_eq!(r["search"]["cases"]["(i)"], 1);
    assert_eq!(r["search"]["systems"], 1);
}

#[test]
fn pairmax_single_part_reaches_the_bound_with_unclassified_stars() {
    // The balanced pairs of stars on a common element attain the bound but
    // are neither (i) nor (ii), so the classification assertion fails.
    let (code, r) = report(&["pairmax", "--n", "5", "--t", "2", "--s", "2", "--exhaustive"]);
    assert_eq!(code, 2);
    assert_eq!(r["bound"], "8");
    assert_eq!(r["search"]["alpha"], 8);
    assert_eq!(r["search"]["unclassified"], 5);
    assert_eq!(r["search"]["unclassified_balanced"], 5);
}

#[test]
fn pairmax_counterexamples_name_the_failed_clause() {
    let (code, r) = report(&[
        "pairmax",
        "--n",
        "18,18",
        "--t",
        "2,3",
        "--s",
        "15,2",
        "--construction",
        "remark2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["construction"]["slack"], "+47");
    assert_eq!(r["violated"], serde_json::json!(["s_1 > n_1/2"]));

    let (code, r) = report(&[
        "pairmax",
        "--n",
        "5,12",
        "--t",
        "2,2",
        "--s",
        "2,2",
        "--construction",
        "remark2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["construction"]["slack"], "+2");
    assert_eq!(r["violated"], serde_json::json!(["n_2 > (7/4)n_1"]));
}

#[test]
fn fragments_of_the_petersen_pair() {
    let (code, r) = report(&["fragments", "--n", "5", "--t", "2", "--s", "2"]);
    assert_eq!(code, 0);
    for side in ["x", "y"] {
        assert_eq!(r[side]["epsilon"], 2);
        assert_eq!(r[side]["fragments"].as_array().unwrap().len(), 25);
        assert_eq!(r[side]["nontrivial"], 5);
    }
}

#[test]
fn size_estimate_grid_has_no_violations() {
    let (code, r) = report(&["fragments", "--grid", "claim3", "--pmax", "3", "--nmax", "9"]);
    assert_eq!(code, 0);
    assert_eq!(r["cells"], 15152);
    assert_eq!(r["excluded"], 6992);
    assert_eq!(r["violations"], 0);
}

#[test]
fn h_polynomial_inequality() {
    let (code, r) = report(&[
        "fragments",
        "--h-poly",
        "--n",
        "5,5",
        "--s",
        "2,2",
        "--t",
        "2,2",
        "--j",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["lhs"], "80");
    assert_eq!(r["rhs"], "92");
    assert_eq!(r["strict"], true);
}

#[test]
fn config_file_ranges_expand_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.conf");
    std::fs::write(
        &path,
        "command = pairmax\nn1 = 5..7\nt = 2\ns = 2\nconstruction = remark2\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, doc) = json(&["run", "--config", p]);
    assert_eq!(code, 0);
    assert_eq!(doc["command"], "pairmax");
    let ns: Vec<_> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["n"][0].clone())
        .collect();
    assert_eq!(ns, [5, 6, 7]);

    let (code, doc) = json(&["pairmax", "--config", p, "--n", "6", "--construction", "star"]);
    assert_eq!(code, 0);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 1);
    assert_eq!(doc["reports"][0]["construction"]["name"], "star");
}

#[test]
fn reports_go_to_the_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = crossfam(&[
        "alpha",
        "--n",
        "5..6",
        "--k",
        "2",
        "--output",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    let col = header.iter().position(|h| h == "alpha_formula").unwrap();
    let alphas: Vec<String> = rows.records().map(|r| r.unwrap()[col].to_string()).collect();
    assert_eq!(alphas, ["4", "5"]);
}

#[test]
fn exit_codes() {
    assert_eq!(crossfam(&["--help"]).status.code(), Some(0));
    assert_eq!(crossfam(&["--version"]).status.code(), Some(0));
    assert_eq!(crossfam(&["alpha", "--bogus"]).status.code(), Some(1));
    assert_eq!(crossfam(&["alpha", "--n", "5"]).status.code(), Some(1));
    assert_eq!(crossfam(&["alpha", "--n", "3", "--k", "2"]).status.code(), Some(1));
    assert_eq!(
        crossfam(&["crossmax", "--n", "3", "--k", "2", "--m", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        crossfam(&["fragments", "--n", "5,5", "--t", "2,2", "--s", "2,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(crossfam(&["run"]).status.code(), Some(1));
    assert_eq!(
        crossfam(&["pairmax", "--n", "6", "--t", "2", "--s", "2", "--exhaustive"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_is_identical_across_thread_counts() {
    let runs: [&[&str]; 3] = [
        &[
            "crossmax",
            "--n",
            "4,2",
            "--k",
            "2,1",
            "--m",
            "2..3",
            "--exhaustive",
            "--random",
            "300",
            "--seed",
            "9",
        ],
        &[
            "pairmax",
            "--n",
            "5..7",
            "--t",
            "2",
            "--s",
            "2..3",
            "--exhaustive",
            "--random",
            "300",
            "--seed",
            "4",
        ],
        &["fragments", "--n", "6", "--t", "2", "--s", "3"],
    ];
    for args in runs {
        let bytes = |threads: &str| {
            let mut all = args.to_vec();
            all.extend(["--output", "json", "--threads", threads]);
            crossfam(&all).stdout
        };
        let one = bytes("1");
        assert!(!one.is_empty());
        assert_eq!(one, bytes("4"), "{args:?}");
        assert_eq!(one, bytes("3"), "{args:?}");
    }
}
