//! Black-box tests of the command-line interface: exit-status contract,
//! deterministic reports, and well-formed figures.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyarea"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn stars_svg_draws_exactly_n_edges() {
    for (n, args) in [(7, vec!["--w", "2"]), (8, vec!["--fold"]), (5, vec!["--w", "-2"])] {
        let mut full = vec!["stars", "--n"];
        let n_text = n.to_string();
        full.push(&n_text);
        full.extend(args.iter().copied());
        full.extend(["--svg", "-"]);
        let out = run(&full);
        assert!(out.status.success());
        let svg = stdout(&out);
        assert!(svg.starts_with("<?xml version=\"1.0\""));
        assert!(svg.contains("</svg>"));
        let edges = svg.matches("class=\"edge\"").count();
        assert_eq!(edges, n, "figure must contain one edge element per side");
    }
}

#[test]
fn stars_json_lists_unit_perimeter_vertices() {
    let out = run(&["stars", "--n", "5", "--w", "-2", "--json", "-"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["schema_version"], 1);
    let body = &report["body"];
    assert_eq!(body["kind"], "stars");
    assert_eq!(body["winding"], -2);
    assert_eq!(body["vertices"].as_array().unwrap().len(), 5);
    let perimeter = body["perimeter"].as_f64().unwrap();
    assert!((perimeter - 1.0).abs() < 1e-12);
}

#[test]
fn stars_rejects_invalid_specs() {
    assert!(!run(&["stars", "--n", "5", "--fold", "--svg", "-"]).status.success());
    assert!(!run(&["stars", "--n", "5", "--w", "3", "--svg", "-"]).status.success());
    assert!(!run(&["stars", "--n", "20", "--w", "1", "--svg", "-"]).status.success());
}

#[test]
fn verify_passes_and_honours_exit_status() {
    let out = run(&["verify", "--n", "4..5", "--suite", "indices,equilat", "--out", "-"]);
    assert!(out.status.success(), "default tolerances must verify");
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["body"]["all_passed"], true);

    // An absurdly tight stationarity tolerance must flip the exit status.
    let out = run(&[
        "verify", "--n", "4..5", "--suite", "indices", "--tol-gradient", "1e-30", "--out", "-",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_rejects_bad_ranges() {
    assert_eq!(run(&["verify", "--n", "3..5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "4..13"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_emits_the_fixed_csv_header() {
    let dir = std::env::temp_dir().join("polyarea-cli-test-csv");
    let csv_path = dir.join("index.csv");
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&[
        "verify", "--n", "4..4", "--suite", "indices",
        "--out", "-",
        "--csv", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,label,winding,predicted_index,computed_index,min_rel_eigenvalue,grad_norm"
    );
    // n = 4 has three catalogue rows.
    assert_eq!(lines.count(), 3);
}

#[test]
fn solve_reports_are_deterministic_up_to_the_timestamp() {
    let args = ["solve", "--n", "4", "--seeds", "50", "--rng", "7", "--out", "-"];
    let strip = |text: String| -> String {
        text.lines().filter(|l| !l.contains("unix_time_s")).collect::<Vec<_>>().join("\n")
    };
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success() && second.status.success());
    assert_eq!(strip(stdout(&first)), strip(stdout(&second)));
    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid json");
    let classes = report["body"]["outcome"]["reports"].as_array().unwrap();
    assert_eq!(classes.len(), 3, "n = 4 has exactly three critical classes");
}

#[test]
fn ascending_flows_are_monotone_and_find_the_convex_star() {
    let out = run(&["flow", "--n", "5", "--count", "40", "--ascend", "--out", "-"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let body = &report["body"];
    let converged = body["converged"].as_u64().unwrap();
    assert_eq!(body["monotone"].as_u64().unwrap(), converged);
    let histogram = body["histogram"].as_array().unwrap();
    let top = histogram
        .iter()
        .max_by_key(|entry| entry[1].as_u64().unwrap())
        .expect("non-empty histogram");
    assert_eq!(top[0], "S(5,1)");
    assert!(top[1].as_u64().unwrap() as f64 >= 0.95 * converged as f64);
}

#[test]
fn extensions_report_covers_the_whole_catalogue() {
    let out = run(&["extensions", "--n", "4..6", "--out", "-"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let rows = report["body"]["rows"].as_array().unwrap();
    // Catalogue sizes 3 + 4 + 5.
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["pass"] == true));
}
