//! End-to-end exercises of the command-line surface: subcommands, JSON
//! output, the edge-list format, SVG rendering, and the result cache.

use std::path::Path;

use gridlam::cache::RunRecord;
use gridlam::cli::dispatch;
use gridlam::lambda::{lambda_raw, Coloring};

fn run(args: &[&str]) -> i32 {
    dispatch(std::iter::once("gridlam").chain(args.iter().copied()))
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn min_draw_k14_reports_unit_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let code = run(&[
        "min-draw",
        "--dim",
        "1",
        "--half-width",
        "2",
        "--classes",
        "1,4",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["lambda"], "1/1");
    assert_eq!(value["method"], "ring_heuristic");
    // the witness re-evaluates to the reported lambda
    let witness: Coloring = serde_json::from_value(value["witness"].clone()).unwrap();
    assert_eq!(
        gridlam::lambda::lambda_string(&lambda_raw(&witness).unwrap()),
        "1/1"
    );
}

#[test]
fn intconn_prop9_reports_paper_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let code = run(&["intconn", "--graph", "prop9", "--json", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    // canonical reduced form of 8/10, with the unreduced pair alongside
    assert_eq!(value["lambda2_int"], "4/5");
    assert_eq!(value["energy"], 8);
    assert_eq!(value["second_moment"], 10);
}

#[test]
fn spectrum_closed_form_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let code = run(&["spectrum", "--classes", "1,2,2", "--json", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["eigenvalues"], serde_json::json!([0, 3, 3, 5, 5]));
}

#[test]
fn max_draw_exact_small_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let code = run(&[
        "max-draw",
        "--dim",
        "1",
        "--half-width",
        "1",
        "--classes",
        "1,2",
        "--exact",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["lambda"], "5/2");
    assert_eq!(value["voronoi_violations"], 0);
    assert_eq!(value["decomposition_holds"], true);
}

#[test]
fn lambda_subcommand_reads_coloring_json() {
    let dir = tempfile::tempdir().unwrap();
    let coloring = dir.path().join("coloring.json");
    std::fs::write(
        &coloring,
        r#"{"dim":1,"half_width":2,"classes":[[[-1],[1]],[[-2],[0],[2]]]}"#,
    )
    .unwrap();
    let out = dir.path().join("result.json");
    let code = run(&[
        "lambda",
        "--coloring",
        coloring.to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["lambda"], "11/5");
    assert_eq!(value["second_moment"], 10);
}

#[test]
fn graph_from_edge_list_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("triangle_tail.txt");
    std::fs::write(&graph, "5\n1 2\n1 3\n2 3\n3 4\n4 5\n").unwrap();
    let out = dir.path().join("result.json");
    let code = run(&[
        "intconn",
        "--graph",
        graph.to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(read_json(&out)["lambda2_int"], "4/5");
}

#[test]
fn brute_colorings_and_bijections() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("colorings.json");
    let code = run(&[
        "brute",
        "--dim",
        "1",
        "--half-width",
        "2",
        "--classes",
        "2,3",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["visited"], 10);
    assert_eq!(value["min_lambda"], "11/5");

    let out = dir.path().join("bijections.json");
    let code = run(&["brute", "--graph", "cycle:4", "--json", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["visited"], 12);
    assert_eq!(value["min_lambda"], "2/1");
}

#[test]
fn cartesian_and_hypercube_drawings() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cart.json");
    let code = run(&[
        "cartesian-draw",
        "--left",
        "cycle:3",
        "--right",
        "path:3",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["bound"], "6/5");
    assert_eq!(value["drawing"]["lambda"], "6/5");

    let out = dir.path().join("cube.json");
    let code = run(&["hypercube-draw", "--k", "3", "--json", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let value = read_json(&out);
    assert_eq!(value["drawing"]["lambda"], "2/1");
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let coloring = dir.path().join("coloring.json");
    std::fs::write(
        &coloring,
        r#"{"dim":2,"half_width":1,"classes":[[[0,0]],[[-1,-1],[-1,0],[-1,1],[0,-1],[0,1],[1,-1],[1,0],[1,1]]]}"#,
    )
    .unwrap();
    let svg = dir.path().join("out.svg");
    let code = run(&[
        "render",
        "--coloring",
        coloring.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<rect").count(), 10);
}

#[test]
fn cache_updates_only_on_improvement() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    // exact run caches the optimum
    let code = run(&[
        "max-draw",
        "--dim",
        "1",
        "--half-width",
        "2",
        "--classes",
        "2,3",
        "--exact",
        "--cache",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let first = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(first.lines().count(), 1);
    // a second identical run cannot improve, so the cache is unchanged
    let code = run(&[
        "max-draw",
        "--dim",
        "1",
        "--half-width",
        "2",
        "--classes",
        "2,3",
        "--exact",
        "--cache",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let second = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(first, second);
    // the cached witness re-evaluates to the recorded lambda
    let line: serde_json::Value = serde_json::from_str(first.lines().next().unwrap()).unwrap();
    let record: RunRecord = serde_json::from_value(line["record"].clone()).unwrap();
    let witness: Coloring = serde_json::from_value(record.witness.clone()).unwrap();
    let lambda = lambda_raw(&witness).unwrap();
    assert_eq!(gridlam::lambda::lambda_string(&lambda), record.lambda);
}

#[test]
fn exit_codes_match_contract() {
    // 2: argument errors
    assert_eq!(run(&["spectrum"]), 1); // valid args, but neither input given
    assert_eq!(run(&["min-draw", "--classes", "1,2"]), 2); // missing half-width
    assert_eq!(run(&["bogus"]), 2);
    // 1: infeasible instance
    assert_eq!(
        run(&["min-draw", "--dim", "1", "--half-width", "3", "--classes", "1,2"]),
        1
    );
    assert_eq!(run(&["intconn", "--graph", "path:9", "--limit", "10"]), 1);
}
