use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fibsnow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibsnow"))
        .args(args)
        .output()
        .expect("failed to run fibsnow")
}

fn stdout(args: &[&str]) -> String {
    let out = fibsnow(args);
    assert!(
        out.status.success(),
        "fibsnow {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn gen_prints_word_and_length() {
    assert_eq!(stdout(&["gen", "--order", "1"]), "RLLRLLRLLRL\nlength 11\n");
    assert_eq!(
        stdout(&["gen", "--order", "5", "--word", "qn"]),
        "RLLRL\nlength 5\n"
    );
    assert_eq!(
        stdout(&["gen", "--order", "0", "--word", "qn"]),
        "\nlength 0\n"
    );
}

#[test]
fn gen_piped_to_trace_reproduces_snowflake() {
    for order in 0..=4 {
        let word = stdout(&["gen", "--order", &order.to_string()]);
        let mut child = Command::new(env!("CARGO_BIN_EXE_fibsnow"))
            .args(["trace", "--stdin"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(word.as_bytes())
            .unwrap();
        let out = child.wait_with_output().unwrap();
        assert!(out.status.success());
        let traced: Value = serde_json::from_slice(&out.stdout).unwrap();
        let snowflake = json(&["snowflake", "--order", &order.to_string()]);
        assert_eq!(traced["vertices"], snowflake["vertices"], "order {order}");
        assert_eq!(traced["closed"], true);
        assert_eq!(traced["non_intersecting"], true);
    }
}

#[test]
fn trace_classifies_words() {
    let v = json(&["trace", "--word", "LLLRLLL"]);
    assert_eq!(v["closed"], true);
    assert_eq!(v["non_intersecting"], false);
    assert_eq!(v["segments"], 8);
    let v = json(&["trace", "--word", "LLL"]);
    assert_eq!(
        v["vertices"],
        serde_json::json!([{"x":0,"y":0},{"x":1,"y":0},{"x":1,"y":1},{"x":0,"y":1},{"x":0,"y":0}])
    );
}

#[test]
fn verify_passes_and_reports_rows() {
    let table = stdout(&["verify", "--max-order", "5"]);
    assert_eq!(table.lines().count(), 7);
    assert_eq!(table.matches("PASS").count(), 6);
    assert!(table.contains("3948"));
}

#[test]
fn invalid_input_exits_nonzero() {
    for args in [
        vec!["gen", "--order", "13"],
        vec!["snowflake", "--order", "99"],
        vec!["trace", "--word", "LXR"],
        vec!["verify", "--max-order", "13"],
        vec!["crofton", "--order", "1", "--samples", "10"],
        vec!["boxdim", "--order", "6", "--kmax", "9"],
        vec!["gen"],
        vec!["frobnicate"],
    ] {
        let out = fibsnow(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty());
    }
    let out = fibsnow(&["render", "--order", "1", "--out", "/nonexistent-dir/x.svg"]);
    assert!(!out.status.success());
}

#[test]
fn render_writes_one_polyline_per_vertex_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pi3.svg");
    stdout(&[
        "render",
        "--order",
        "3",
        "--out",
        file.to_str().unwrap(),
        "--size",
        "512",
        "--stroke-width",
        "0.5",
    ]);
    let text = std::fs::read_to_string(&file).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed SVG");
    let root = doc.root_element();
    assert_eq!(root.attribute("width"), Some("512"));
    let polylines: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .collect();
    assert_eq!(polylines.len(), 1);
    assert_eq!(polylines[0].attribute("stroke-width"), Some("0.5"));
    let points = polylines[0]
        .attribute("points")
        .unwrap()
        .split_whitespace()
        .count();
    assert_eq!(points, 221);
}

#[test]
fn crofton_json_and_csv() {
    let v = json(&[
        "crofton",
        "--order",
        "1",
        "--samples",
        "20000",
        "--seed",
        "3",
    ]);
    let c = &v["crofton"];
    assert_eq!(v["config"]["seed"], 3);
    assert_eq!(c["samples"]["value"], 20000);
    assert_eq!(c["entropy"]["unit"], "nats");
    let analytic = c["analytic_mean"]["value"].as_f64().unwrap();
    assert!((analytic - 24.0 / (4.0 + 4.0 * 2f64.sqrt())).abs() < 1e-12);

    let csv = stdout(&[
        "crofton",
        "--order",
        "1",
        "--samples",
        "20000",
        "--seed",
        "3",
        "--format",
        "csv",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("j,count,probability"));
    let rows: Vec<(u32, u64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 20000);
    let hist = c["histogram"].as_array().unwrap();
    assert_eq!(hist.len(), rows.len());
}

#[test]
fn boxdim_order_eight() {
    let v = json(&["boxdim", "--order", "8"]);
    let slope = v["fit"]["slope"].as_f64().unwrap();
    assert!((1.55..=1.72).contains(&slope));
    assert_eq!(v["fit"]["k_range"], serde_json::json!([2, 8]));
    assert_eq!(v["series"]["entries"].as_array().unwrap().len(), 7);
}

#[test]
fn report_out_file_and_fields() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    stdout(&[
        "report",
        "--order",
        "5",
        "--samples",
        "5000",
        "--seed",
        "1",
        "--out",
        file.to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["config"]["samples"], 5000);
    let orders = v["orders"].as_array().unwrap();
    assert_eq!(orders.len(), 6);
    assert!(orders[0]["mean_growth_ratio"].is_null());
    assert!(orders[4]["dimension"].is_null());
    assert!(orders[5]["dimension"]["fit"]["slope"].is_number());
    for o in orders {
        assert_eq!(o["pell_check"], true);
        assert_eq!(o["path_length"], o["expected_path_length"]);
        assert_eq!(o["hull_perimeter"]["unit"], "lattice units");
    }
}
