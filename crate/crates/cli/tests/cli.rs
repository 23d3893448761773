use std::process::{Command, Output};

use serde_json::Value;

fn wdc(args: &[&str]) -> Output {
    wdc_env(args, &[])
}

fn wdc_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wdc"));
    cmd.args(args).env_remove("WDC_MAX_GRID_POINTS").env_remove("WDC_SLOW");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("wdc runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = wdc(args);
    assert!(
        out.status.success(),
        "wdc {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Vec<Value> {
    let mut full = args.to_vec();
    full.push("--json");
    serde_json::from_str::<Value>(&ok(&full)).unwrap().as_array().unwrap().clone()
}

fn code(args: &[&str]) -> i32 {
    wdc(args).status.code().unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn lbar_prints_the_chain_to_the_fixpoint() {
    assert_eq!(ok(&["lbar", "--N", "6", "--d", "2", "--set", "1,3,5"]), "0-1,3,5-6 → fixpoint 0-6\n");
    // a fixed set has no steps
    assert_eq!(ok(&["lbar", "--N", "6", "--d", "2", "--set", "t:2"]), "fixpoint 0-1,5-6\n");
    let rows = json(&["lbar", "--N", "6", "--d", "2", "--set", "1,3,5"]);
    assert_eq!(rows[0]["chain"], serde_json::json!(["0-1,3,5-6", "0-6"]));
}

#[test]
fn closure_finds_the_center_of_the_cube_of_side_three() {
    let rows = json(&["closure", "--grid", "3,3,3", "--d", "3", "--set", "t:3", "--mode", "z"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["extra_points"], serde_json::json!(["(1,1,1)"]));
    assert_eq!(rows[0]["weight_core"], "0-2,4-6");
    let rows = json(&["closure", "--grid", "3,3,3", "--d", "3", "--set", "t:3"]);
    assert_eq!(rows[0]["closure"], "0-2,4-6");
}

#[test]
fn closure_basis_and_hilbert() {
    let rows = json(&["closure", "--grid", "cube:3", "--d", "1", "--set", "0", "--mode", "hilbert", "--basis"]);
    assert_eq!(rows[0]["value"], 1);
    assert_eq!(rows[0]["closed_form"], 1);
    assert_eq!(rows[0]["basis"], serde_json::json!(["X1", "X2", "X3"]));
}

#[test]
fn covers_sweep_on_the_five_cube() {
    let text = ok(&["covers", "--grid", "cube:5", "--all", "--csv"]);
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["E", "N", "pc", "ppc", "hc", "phc", "epc", "ehc_lower", "ehc_upper", "ehc_exact"]);
    assert_eq!(rows.len(), 63);
    for r in &rows {
        assert_eq!(r[1], "5");
        assert_eq!(r[2], r[4], "hc = pc: {r:?}");
        assert_eq!(r[3], r[5], "phc = ppc: {r:?}");
        assert_eq!(r[3], r[6], "epc = ppc: {r:?}");
    }
    let empty = rows.iter().find(|r| r[0] == "{}").unwrap();
    assert_eq!(empty[2..].join(","), "0,0,0,0,0,0,0,0");
    let t2 = rows.iter().find(|r| r[0] == "0-1,4-5").unwrap();
    assert_eq!(t2[2..].join(","), "2,2,2,2,2,2,2,2");
}

#[test]
fn sweeps_are_byte_stable() {
    let args = ["covers", "--grid", "cube:6", "--all", "--json"];
    assert_eq!(ok(&args), ok(&args));
    let args = ["hcover", "--grid", "3,3", "--all", "--csv"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn exact_cover_status_is_tagged() {
    let rows = json(&["covers", "--grid", "cube:6", "--set", "t:3"]);
    assert_eq!(rows[0]["ehc_exact"], serde_json::json!({"status": "conjectured", "value": 4}));
    let text = ok(&["covers", "--grid", "cube:6", "--set", "t:3", "--csv"]);
    assert!(text.lines().nth(1).unwrap().ends_with(",3,4,4?"), "{text}");
    let rows = json(&["covers", "--grid", "3,3", "--set", "0,4"]);
    assert_eq!(rows[0]["ehc_exact"], serde_json::json!({"status": "unknown"}));
    assert_eq!(rows[0]["hc"], Value::Null);
}

#[test]
fn oracle_columns_agree_with_formulas_on_small_cubes() {
    for n in ["2", "3", "4"] {
        let grid = format!("cube:{n}");
        let formula = json(&["covers", "--grid", &grid, "--all"]);
        let oracle = json(&["hcover", "--grid", &grid, "--all"]);
        assert_eq!(formula.len(), oracle.len());
        for (f, o) in formula.iter().zip(&oracle) {
            assert_eq!(f["E"], o["E"]);
            for col in ["pc", "ppc", "hc", "phc", "epc"] {
                assert_eq!(f[col], o[format!("oracle_{col}")], "{grid} E={} {col}", f["E"]);
            }
        }
    }
}

#[test]
fn witnesses() {
    let rows = json(&["witness", "--grid", "cube:6", "--kind", "t2"]);
    assert_eq!(rows[0]["degree"], 2);
    assert_eq!(rows[0]["E"], "0-1,5-6");
    let rows = json(&["witness", "--grid", "cube:4", "--kind", "ppc", "--set", "0,4"]);
    assert_eq!(rows[0]["degree"], 1);
    let rows = json(&["witness", "--grid", "3,3", "--kind", "ehc", "--set", "0,4"]);
    assert_eq!(rows[0]["degree"], 2);
    let rows = json(&["witness", "--grid", "cube:6", "--kind", "pairing", "--i", "2"]);
    assert_eq!(rows[0]["forms"], serde_json::json!(["X1*X3 - X1*X4 - X2*X3 + X2*X4"]));
    let rows = json(&["witness", "--grid", "2,3,4", "--kind", "t1"]);
    assert_eq!(rows[0]["E"], "0,6");
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(code(&["lbar", "--N", "6"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["lbar", "--N", "6", "--d", "2", "--set", "9"]), 2);
    assert_eq!(code(&["lbar", "--N", "6", "--d", "2", "--set", "1,x"]), 2);
    assert_eq!(code(&["layers", "--grid", "0,3"]), 2);
    assert_eq!(code(&["witness", "--grid", "cube:4", "--kind", "ppc"]), 2);
    assert_eq!(code(&["covers", "--grid", "cube:3", "--set", "1", "--csv", "--json"]), 2);
    // domain
    assert_eq!(code(&["covers", "--grid", "7,3", "--set", "1"]), 1);
    assert_eq!(code(&["covers", "--grid", "0,1,3|0,1,3", "--set", "1"]), 1);
    assert_eq!(code(&["covers", "--grid", "cube:4", "--set", "0-4"]), 1);
    assert_eq!(code(&["witness", "--grid", "3,3,3", "--kind", "t1"]), 1);
    assert_eq!(code(&["lbar", "--N", "30", "--d", "2", "--set", "all"]), 1);
    // verification
    assert_eq!(code(&["verify", "--criteria", "2,3,10"]), 0);
    assert_eq!(code(&["verify", "--criteria", "9"]), 3);
}

#[test]
fn grid_point_cap_comes_from_the_environment() {
    let args = ["closure", "--grid", "3,3,3", "--d", "1", "--set", "0"];
    assert_eq!(wdc_env(&args, &[("WDC_MAX_GRID_POINTS", "10")]).status.code(), Some(1));
    assert_eq!(wdc_env(&args, &[("WDC_MAX_GRID_POINTS", "27")]).status.code(), Some(0));
    assert_eq!(wdc_env(&args, &[("WDC_MAX_GRID_POINTS", "lots")]).status.code(), Some(2));
    let hc = ["hcover", "--grid", "3,3", "--set", "2"];
    assert_eq!(wdc_env(&hc, &[("WDC_MAX_GRID_POINTS", "8")]).status.code(), Some(1));
}

#[test]
fn layers_su2_and_admitting() {
    let (_, rows) = csv_rows(&ok(&["layers", "--grid", "3,3", "--csv"]));
    let sizes: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(sizes, ["1", "2", "3", "2", "1"]);
    let big = json(&["layers", "--grid", "cube:100"]);
    assert_eq!(big[50]["size"], "100891344545564193334812497256");
    assert_eq!(json(&["su2", "--grid", "7,3"])[0]["su2"], false);
    assert_eq!(json(&["su2", "--grid", "3,3,3"])[0]["su2_by_layers"], true);
    let rows = json(&["admitting", "--N", "6", "--set", "1,3,5"]);
    let first = rows.iter().find(|r| r["admitting"] == true).unwrap();
    assert_eq!((first["d"].clone(), first["i"].clone()), (3.into(), 0.into()));
}

#[test]
fn bench_reports_three_sizes() {
    let (header, rows) = csv_rows(&ok(&["bench", "--csv", "--reps", "1"]));
    assert_eq!(header, ["N", "micros"]);
    let sizes: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(sizes, ["10000", "100000", "1000000"]);
}
