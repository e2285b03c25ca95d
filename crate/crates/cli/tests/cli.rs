// Copyright 2026 The brickqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::process::Command;

use brickqec::acceptance::{run_suite, SuiteOptions};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = brickqec::run(
        std::iter::once("brickqec").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header
        .iter()
        .position(|h| *h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("brickqec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn zfunc_anchor_value() {
    let (code, out, _) = run(&[
        "zfunc", "--a", "1", "--b", "2", "--m", "2", "--depth", "1", "--f", "1",
    ]);
    assert_eq!(code, 0);
    let z: f64 = column(&out, "Z")[0].parse().unwrap();
    assert!((z - 5.76).abs() < 1e-12, "{z}");
    let (_, out, _) = run(&[
        "zfunc", "--a", "1", "--b", "2", "--m", "2", "--depth", "1", "--f", "1", "--exact",
    ]);
    assert_eq!(column(&out, "Z_exact"), ["144/25"]);
}

#[test]
fn zfunc_columns_and_profile() {
    let (code, out, _) = run(&[
        "zfunc",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "2",
        "--depth",
        "2",
        "--f",
        "0.5",
        "--profile",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n,k,a,b,m,D,s,f,lambda,weighting,Z,Z_inf,bound,choi_bound,"));
    assert_eq!(column(&out, "s"), ["0", "1", "2", "3", "4"]);
}

#[test]
fn zfunc_depth_zero_warns_but_computes() {
    let (code, out, err) = run(&[
        "zfunc", "--a", "1", "--b", "2", "--m", "2", "--depth", "0", "--f", "1", "--exact",
    ]);
    assert_eq!(code, 0);
    assert!(err.contains("below 1-design depth"), "{err}");
    // Only the initial configurations: 2^{-k}·(1 + λ)^k / ... evaluated exactly.
    assert_eq!(column(&out, "Z_exact"), ["64/9"]);
}

#[test]
fn malformed_config_names_the_field() {
    let path = tmp("bad.json");
    std::fs::write(
        &path,
        r#"{"layout": {"a": 1, "b": 2, "m": 2}, "noise": {"kind": "pauli", "params": [0.5, "x"]}}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["zfunc", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("noise.params"), "{err}");

    std::fs::write(&path, r#"{"layout": {"a": 1, "b": 2, "m": 2}, "depht": 3}"#).unwrap();
    let (code, _, err) = run(&["zfunc", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("depht"), "{err}");

    let (code, _, err) = run(&[
        "zfunc", "--a", "2", "--b", "2", "--m", "2", "--depth", "1", "--f", "1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("layout") || err.contains("a"), "{err}");
}

#[test]
fn config_file_drives_a_run() {
    let path = tmp("good.json");
    std::fs::write(
        &path,
        r#"{"layout": {"a": 1, "b": 2, "m": [2, 3]}, "depth": [1, 2], "noise": {"kind": "strength", "params": [1]},
            "weighting": {"kind": "aqec"}, "output": {"format": "jsonl"}}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["zfunc", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("{\"n\":4,"), "{}", lines[0]);
    assert!(lines[0].contains("\"Z\":5.7599999999999998"), "{}", lines[0]);
}

#[test]
fn bounds_infinite_depth_and_hypothesis() {
    let (code, out, _) = run(&["bounds", "--a", "1", "--b", "2", "--m", "2", "--f", "1"]);
    assert_eq!(code, 0);
    let z: f64 = column(&out, "Z_inf")[0].parse().unwrap();
    assert!((z - 80.0 / 17.0).abs() < 1e-14, "{z}");
    let (code, _, err) = run(&[
        "bounds", "--a", "1", "--b", "2", "--m", "2", "--f", "1", "--depth", "4",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("1 − k/n"), "{err}");
}

#[test]
fn bounds_one_row_per_size_and_depth() {
    let (code, out, _) = run(&[
        "bounds", "--a", "1", "--b", "4", "--m", "2,4,8", "--depth", "4,8", "--f", "0.5", "--c", "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "n"), ["8", "8", "16", "16", "32", "32"]);
    assert_eq!(column(&out, "D"), ["4", "8", "4", "8", "4", "8"]);
    assert!(column(&out, "informal_scaling").iter().all(|s| !s.is_empty()));
    let (code, out, _) = run(&[
        "bounds",
        "--a",
        "1",
        "--b",
        "4",
        "--m",
        "4",
        "--depth",
        "8",
        "--weighting",
        "qec",
        "--d",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "weighting"), ["qec"]);
}

#[test]
fn oracle_small_grid_and_guard() {
    let (code, out, err) = run(&[
        "oracle", "--a", "1", "--b", "2", "--m", "2,3", "--depth", "0,1,2,3",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(column(&out, "agree").iter().all(|s| s == "true"));
    assert!(column(&out, "breakdown_ok").iter().all(|s| s == "true"));
    let modes = column(&out, "mode");
    let errs = column(&out, "rel_err");
    for (m, e) in modes.iter().zip(&errs) {
        if m == "rational" {
            assert_eq!(e, "0");
        }
    }
    let (code, _, err) = run(&["oracle", "--a", "1", "--b", "2", "--m", "5", "--depth", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("layout"), "{err}");
}

#[test]
fn oracle_trajectory_export() {
    let path = tmp("traj.jsonl");
    let (code, _, _) = run(&[
        "oracle",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "2",
        "--depth",
        "1",
        "--trajectories",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!lines.is_empty());
    for l in &lines {
        assert_eq!(l["configs"].as_array().unwrap().len(), 3);
        assert_eq!(l["events"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn sample_depth_zero_always_fails() {
    let (code, out, _) = run(&[
        "sample",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "2",
        "--depth",
        "0",
        "--d",
        "1",
        "--samples",
        "50",
    ]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "mean"), ["1"]);
    assert_eq!(column(&out, "stderr"), ["0"]);
}

#[test]
fn sample_n16_below_partition_function() {
    let args = [
        "sample",
        "--a",
        "1",
        "--b",
        "4",
        "--m",
        "4",
        "--depth",
        "16",
        "--d",
        "1",
        "--samples",
        "2000",
        "--seed",
        "3",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let mean: f64 = column(&out, "mean")[0].parse().unwrap();
    let se: f64 = column(&out, "stderr")[0].parse().unwrap();
    let bound: f64 = column(&out, "z_qec_bound")[0].parse().unwrap();
    assert!(mean <= bound + 4.0 * se, "{mean} ± {se} vs {bound}");
}

#[test]
fn sample_distance_and_tableau_dump() {
    let path = tmp("tab.jsonl");
    let (code, out, _) = run(&[
        "sample",
        "--a",
        "1",
        "--b",
        "4",
        "--m",
        "2",
        "--depth",
        "2",
        "--d",
        "1",
        "--samples",
        "20",
        "--distance-cap",
        "4",
        "--dump-tableau",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "light_cone_ok"), ["true"]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 20);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["tableau"].as_array().unwrap().len(), 16);
}

#[test]
fn reruns_are_byte_identical_across_workers() {
    let base = [
        "sample",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "3",
        "--depth",
        "1,2",
        "--d",
        "1",
        "--samples",
        "400",
        "--seed",
        "99",
    ];
    let outs: Vec<String> = ["1", "2", "5", "1"]
        .iter()
        .map(|w| {
            let mut args = base.to_vec();
            args.extend(["--workers", w]);
            run(&args).1
        })
        .collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn worker_count_from_environment() {
    let bin = env!("CARGO_BIN_EXE_brickqec");
    let args = [
        "mc-choi",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "2",
        "--depth",
        "1",
        "--f",
        "1",
        "--samples",
        "300",
        "--seed",
        "4",
    ];
    let a = Command::new(bin)
        .args(args)
        .env("BRICKQEC_WORKERS", "1")
        .output()
        .unwrap();
    let b = Command::new(bin)
        .args(args)
        .env("BRICKQEC_WORKERS", "3")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mc_choi_check_mode() {
    let (code, out, err) = run(&[
        "mc-choi",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "2",
        "--depth",
        "1",
        "--pauli",
        "1,0,0,0",
        "--samples",
        "100",
        "--check",
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(column(&out, "mc_mean"), ["1"]);
    let (code, _, _) = run(&[
        "mc-choi",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "3",
        "--depth",
        "1",
        "--f",
        "1",
        "--samples",
        "10",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[
        "mc-choi",
        "--a",
        "1",
        "--b",
        "2",
        "--m",
        "2",
        "--depth",
        "1",
        "--erasure",
        "0.1",
        "--samples",
        "10",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn scan_trend() {
    let (code, out, _) = run(&["scan"]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "n").len(), 7);
    assert!(column(&out, "decreasing").iter().all(|s| s == "true"));
    assert_eq!(column(&out, "below_one").last().unwrap(), "true");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_brickqec");
    let ok = Command::new(bin)
        .args(["bounds", "--a", "1", "--b", "2", "--m", "2", "--f", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["zfunc", "--a", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let unknown = Command::new(bin)
        .args(["zfunc", "--frobnicate"])
        .output()
        .unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let failing = Command::new(bin)
        .args(["selftest", "--only", "1", "--mutate-transfer"])
        .output()
        .unwrap();
    assert_eq!(failing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&failing.stdout).contains("[FAIL] criterion  1"));
}

#[test]
fn mutated_transfer_factor_is_detected() {
    let mut opts = SuiteOptions::new(1);
    opts.only = vec![1, 2];
    opts.mutate_transfer = true;
    let results = run_suite(&opts, |_| {});
    assert!(results.iter().any(|r| !r.within_tolerance));
    opts.mutate_transfer = false;
    let results = run_suite(&opts, |_| {});
    assert!(results.iter().all(|r| r.within_tolerance));
}

#[test]
fn four_two_two_reference_encoder() {
    use brickqec_core::brickwork::BlockLayout;
    use brickqec_core::codecheck::code_distance;
    let r = code_distance(
        &brickqec::acceptance::four_two_two(),
        &BlockLayout::new(1, 2, 2).unwrap(),
        4,
    )
    .unwrap();
    assert_eq!(r.distance, Some(2));
}
