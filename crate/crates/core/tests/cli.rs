//! The `genfermat` binary: exit codes, JSON output and file round trips.

use std::path::Path;
use std::process::{Command, Output};

use genfermat::arrangement::{lambda_to_arrangement, LambdaParams, ProjectiveMap};
use genfermat::ff::make_field;
use genfermat::serial::ArrangementFile;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn genfermat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genfermat")).args(args).env_remove("GENFERMAT_BUDGET").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = genfermat(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const QUARTIC: [&str; 10] = ["--d", "2", "--k", "4", "--n", "3", "--p", "5", "--lambda", ""];

#[test]
fn classify_reports_the_exceptional_types() {
    let v = json(&["classify", "--d", "2", "--k", "4", "--n", "3", "--p", "3"]);
    assert_eq!(v["exceptional_type"], true);
    assert_eq!(v["theorem_applies"], false);
    let v = json(&["classify", "--d", "2", "--k", "3", "--n", "4", "--p", "7"]);
    assert_eq!(v["theorem_applies"], true);
    assert_eq!(v["exceptional_type"], false);
    let v = json(&["classify", "--d", "1", "--k", "3", "--n", "3", "--p", "2"]);
    assert_eq!(v["k_minus_1_not_p_power"], false);
}

#[test]
fn lucas_witnesses() {
    assert_eq!(json(&["lucas", "--k", "7", "--p", "2"])["witness"], 2);
    assert_eq!(json(&["lucas", "--k", "9", "--p", "2"])["witness"], Value::Null);
    assert_eq!(code(&genfermat(&["lucas", "--k", "7", "--p", "4"])), 2);
}

#[test]
fn quartic_lin_and_uniqueness() {
    let mut args = vec!["lin"];
    args.extend_from_slice(&QUARTIC);
    let v = json(&args);
    assert_eq!(v["order"], 1536);
    assert_eq!(v["symmetry_order"], 24);
    assert_eq!(v["closure_verified"], true);
    args[0] = "unique";
    let v = json(&args);
    // the Fermat quartic surface is an exceptional type; the oracle still finds one subgroup
    assert_eq!(v["verdict"], "EXCEPTIONAL_TYPE");
    assert_eq!(v["oracle"]["count"], 1);
}

#[test]
fn conic_points() {
    let v = json(&["points", "--d", "1", "--k", "2", "--n", "2", "--p", "3", "--list"]);
    assert_eq!(v["count"], 4);
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
}

#[test]
fn model_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    let p = path.to_str().unwrap();
    let inline = ["--d", "2", "--k", "3", "--n", "4", "--p", "7", "--random", "--seed", "5"];
    let mut build = vec!["build"];
    build.extend_from_slice(&inline);
    build.extend_from_slice(&["--out", p]);
    assert_eq!(code(&genfermat(&build)), 0);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["k"], 3);
    for cmd in ["points", "lin", "unique", "deck", "moduli"] {
        let mut a = vec!["--format", "json", cmd];
        a.extend_from_slice(&inline);
        let mut b = vec!["--format", "json", cmd, "--model", p];
        if cmd == "moduli" {
            b.truncate(5);
        }
        let (x, y) = (genfermat(&a), genfermat(&b));
        assert_eq!(code(&x), 0, "{cmd}");
        assert_eq!(x.stdout, y.stdout, "{cmd}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let base = [
        "--format", "json", "smooth", "--d", "2", "--k", "3", "--n", "4", "--p", "7", "--lambda", "2,3", "--ext", "1,2",
    ];
    let one = genfermat(&[&base[..], &["--jobs", "1"]].concat());
    let many = genfermat(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn budget_flag_and_environment() {
    let args = ["points", "--d", "2", "--k", "3", "--n", "4", "--p", "7", "--lambda", "2,3"];
    assert_eq!(code(&genfermat(&args)), 0);
    assert_eq!(code(&genfermat(&[&args[..], &["--budget", "5"]].concat())), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_genfermat")).args(args).env("GENFERMAT_BUDGET", "5").output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget") || !out.stderr.is_empty());
    // an explicit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_genfermat"))
        .args([&args[..], &["--budget", "100000"]].concat())
        .env("GENFERMAT_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn singular_models_fail_the_smoothness_check() {
    let args = ["smooth", "--d", "2", "--k", "3", "--n", "4", "--p", "7", "--lambda", "1,1"];
    assert_eq!(code(&genfermat(&args)), 2);
    assert_eq!(code(&genfermat(&[&args[..], &["--unchecked"]].concat())), 1);
}

#[test]
fn bad_usage_exits_with_two() {
    assert_eq!(code(&genfermat(&[])), 2);
    assert_eq!(code(&genfermat(&["frobnicate"])), 2);
    assert_eq!(code(&genfermat(&["points", "--d", "2"])), 2);
    assert_eq!(code(&genfermat(&["points", "--d", "1", "--k", "2", "--n", "2", "--p", "3", "--budget", "0"])), 2);
    assert_eq!(code(&genfermat(&["build", "--d", "1", "--k", "3", "--n", "2", "--p", "3"])), 2);
    assert_eq!(code(&genfermat(&["lin", "--model", "/nonexistent/model.json"])), 2);
    assert_eq!(code(&genfermat(&["--help"])), 0);
}

fn write_arrangement(path: &Path, arr: &genfermat::Arrangement) {
    std::fs::write(path, serde_json::to_string(&ArrangementFile::from_arrangement(arr)).unwrap()).unwrap();
}

#[test]
fn arrangement_files_normalize_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let f = make_field(11, 1).unwrap();
    let lambda = LambdaParams::new(&f, 2, 5, vec![vec![2, 3], vec![4, 9]]).unwrap();
    assert!(genfermat::membership_xnd(&lambda));
    let arr = lambda_to_arrangement(&lambda).unwrap();
    let moved = arr.apply(&ProjectiveMap::random(&f, 2, &mut ChaCha8Rng::seed_from_u64(1)));
    let shuffled = moved.permuted(&[5, 4, 3, 2, 1, 0]).unwrap();
    let (pa, pb, pc) = (dir.path().join("a.json"), dir.path().join("b.json"), dir.path().join("c.json"));
    write_arrangement(&pa, &arr);
    write_arrangement(&pb, &moved);
    write_arrangement(&pc, &shuffled);

    let v = json(&["normalize", "--arrangement", pb.to_str().unwrap()]);
    assert_eq!(v["lambda"], serde_json::to_value(&lambda).unwrap());

    let (a, b, c) = (pa.to_str().unwrap(), pb.to_str().unwrap(), pc.to_str().unwrap());
    assert_eq!(json(&["equiv", "--a", a, "--b", b, "--mode", "labeled"])["equivalent"], true);
    assert_eq!(json(&["equiv", "--a", a, "--b", c, "--mode", "labeled"])["equivalent"], false);
    let v = json(&["equiv", "--a", a, "--b", c]);
    assert_eq!(v["equivalent"], true);
    // the arrangement may have symmetries, so any permutation is a valid witness
    let mut perm: Vec<u64> = v["witness_permutation"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    perm.sort_unstable();
    assert_eq!(perm, (0..6).collect::<Vec<u64>>());

    let inline = json(&["normalize", "--d", "2", "--p", "11", "--covectors", "1,0,0;0,1,0;0,0,1;1,1,1;2,3,1;4,9,1"]);
    assert_eq!(inline["lambda"], v_lambda(&lambda));
}

fn v_lambda(l: &LambdaParams) -> Value {
    serde_json::to_value(l).unwrap()
}

#[test]
fn quadratic_field_of_moduli() {
    // GF(4) = GF(2)[t], element t given as 0:1
    let v = json(&["moduli", "--d", "1", "--n", "3", "--p", "2", "--m", "2", "--lambda", "0:1"]);
    assert_eq!(v["entry_field_degree"], 2);
    assert!(v["e"] == 1 || v["e"] == 2);
}
