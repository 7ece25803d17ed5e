use std::process::Command;

use serde_json::Value;

fn ptk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ptk")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> Value {
    let (code, out, err) = ptk(args);
    assert_eq!(code, 0, "{:?}: {}", args, err);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ptk_version"], env!("CARGO_PKG_VERSION"));
    v
}

const K2: &str = r#"{"kind":"k_subsets","k":2}"#;

#[test]
fn plegma_check_example() {
    let v = ok(&["plegma", "check", "--sets", "1,3;2,4"]);
    assert_eq!(v["plegma"], true);
    assert_eq!(ok(&["plegma", "check", "--sets", "1,3;4,5"])["plegma"], false);
}

#[test]
fn cesaro_example() {
    let v = ok(&["cesaro", "--k", "1", "--n", "2"]);
    assert_eq!(v["lower_bound"], "4/15");
    assert_eq!(v["norm"]["exact"], true);
    assert_eq!(v["bound_holds"], true);
    let w = ok(&["sm", "cesaro", "--k", "1", "--n", "2"]);
    assert_eq!(v, w);
}

#[test]
fn norm_eval_reads_files() {
    let dir = std::env::temp_dir().join(format!("ptk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v.json");
    std::fs::write(&path, r#"{"space":{"kind":"frak_x","k":1},"entries":[{"set":[1,2],"coeff":"1/3"},{"set":[2,3],"coeff":"0.5"}]}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = ok(&["norm", "eval", "--vector", p, "--method", "exact"]);
    assert_eq!(v["exact"], true);
    assert_eq!(v["lower"], "sqrt(13/36)");
    assert_eq!(v["witness"]["type"], "blocks");
    let b = ok(&["norm", "brute", "--vector", &format!("@{}", p)]);
    assert_eq!(b["lower"], v["lower"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let (code, out, err) = ptk(&["plegma", "nope"]);
    assert_eq!(code, 2);
    assert!(out.is_empty() && !err.is_empty());
    let (code, out, _) = ptk(&["family", "order", "--family", "{not json"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let (code, out, _) = ptk(&["plegma", "distance", "--family", K2, "--s0", "1", "--s", "3,4", "--n", "6"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "not_member");
}

#[test]
fn tolerance_flag() {
    let vector = r#"{"space":{"kind":"frak_x","k":1},"entries":[
        {"set":[1,2],"coeff":1},{"set":[2,3],"coeff":1},{"set":[2,4],"coeff":1},{"set":[3,4],"coeff":1},
        {"set":[3,5],"coeff":1},{"set":[4,5],"coeff":1},{"set":[4,6],"coeff":1},{"set":[5,6],"coeff":1}]}"#;
    let (code, out, _) = ptk(&["norm", "eval", "--vector", vector, "--method", "branch-bound", "--budget", "1"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "tolerance_unreachable");
    assert!(v["error"]["lower"].as_f64().unwrap() <= v["error"]["upper"].as_f64().unwrap());
    let v = ok(&["norm", "eval", "--vector", vector, "--method", "branch-bound", "--budget", "1", "--tol", "100"]);
    assert_eq!(v["exact"], false);
}

#[test]
fn max_n_flag() {
    let v = ok(&["family", "members", "--family", K2, "--max-n", "5"]);
    assert_eq!(v["count"], 10);
    let v = ok(&["family", "closure", "--family", K2, "--n", "3"]);
    assert_eq!(v["count"], 7);
}

#[test]
fn family_round_trip() {
    let v = ok(&["family", "transform", "--family", K2, "--op", "direct-sum", "--right", K2]);
    let fam = v["family"].to_string();
    let o = ok(&["family", "order", "--family", &fam]);
    assert_eq!(o["order"], "4");
    let r = ok(&["family", "transform", "--family", K2, "--op", "restrict", "--window", "2..20:2"]);
    let m = ok(&["family", "members", "--family", &r["family"].to_string(), "--n", "6"]);
    assert_eq!(m["members"], serde_json::json!([[2, 4], [2, 6], [4, 6]]));
    let c = ok(&["family", "check", "--family", K2, "--n", "8"]);
    assert_eq!(c["regular_thin"], "yes");
}

#[test]
fn plegma_commands() {
    let e = ok(&["plegma", "enum", "--family", r#"{"kind":"k_subsets","k":1}"#, "--l", "2", "--n", "4"]);
    assert_eq!(e["count"], 6);
    let p = ok(&["plegma", "path", "--family", K2, "--s0", "1,3", "--s", "5,9", "--window", "1..12"]);
    assert_eq!(p["length"], 2);
    let d = ok(&["plegma", "distance", "--family", K2, "--s0", "1,3", "--s", "5,9", "--n", "10"]);
    assert_eq!(d["distance"], 2);
    let s = ok(&["plegma", "skipped", "--family", K2, "--window", "1..5"]);
    assert_eq!(s["members"], serde_json::json!([[1, 3], [1, 4], [1, 5], [2, 4], [2, 5], [3, 5]]));
}

#[test]
fn ramsey_commands() {
    let k1 = r#"{"kind":"k_subsets","k":1}"#;
    let m = ok(&["ramsey", "mono", "--family", k1, "--l", "2", "--coloring", "parity-max", "--window", "1..30", "--target", "8"]);
    assert_eq!(m["status"], "found");
    assert_eq!(m["revalidated"], true);
    let p = ok(&["ramsey", "partition", "--family", K2, "--coloring", "parity-min", "--target", "5"]);
    assert_eq!(p["revalidated"], true);
    let d = ok(&["ramsey", "dense", "--sets", "1,2;1,3;2,4;3,5", "--l", "2"]);
    assert_eq!(d["tuple"], serde_json::json!([[1, 3], [2, 4]]));
    let e = ok(&["ramsey", "embed", "--family", k1, "--into", K2, "--n", "4"]);
    assert_eq!(e["status"], "found");
    assert_eq!(e["revalidated"], true);
    let (code, _, _) = ptk(&["ramsey", "mono", "--family", k1, "--l", "2", "--coloring", "rainbow", "--target", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn property_p_blocks_feed_norm_eval() {
    let v = ok(&["norm", "property-p", "--space", r#"{"kind":"schreier_hash"}"#, "--k", "3"]);
    assert_eq!(v["found"], true);
    for b in v["blocks"].as_array().unwrap() {
        let n = ok(&["norm", "eval", "--vector", &b.to_string()]);
        assert_eq!(n["lower"], "1");
    }
    let none = ok(&["norm", "property-p", "--space", r#"{"kind":"frak_x","k":1}"#, "--k", "2", "--budget", "500"]);
    assert_eq!(none["found"], false);
}

#[test]
fn sequence_commands() {
    let seq = r#"{"kind":"basis","space":{"kind":"tsirelson"},"family":{"kind":"k_subsets","k":1}}"#;
    let p = ok(&["sm", "profile", "--seq", seq, "--coeffs", "1,1,1", "--steps", "5"]);
    assert_eq!(p["steps"][0]["value"], "3/2");
    assert_eq!(p["coeffs"], serde_json::json!(["1", "1", "1"]));
    let c = ok(&["sm", "constants", "--seq", seq, "--n", "3", "--seed", "4"]);
    assert_eq!(c["seed"], 4);
    let f = ok(&["sm", "f-cesaro", "--family", r#"{"kind":"k_subsets","k":1}"#, "--seq", seq, "--n", "4"]);
    assert_eq!(f["norm"]["lower"], "1/4");
    let b = ok(&["sm", "boost", "--seq", seq, "--family", r#"{"kind":"k_subsets","k":1}"#, "--c", "1/2", "--eps", "1/2"]);
    let boosted = b["seq"].to_string();
    let again = ok(&["sm", "constants", "--seq", &boosted, "--n", "2", "--window", &join(&b["window"])]);
    assert!(again["c_lower"].is_string() || again["c_lower"].is_number());
}

fn join(v: &Value) -> String {
    v.as_array().unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[test]
fn output_is_deterministic() {
    let seq = r#"{"kind":"basis","space":{"kind":"frak_x","k":1},"family":{"kind":"k_subsets","k":2}}"#;
    let args = ["sm", "constants", "--seq", seq, "--n", "2", "--seed", "11"];
    let (_, a, _) = ptk(&args);
    let mut more = args.to_vec();
    more.extend(["--threads", "3"]);
    let (_, b, _) = ptk(&more);
    let (_, c, _) = ptk(&args);
    assert_eq!(a, b);
    assert_eq!(a, c);
}
