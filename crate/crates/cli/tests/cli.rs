use std::process::Command;

use serde_json::Value;

const D12_FORM: &str = "3*x^12 - 18*x^11*y + 139*x^10*y^2 - 530*x^9*y^3 + 745*x^8*y^4 + 2*x^7*y^5 \
    - 679*x^6*y^6 + 2*x^5*y^7 + 745*x^4*y^8 - 530*x^3*y^9 + 139*x^2*y^10 - 18*x*y^11 + 3*y^12";

const QUARTIC: &str = "x^4 - x^3 - 4*x^2 + 4*x + 1";

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gapprin")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).expect("json report"))
}

fn tagged(v: &Value) -> &str {
    v["value"].as_str().expect("tagged value")
}

#[test]
fn aut_of_pure_cubic() {
    let (code, v) = run_json(&["aut", "x^3 - 2*y^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "gapprin-report/1");
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["result"]["structure"], "C2");
    assert_eq!(v["result"]["elements"].as_array().unwrap().len(), 2);
}

#[test]
fn aut_of_d12_form() {
    let (code, v) = run_json(&["aut", D12_FORM]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 24);
    assert_eq!(v["result"]["structure"], "D12");
    assert_eq!(v["result"]["determinantLaw"], true);
    let gens = v["result"]["generators"].as_array().unwrap();
    assert!(gens.len() <= 3, "{gens:?}");
}

#[test]
fn minpair_quartic_example() {
    let a = format!("{QUARTIC}@root≈1.827");
    let b = format!("{QUARTIC}@root≈0.618");
    let (code, v) = run_json(&["minpair", &a, &b]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["r"], 2);
    assert_eq!(tagged(&r["heights"]["max"]), "2");
    assert_eq!(r["minimality-mode"], "exact");
    for key in ["vanishing", "coprime", "degree"] {
        assert_eq!(r["checks"][key], true, "{key}");
    }
}

#[test]
fn index_selector_matches_decimal_selector() {
    let (_, by_root) = run_json(&["minpair", &format!("{QUARTIC}@root≈1.827"), &format!("{QUARTIC}@root≈0.618")]);
    // roots in increasing order: -1.956, -0.209, 1.338, 1.827
    let (_, by_index) = run_json(&["minpair", &format!("{QUARTIC}@index3"), &format!("{QUARTIC}@index2")]);
    assert_eq!(by_root["result"]["P"], by_index["result"]["P"]);
    assert_eq!(by_root["result"]["Q"], by_index["result"]["Q"]);
}

#[test]
fn every_number_carries_a_rounding_tag() {
    fn walk(v: &Value, path: &str) {
        match v {
            Value::Object(m) => {
                if m.get("value").is_some_and(Value::is_string) {
                    let tag = m.get("rounding").and_then(Value::as_str);
                    assert!(matches!(tag, Some("exact" | "up" | "down" | "enclosure")), "{path}");
                }
                for (k, x) in m {
                    walk(x, &format!("{path}.{k}"));
                }
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, path)),
            _ => {}
        }
    }
    let (code, v) = run_json(&["constants", "arch", "x^3-2@root≈1.26", "alpha:x^2"]);
    assert_eq!(code, 0);
    walk(&v, "");
    assert!(v["result"]["constants"]["C1"]["value"].is_string());
    assert!(v["result"]["constants"]["C2"]["value"].is_string());
    let (code, v) = run_json(&["constants", "padic", "x^3-3*x-1", "x^2-2", "--prime", "17", "--residue", "3"]);
    assert_eq!(code, 0);
    walk(&v, "");
    assert!(v["result"]["constants"]["C3"]["value"].is_string());
    assert_eq!(tagged(&v["result"]["C7"]), "1/12");
}

#[test]
fn padic_root_lifts() {
    let (code, v) = run_json(&["padic", "root", "x^3-3*x-1", "17", "3", "--digits", "2"]);
    assert_eq!(code, 0);
    assert_eq!(tagged(&v["result"]["lifts"][1]["residue"]), "207");
    assert_eq!(v["result"]["distanceToResidue"]["valuation"], 1);
}

#[test]
fn thue_enum_csv_columns() {
    let (code, text) = run(&["--format", "csv", "thue", "enum", "x^3 - 3*x*y^2 - y^3", "1", "200"]);
    assert_eq!(code, 0);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,\"|F(x,y)|\",H,rootIndex,side,orbitId"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.contains(&"2,1,1,2,2,inverse,1"), "{rows:?}");
}

#[test]
fn gap_check_verdicts() {
    let (code, v) = run_json(&["gap", "check", "x^3-2@root≈1.26", "alpha:2*x+1", "4/3:11/3", "5/4:7/2"]);
    assert_eq!(code, 0);
    for c in v["result"]["checks"].as_array().unwrap() {
        assert_eq!(c["mobius"], true);
        assert_ne!(c["verdict"], "violation");
    }
    let (code, v) =
        run_json(&["gap", "check", "x^3-3*x-1", "x^2-2", "--prime", "17", "--residue", "3", "-5/3:16/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["instance"]["constants"]["metric"], "p-adic");
}

#[test]
fn hypothesis_and_parse_errors_exit_2() {
    let (code, v) = run_json(&["aut", "x^2 - 2*y^2"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["error"]["kind"], "hypothesis");
    let (code, v) = run_json(&["minpair", "x^2-2@root≈1.4", "foo"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["error"]["kind"], "parse");
    let (code, _) = run_json(&["thue", "census", "x^3-2*y^3", "1", "--mu", "1", "--box", "10"]);
    assert_eq!(code, 2);
    let (code, _) = run_json(&["padic", "root", "x^3-3*x-1", "17", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["--seed", "7", "thue", "enum", "x^3 - 2*y^3", "7", "60"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("\"seed\": \"7\""));
}

#[test]
fn text_format_lists_keys() {
    let (code, text) = run(&["--format", "text", "aut", "x^3 - 2*y^3"]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l == "result.structure = C2"));
}

#[test]
fn d12_identities() {
    let (code, v) = run_json(&["d12", "3", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["allHold"], true);
    assert_eq!(v["result"]["unimodular"].as_array().unwrap().len(), 12);
    assert_eq!(v["result"]["scaling"].as_array().unwrap().len(), 12);
}

#[test]
fn d12_census() {
    let (code, v) = run_json(&["thue", "census", D12_FORM, "3", "--box", "30"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["aut"]["order"], 24);
    assert_eq!(r["gamma"], 12);
    assert_eq!(r["orbitClosed"], true);
    assert_eq!(r["boundRespected"], true);
    assert_eq!(r["largeCount"], 0);
    assert_eq!(r["orbitSizes"], serde_json::json!([3]));
}

#[test]
fn sweep_passes() {
    let (code, v) = run_json(&["sweep"]);
    assert_eq!(code, 0);
    assert!(v["result"]["total"].as_u64().unwrap() >= 200);
    assert_eq!(v["result"]["violations"], 0);
}
