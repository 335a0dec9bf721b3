use proptest::prelude::*;
use serde_json::{json, Value};

use fwps::cli::{run, Outcome, EXIT_OK};

fn fwps(args: &[&str], input: &str) -> Outcome {
    let argv = std::iter::once("fwps").chain(args.iter().copied());
    run(argv, &mut input.as_bytes())
}

fn parse(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap()
}

/// The analysis with the ray list removed, which depends on the chosen basis.
fn basis_free(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("rays");
    v
}

#[test]
fn enumerated_quotients_analyze_to_themselves() {
    let records = parse(&fwps(&["enumerate", "--max-r", "25"], ""));
    for rec in records.as_array().unwrap() {
        let input = json!({ "rays": rec["rays"] }).to_string();
        let o = fwps(&["analyze"], &input);
        assert_eq!(o.code, EXIT_OK);
        let report = parse(&o);
        assert_eq!(report["p2_classification"], json!({"r": rec["r"], "a": rec["a"]}));
        assert_eq!(report["cover"]["index"], rec["r"]);
    }
}

#[test]
fn file_and_stdin_inputs_agree() {
    let dir = std::env::temp_dir().join(format!("fwps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.json");
    let doc = r#"{"weights": [3, 4, 5]}"#;
    std::fs::write(&path, doc).unwrap();
    let from_file = fwps(&["from-weights", "--input", path.to_str().unwrap()], "");
    let from_stdin = fwps(&["from-weights"], doc);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(from_file, from_stdin);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reanalysis_from_weights_is_stable(rays in (1usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-7i64..=7, d), d + 1)
    })) {
        let input = json!({ "rays": rays }).to_string();
        let first = fwps(&["analyze"], &input);
        prop_assert_eq!(&fwps(&["analyze"], &input), &first);
        if first.code != EXIT_OK {
            return Ok(());
        }
        let report = parse(&first);
        if report["is_wps"] != json!(true) {
            return Ok(());
        }
        let again = fwps(&["from-weights"], &json!({ "weights": report["weights"] }).to_string());
        prop_assert_eq!(again.code, EXIT_OK);
        let again = parse(&again);
        prop_assert_eq!(basis_free(again["analysis"].clone()), basis_free(report));
    }
}
