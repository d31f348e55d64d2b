use goldcode_web::{codeword_json, describe_json, distribution_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn distribution_enumerated_matches_closed() {
    let v = parse(distribution_json(5, 1, 1, 3, "B", true).unwrap());
    assert_eq!(v["match"], true);
    assert_eq!(v["closed"]["balanced"], "18259");
    for key in ["alpha", "beta", "balanced"] {
        assert_eq!(v["closed"][key], v["enumerated"][key], "{key}");
    }
}

#[test]
fn distribution_closed_only_for_large_fields() {
    let v = parse(distribution_json(21, 1, 0, 3, "A", false).unwrap());
    assert!(v.get("enumerated").is_none());
    assert!(distribution_json(21, 1, 0, 3, "A", true).is_err());
}

#[test]
fn invalid_parameters_are_errors() {
    assert!(describe_json(6, 1, 1, 2, "A").is_err());
    assert!(describe_json(5, 1, 1, 2, "D").is_err());
    let v = parse(describe_json(9, 3, 0, 2, "C").unwrap());
    assert_eq!(v["params"]["e"], 3);
    assert_eq!(v["exponents"], serde_json::json!(["9"]));
}

#[test]
fn codeword_report() {
    let v = parse(codeword_json(5, 1, 1, 2, "A", "1, 0x3").unwrap());
    let bits = v["bits"].as_str().unwrap();
    assert_eq!(bits.len(), 31);
    let w = bits.chars().filter(|&c| c == '1').count();
    assert_eq!(v["weight"], w);
    assert_eq!(v["dc"], v["dc_from_character_sum"]);
    assert!([12, 16, 20].contains(&w));
    assert_eq!(v["rank"], 4);

    let v = parse(codeword_json(5, 1, 1, 2, "A", "7").unwrap());
    assert_eq!(v["weight"], 16);
    assert_eq!(v["rank"], Value::Null);

    assert!(codeword_json(5, 1, 1, 2, "A", "32").is_err());
    assert!(codeword_json(5, 1, 1, 2, "A", "1 2 3").is_err());
}
