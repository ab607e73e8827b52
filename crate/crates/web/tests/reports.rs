use cogrowth_web::{algebra_report, rauzy_report, word_report};
use serde_json::{json, Value};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn fibonacci_word_report() {
    let v = parse(word_report("fib", 5));
    assert_eq!(v["obstructions"], json!(["bb", "aaa", "babab"]));
    assert_eq!(v["cogrowth"], json!([0, 1, 2, 2, 3]));
    assert_eq!(v["alphabet"], "ab");
}

#[test]
fn rauzy_graph_report() {
    let v = parse(rauzy_report("fib", 2));
    assert_eq!(v["vertices"], json!(["aa", "ab", "ba"]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
    assert_eq!(v["er"], "2");
    assert_eq!(parse(rauzy_report("periodic:aab", 3))["er"], "inf");
}

#[test]
fn commutative_algebra_report() {
    let v = parse(algebra_report("alphabet: x y\nrelation: yx - xy\n", 4));
    assert_eq!(v["basis"], json!(["yx - xy"]));
    assert_eq!(v["obstructions"], json!(["yx"]));
    assert_eq!(v["growth"], json!(["1", "3", "6", "10", "15"]));
    assert_eq!(v["completion"], "saturated");
}

#[test]
fn errors_are_reported_as_json() {
    assert!(parse(word_report("nonsense", 5))["error"].is_string());
    assert!(parse(word_report("prefix:/etc/hosts;complete=2", 5))["error"].is_string());
    assert!(parse(word_report("fib", 0))["error"].is_string());
    assert!(parse(rauzy_report("fib", 1000))["error"].is_string());
    let e = parse(algebra_report("alphabet: x y\nrelation: x + q\n", 3));
    assert_eq!(e["error"], "2:15: unexpected character 'q'");
}
