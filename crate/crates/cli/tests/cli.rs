use std::process::{Command, Output};

fn misere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_misere"))
        .args(args)
        .env_remove("MISERE_MAX_RANK")
        .env_remove("MISERE_MAX_OPTIONS")
        .env_remove("MISERE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn ok(args: &[&str]) -> String {
    let out = misere(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["compare", "M(1)", "M(2)", "--universe", "dead-ending"]), ">=");
    assert_eq!(ok(&["reduce", "{-1|1}", "--universe", "dead-ending"]), "0");
    assert_eq!(ok(&["outcome", "*"]), "P");
}

#[test]
fn game_arithmetic() {
    assert_eq!(ok(&["sum", "1", "1"]), "2");
    assert_eq!(ok(&["conj", "M(2)"]), "{0,1|}");
    assert_eq!(ok(&["outcome", "1"]), "R");
    assert_eq!(ok(&["outcome", "1", "--normal"]), "L");
    assert!(ok(&["strong-outcome", "{*|0}"]).starts_with("P"));
    assert_eq!(ok(&["parse", "{-1|1}"]).lines().nth(1), Some("brace: {{|{|}}|{{|}|}}"));
    assert_eq!(ok(&["outcome", r#"{"L":[{"L":[],"R":[]}],"R":[{"L":[],"R":[]}]}"#]), "P");
}

#[test]
fn comparisons() {
    assert_eq!(ok(&["compare", "{*|*}", "0", "--universe", "dicot"]), "=");
    assert_eq!(ok(&["compare", "M(2)", "M(1)", "--universe", "dead-ending"]), "<=");
    assert_eq!(ok(&["compare", "1", "0", "--universe", "dead-ending"]), "incomparable");
    assert_eq!(ok(&["compare", "1", "0", "--universe", "normal"]), ">=");
    assert_eq!(ok(&["compare", "{-1|1}", "0", "--universe", "normal"]), "=");
}

#[test]
fn reduction_and_search() {
    assert_eq!(ok(&["reduce", "3 + -7", "--universe", "dead-ending"]), "-4");
    let traced = ok(&["reduce", "{*|*}", "--universe", "dicot", "--trace"]);
    assert_eq!(traced.lines().last(), Some("0"));
    assert!(traced.lines().count() > 1);
    let d = ok(&["distinguish", "1", "0", "--universe", "dead-ending", "--max-rank", "1"]);
    assert!(d.starts_with("distinguished by 0"), "{d}");
    let d = ok(&["distinguish", "*+*", "0", "--universe", "dicot"]);
    assert!(d.starts_with("equivalent"), "{d}");
}

#[test]
fn enumeration_and_budgets() {
    assert_eq!(ok(&["enumerate", "--universe", "dicot"]).lines().count(), 10);
    assert_eq!(ok(&["enumerate", "--max-rank", "1"]).lines().count(), 4);
    let env = Command::new(env!("CARGO_BIN_EXE_misere"))
        .args(["enumerate", "--universe", "dead-ending"])
        .env("MISERE_MAX_RANK", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&env).lines().count(), 4);
    // the flag wins over the environment
    let both = Command::new(env!("CARGO_BIN_EXE_misere"))
        .args(["enumerate", "--universe", "dead-ending", "--max-rank", "2"])
        .env("MISERE_MAX_RANK", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&both).lines().count(), 232);
    let census = ok(&["enumerate", "--universe", "dicot", "--census"]);
    assert!(census.contains("0 violations"), "{census}");
}

#[test]
fn verification() {
    for property in ["murders", "conjugate", "uniqueness", "ends", "embedding"] {
        let report = ok(&["verify", property, "--max-rank", "2"]);
        assert!(report.contains("violations 0"), "{property}: {report}");
    }
    ok(&["verify", "conjugate", "--universe", "dicot"]);
    assert_eq!(misere(&["verify", "murders", "--universe", "dicot"]).status.code(), Some(4));
}

#[test]
fn structured_output_is_one_document() {
    let text = ok(&["--format", "structured", "reduce", "1 + -1", "--universe", "dead-ending"]);
    assert_eq!(text.lines().count(), 1);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["named"], "0");
    assert_eq!(doc["game"], serde_json::json!({"L": [], "R": []}));
    let text = ok(&["verify", "ends", "--format", "structured"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc[0]["violation_count"], 0);
}

#[test]
fn exit_codes() {
    let parse = misere(&["outcome", "{0|*"]);
    assert_eq!(parse.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("byte 4"));
    assert_eq!(misere(&["outcome", r#"{"L":[]}"#]).status.code(), Some(3));
    assert_eq!(misere(&["compare", "1", "0", "--universe", "dicot"]).status.code(), Some(4));
    assert_eq!(misere(&["strong-outcome", "{0|{|*}}"]).status.code(), Some(4));
    assert_eq!(misere(&["enumerate", "--max-rank", "9"]).status.code(), Some(5));
    assert_eq!(misere(&["outcome", "M(99999999)"]).status.code(), Some(5));
    assert_eq!(misere(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(misere(&["compare", "1", "0"]).status.code(), Some(2));
    assert_eq!(misere(&["--help"]).status.code(), Some(0));
    assert!(misere(&["outcome", "*"]).stderr.is_empty());
}
