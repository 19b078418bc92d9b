//! Golden JSON reports and the exit-code contract. Set `AZK_BLESS=1` to
//! rewrite the golden files.

use std::path::PathBuf;
use std::process::Command;

use azk_core::cli::run;
use serde_json::Value;

const GOLDEN: &[(&str, &[&str])] = &[
    ("star_check_fig8", &["star", "check", "t^2 - 3t + 1"]),
    ("star_check_laurent", &["star", "check", "t^-1 - 3 + t"]),
    ("star_check_q3", &["star", "check", "2t^2 - 3t + 2"]),
    ("star_mod_fig8_2", &["star", "mod", "t^2-3t+1", "--prime", "2"]),
    ("star_mod_fig8_5", &["star", "mod", "t^2-3t+1", "--prime", "5"]),
    ("bad_primes_fig8", &["star", "bad-primes", "t^2-3t+1", "--scan", "1000"]),
    ("bad_primes_negative", &["star", "bad-primes", "t^2+t+1"]),
    ("knot_twist6", &["knot", "classify", "--family", "twist", "--param", "6"]),
    ("knot_twist8", &["knot", "classify", "--family", "twist", "--param", "8"]),
    ("knot_pretzel7", &["knot", "classify", "--family", "pretzel237", "--param", "7"]),
    ("knot_poly", &["knot", "classify", "--poly", "-t^4 + 11t^3 - 21t^2 + 11t - 1"]),
    ("quat_ramify", &["quat", "ramify", "--a", "-3", "--b", "-2"]),
    ("quat_tame", &["quat", "tame", "--alpha", "t^2 + 1", "--beta", "(t - 1)/(t + 2)", "--place", "t^2 + 1"]),
    ("quat_tame_inf", &["quat", "tame", "--alpha", "t", "--beta", "t^2 - 3", "--place", "inf"]),
    ("casebook_fig8", &["casebook", "fig8"]),
    ("casebook_pretzel7", &["casebook", "pretzel7"]),
    ("casebook_m137", &["casebook", "m137"]),
    ("error_parse", &["star", "check", "1/2 t"]),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let argv: Vec<&str> = ["azk", "--json"].iter().chain(args).copied().collect();
    let out = run(argv);
    let v: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", out.stdout));
    (out.code, v)
}

fn without_timing(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.remove("timing_ms");
    }
    v
}

#[test]
fn golden_reports() {
    let bless = std::env::var_os("AZK_BLESS").is_some();
    for (name, args) in GOLDEN {
        let (_, v) = json_of(args);
        assert_eq!(v["schema"], 1, "{name}");
        assert!(v.get("command").is_some(), "{name}");
        // re-serializing reproduces the same document
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
        let v = without_timing(v);
        let path = golden_dir().join(format!("{name}.json"));
        let pretty = serde_json::to_string_pretty(&v).unwrap() + "\n";
        if bless {
            std::fs::write(&path, pretty).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(pretty, want, "golden mismatch for {name}");
    }
}

#[test]
fn spec_examples() {
    let (code, v) = json_of(&["star", "bad-primes", "t^2-3t+1", "--scan", "1000"]);
    assert_eq!((code, &v["verdict"], &v["bad_primes"]), (0, &Value::from("positive"), &serde_json::json!([2])));
    let (code, v) = json_of(&["knot", "classify", "--family", "twist", "--param", "6"]);
    assert_eq!((code, v["verdict"].as_str()), (1, Some("negative")));
    let (code, v) = json_of(&["quat", "ramify", "--a", "-3", "--b", "-2"]);
    assert_eq!((code, &v["real"], &v["finite"]), (0, &Value::Bool(true), &serde_json::json!([2])));
}

fn exe(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_azk")).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8_lossy(&o.stdout).into(), String::from_utf8_lossy(&o.stderr).into())
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["star", "check", "t^2-3t+1"], 0),
        (&["star", "check", "t^2+t+1"], 1),
        (&["star", "check", "0"], 2),
        (&["star", "check", "t^2 + x"], 2),
        (&["star", "mod", "t^2-3t+1", "--prime", "7"], 0),
        (&["star", "mod", "t^2-3t+1", "--prime", "2"], 1),
        (&["star", "mod", "t^2-3t+1", "--prime", "9"], 2),
        (&["star", "mod", "t^2-3t+1"], 2),
        (&["star", "bad-primes", "t^2-3t+1"], 0),
        (&["star", "bad-primes", "t^4+1"], 1),
        (&["knot", "classify", "--family", "f8"], 0),
        (&["knot", "classify", "--family", "lehmer"], 1),
        (&["knot", "classify", "--family", "fa", "--param", "3"], 2),
        (&["knot", "classify", "--family", "nope", "--param", "3"], 2),
        (&["knot", "classify"], 2),
        (&["knot", "classify", "--family", "f8", "--poly", "t"], 2),
        (&["quat", "ramify", "--a", "1", "--b", "1"], 0),
        (&["quat", "ramify", "--a", "0", "--b", "1"], 2),
        (&["quat", "ramify", "--a", "x", "--b", "1"], 2),
        (&["quat", "tame", "--alpha", "t", "--beta", "t+1", "--place", "t^2-1"], 2),
        (&["quat", "tame", "--alpha", "t", "--beta", "t+1", "--place", "inf"], 0),
        (&["casebook", "fig8"], 0),
        (&["casebook", "knot"], 2),
        (&["frobnicate"], 2),
        (&[], 2),
    ];
    for (args, want) in cases {
        let (code, _, err) = exe(args);
        assert_eq!(code, *want, "{args:?}: {err}");
        if *want == 2 {
            assert!(!err.is_empty(), "{args:?} should explain the error");
        }
    }
    let (code, out, _) = exe(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("star") && out.contains("casebook"));
    let (code, _, err) = exe(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
}

#[test]
fn text_output_mentions_verdict() {
    let (code, out, _) = exe(&["knot", "classify", "--family", "twist", "--param", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("Azumaya positive"), "{out}");
    let (_, out, _) = exe(&["quat", "ramify", "--a", "-3", "--b", "-2"]);
    assert!(out.contains("{inf, 2}"), "{out}");
}
