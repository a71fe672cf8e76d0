use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn analyze_cusp() {
    let v = json(&["analyze", "x^2+y^3"]);
    assert_eq!(v["field"], "QQ");
    assert_eq!(v["cap"], 64);
    let r = &v["result"];
    for (key, want) in [
        ("mu", 2),
        ("tau", 2),
        ("s", 2),
        ("s_prime", 1),
        ("right_det", 4),
        ("contact_det", 4),
        ("min_k_right", 4),
        ("min_k_contact", 4),
        ("cor_bound_right", 4),
        ("cor_bound_contact", 4),
    ] {
        assert_eq!(r[key], want, "{key}");
    }
}

#[test]
fn analyze_char_two_flags_infinite_milnor_number() {
    let r = json(&["--char", "2", "analyze", "y^2+x^3*y"])["result"].clone();
    assert_eq!(r["mu"], "infinity");
    assert_eq!(r["tau"], 5);
    assert!(r["right_det"].is_null());
    assert!(r["notes"]["right_det"].is_string());
    assert!(r["contact_det"].is_number());
}

#[test]
fn text_output_lists_fields() {
    let out = run(&["analyze", "x^2+y^3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("mu") && l.ends_with(" 2")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("field") && l.ends_with("QQ")));
}

#[test]
fn compare_counterexample_is_not_equivalent_in_char_five() {
    let v = json(&[
        "--char",
        "5",
        "compare",
        "--mode",
        "right",
        "x^6+y^6",
        "x^6+y^6+x^5",
    ]);
    let r = &v["result"];
    assert_eq!(v["field"], "GF(5)");
    assert_ne!(r["verdict"], "equivalent");
    let evidence = r["evidence"].as_array().unwrap();
    let k0 = evidence
        .iter()
        .find(|c| c["name"] == "ideal_equality_k0")
        .unwrap();
    assert_eq!(k0["holds"], true);
}

#[test]
fn compare_perturbation_certificate() {
    let v = json(&["compare", "--mode", "contact", "x^2+y^3", "x^2+y^3+y^9"]);
    assert_eq!(v["result"]["verdict"], "equivalent");
    assert!(v["result"]["certificate"].is_object());
}

#[test]
fn oracle_agrees() {
    for args in [
        vec!["--oracle", "analyze", "x^2+y^3"],
        vec!["--oracle", "--char", "2", "analyze", "y^2+x^3*y"],
        vec![
            "--oracle",
            "compare",
            "--mode",
            "right",
            "x^3+y^4",
            "x^3+y^4+x*y^3",
        ],
        vec!["--oracle", "dim", "x^2", "y^3"],
        vec!["--oracle", "hilbert", "x^2", "x*y", "y^3"],
        vec!["--oracle", "minpow", "x^5", "y^5"],
        vec!["--oracle", "std", "x^2+y^3", "x*y"],
    ] {
        let v = json(&args);
        assert_eq!(v["result"]["oracle_agreement"], true, "{args:?}");
    }
}

#[test]
fn ideal_commands() {
    assert_eq!(json(&["dim", "x^2", "y^3"])["result"]["colength"], 6);
    assert_eq!(
        json(&["dim", "x^2*y", "x^3"])["result"]["colength"],
        "infinity"
    );
    assert_eq!(
        json(&["--vars", "x,y,z", "hilbert", "x^2", "y^2", "z^2"])["result"]["hilbert_function"],
        serde_json::json!([1, 3, 3, 1])
    );
    assert_eq!(json(&["minpow", "x^5", "y^5"])["result"]["min_m_power"], 9);
    assert!(json(&["minpow", "x^2*y", "x^3"])["result"]["min_m_power"].is_null());
    let nf = json(&["nf", "--gens", "x^2,y^3", "x^2+x*y"]);
    assert_eq!(nf["result"]["remainder"], "x*y");
    let std = json(&["std", "x+y^2", "y^3"]);
    assert_eq!(std["result"]["exact"], true);
}

#[test]
fn reads_inputs_from_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# a cusp\nx^2+y^3\n\nx^2+y^5").unwrap();
    let path = file.path().to_str().unwrap();
    let out = run(&["--format", "json", "--file", path, "analyze"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let mus: Vec<&Value> = reports.iter().map(|r| &r["result"]["mu"]).collect();
    assert_eq!(mus, [&Value::from(2), &Value::from(4)]);
}

#[test]
fn exit_codes() {
    let parse = run(&["analyze", "x^2+*y"]);
    assert_eq!(parse.status.code(), Some(2));
    let err = String::from_utf8(parse.stderr).unwrap();
    assert!(err.contains('^'), "{err}");

    let io = run(&["--file", "/nonexistent/input.txt", "analyze"]);
    assert_eq!(io.status.code(), Some(1));

    assert_eq!(
        run(&["--char", "6", "analyze", "x^2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["bad-command-name"]).status.code(), Some(2));
    assert_eq!(
        run(&["compare", "--mode", "right", "x^2"]).status.code(),
        Some(2)
    );
}

#[test]
fn smooth_germ_gives_a_degenerate_report() {
    let r = json(&["analyze", "x+y^2"])["result"].clone();
    assert_eq!(r["s"], 1);
    assert_eq!(r["mu"], 0);
    assert!(r["right_det"].is_null());
    assert!(r["notes"]["right_det"].as_str().unwrap().contains("ord(f)"));
}

#[test]
fn cap_exceeded_exit_code() {
    // input terms above the cap
    let out = run(&["--cap", "5", "hilbert", "x^2+y^7", "x*y^5+y^8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--cap"));
    // a basis whose rational coefficients outgrow the work limit
    let out = run(&[
        "--vars",
        "x,y,z",
        "dim",
        "2*y+3*x^2+3*y^2*z",
        "2*x^2*z+y^4",
        "4*x*z-3*x^2*y*z+4*y^2*z^2",
        "2*x*y^2+2*x^3*y",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // the same ideal modulo a prime is decided
    let v = json(&[
        "--char",
        "32003",
        "--vars",
        "x,y,z",
        "dim",
        "2*y+3*x^2+3*y^2*z",
        "2*x^2*z+y^4",
        "4*x*z-3*x^2*y*z+4*y^2*z^2",
        "2*x*y^2+2*x^3*y",
    ]);
    assert_eq!(v["result"]["colength"], "infinity");
}
