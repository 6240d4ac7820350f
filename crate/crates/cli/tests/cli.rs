use std::f64::consts::TAU;
use std::path::PathBuf;

use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cauchy-chain").chain(args.iter().copied());
    let code = cauchy_chain_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn demo_spec() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs/annulus_demo.spec")
        .to_str()
        .unwrap()
        .to_owned()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn verify_demo_spec_passes() {
    let (code, out, _) = cli(&["verify", "--spec", &demo_spec()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("verdict            pass"));

    let (code, out, _) = cli(&["verify", "--spec", &demo_spec(), "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    for key in ["verdict", "deviation", "epsilon", "margin", "members", "integrals"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let integrals = v["integrals"].as_array().unwrap();
    assert_eq!(integrals.len() as u64, v["members"].as_u64().unwrap());
    for end in [&integrals[0], integrals.last().unwrap()] {
        let (re, im) = (end["re"].as_f64().unwrap(), end["im"].as_f64().unwrap());
        assert!(re.abs() <= 1e-9 && (im - TAU).abs() <= 1e-9);
    }
}

#[test]
fn json_summary_round_trips() {
    let (_, out, _) = cli(&["verify", "--spec", &demo_spec(), "--json"]);
    let first = json(&out);
    let tol = first["tol"].as_f64().unwrap().to_string();
    let (code, out, _) = cli(&["verify", "--spec", &demo_spec(), "--tol", &tol, "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out), first);
}

#[test]
fn integrate_residue() {
    let (code, out, _) = cli(&[
        "integrate",
        "--f",
        "1/z",
        "--poles",
        "0",
        "--path",
        "unit_circle",
        "--tol",
        "1e-10",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    let (re, im) = (v["value"]["re"].as_f64().unwrap(), v["value"]["im"].as_f64().unwrap());
    assert!((re * re + (im - TAU).powi(2)).sqrt() <= 1e-10);
}

#[test]
fn approx_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let rows = |eps: &str| {
        let file = dir.path().join(format!("poly-{eps}.csv"));
        let (code, _, _) = cli(&[
            "approx",
            "--path",
            "unit_circle",
            "--eps",
            eps,
            "--out",
            file.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(file).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("index,t,re,im"));
        lines.map(str::to_owned).collect::<Vec<_>>()
    };
    // π/3 to full precision: δ = 1/18, 19 segments, 20 vertex rows.
    let exact = rows("1.0471975511965976");
    assert_eq!(exact.len(), 20);
    assert_eq!(exact[0].split(',').nth(2), exact[19].split(',').nth(2));
    assert_eq!(exact[0].split(',').nth(3), exact[19].split(',').nth(3));
    // The ten-digit value lies above π/3, so the partition has one segment fewer.
    assert_eq!(rows("1.0471975512").len(), 19);
}

#[test]
fn chain_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("chain.csv");
    let (code, out, _) = cli(&[
        "chain",
        "--spec",
        &demo_spec(),
        "--out",
        file.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let members = json(&out)["members"].as_u64().unwrap();
    let text = std::fs::read_to_string(file).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("member,index,t,re,im"));
    let last: u64 = lines.last().unwrap().split(',').next().unwrap().parse().unwrap();
    assert_eq!(last + 1, members);
}

#[test]
fn star_refusal_exits_two() {
    let args = [
        "verify",
        "--path",
        "unit_circle",
        "--center",
        "0",
        "--domain",
        "punctured_plane(0)",
        "--f",
        "1/z",
        "--poles",
        "0",
    ];
    let (code, _, err) = cli(&args);
    assert_eq!(code, 2);
    assert!(err.contains("containment not certified"));
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let (code, out, _) = cli(&with_json);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["verdict"], "refused");
}

#[test]
fn null_homotopy_through_the_cli() {
    let (code, out, _) = cli(&[
        "verify",
        "--path",
        "square(1)",
        "--center",
        "0",
        "--domain",
        "disk(0, 2)",
        "--f",
        "exp(z)",
        "--tol",
        "1e-10",
        "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(json(&out)["null_integral"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn deviation_failure_exits_three() {
    // The pole at 3.5 is not declared, so the chain is built across it and the
    // member integrals drop from 2πi to 0.
    let (code, out, _) = cli(&[
        "verify",
        "--path",
        "circle(1, 3)",
        "--center",
        "3",
        "--domain",
        "disk(3, 2)",
        "--f",
        "1/(z - 3.5)",
        "--json",
    ]);
    assert_eq!(code, 3, "{out}");
    assert_eq!(json(&out)["verdict"], "fail");
}

#[test]
fn winding_numbers() {
    for (path, at, expected) in [
        ("unit_circle", "0", "1"),
        ("unit_circle", "3", "0"),
        ("square(1)", "0.5+0.5*i", "1"),
    ] {
        let (code, out, _) = cli(&["wind", "--path", path, "--at", at]);
        assert_eq!(code, 0);
        assert!(out.starts_with(&format!("winding  {expected}\n")), "{out}");
    }
    let (code, _, _) = cli(&["wind", "--path", "unit_circle", "--at", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn carrier_summary() {
    let (code, out, _) = cli(&[
        "carrier",
        "--path",
        "unit_circle",
        "--eta",
        "0.1",
        "--at",
        "2",
        "--inflate",
        "1.5",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["points"], 64);
    assert_eq!(v["distance"]["hi"].as_f64().unwrap(), 1.0);
    assert_eq!(v["membership"], "inside");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["bogus"],
        vec!["approx", "--path", "unit_circle"],
        vec!["approx", "--path", "spiral(2)", "--eps", "0.1"],
        vec!["integrate", "--path", "unit_circle", "--f", "1/"],
        vec!["verify", "--spec", "/nonexistent.spec"],
        vec!["approx", "--path", "unit_circle", "--eps", "-1"],
    ] {
        let (code, _, err) = cli(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn spec_paths_are_addressable_by_name() {
    let (code, out, _) = cli(&["integrate", "--spec", &demo_spec(), "--path", "outer", "--json"]);
    assert_eq!(code, 0);
    assert!((json(&out)["value"]["im"].as_f64().unwrap() - TAU).abs() <= 1e-9);
}
