use std::process::{Command, Output};

use eulersym::catalog::{build_family, Family};
use eulersym::linalg::int;
use eulersym::poly::{monomials_of_degree, Polynomial};
use eulersym_cli::parse::{parse_expression, parse_polynomial};
use eulersym_cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;

fn eulersym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulersym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    eulersym(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = eulersym(args);
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn all_families() -> Vec<Family> {
    let mut out = vec![Family::XCubed, Family::Cartan];
    for n in 1..=8 {
        out.extend([Family::Quad(n), Family::QuadLine(n), Family::MonProd(n)]);
    }
    for n in 1..=4 {
        out.extend([Family::Det(n), Family::SymDet(n), Family::Pfaff(2 * n)]);
    }
    out
}

#[test]
fn analyze_product_of_two_variables() {
    let r = json(&["analyze", "x1*x2", "--json"]);
    assert_eq!(r["dimension_profile"], serde_json::json!([1, 2, 1]));
    assert_eq!(r["symbol_system"]["verdict"], "pass");
    assert_eq!(r["passed"], true);
    assert_eq!(code(&["analyze", "x1*x2"]), EXIT_OK);
}

#[test]
fn catalog_verify_det3() {
    let r = json(&["catalog", "verify", "det3", "--json"]);
    assert_eq!(r["dimension_profile"], serde_json::json!([1, 9, 9, 1]));
    assert_eq!(r["ambient_dim"], 20);
    assert_eq!(r["passed"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["legendre", "x1^3 + x2^3"]), EXIT_CHECK_FAILED);
    assert_eq!(code(&["smooth-check", "x1^3 + x2^3"]), EXIT_CHECK_FAILED);
    assert_eq!(code(&["legendre", "x1*x2*x3"]), EXIT_OK);
    assert_eq!(code(&["analyze", "x1^2 + x2"]), EXIT_USAGE);
    assert_eq!(code(&["analyze", "x1 + * x2"]), EXIT_USAGE);
    assert_eq!(code(&["catalog", "build", "det[9]"]), EXIT_USAGE);
    assert_eq!(code(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(code(&["embed", "x1*x2", "--w", "1,2,3"]), EXIT_USAGE);
}

#[test]
fn errors_are_positioned() {
    let out = eulersym(&["analyze", "x1^2 + x2"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degree 2 and 1"), "{err}");
    let out = eulersym(&["analyze", "x1 + * x2"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1:6"), "{err}");
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["legendre", "det[2]", "--json"][..],
        &["smooth-check", "x1^2*x2 + x2^3", "--json", "--seed", "7"][..],
        &["catalog", "verify", "quadline[2]", "--json"][..],
    ] {
        let a = eulersym(args).stdout;
        let b = eulersym(args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn rationals_are_strings() {
    let r = json(&["embed", "x1*x2", "--t", "1/2", "--w", "1,-3/4", "--json"]);
    assert_eq!(r["point"]["blocks"], serde_json::json!([["1/4"], ["1/2", "-3/8"], ["-3/4"]]));
    let r = json(&["legendre", "x1^2 + x2^2", "--json"]);
    assert_eq!(r["legendre"]["transform"], "1/4*x1^2 + 1/4*x2^2");
}

#[test]
fn points_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("point.json");
    let out = eulersym(&["embed", "x1*x2", "--w", "2,3", "--json"]);
    std::fs::write(&report, out.stdout).unwrap();
    let path = report.to_str().unwrap();
    let r = json(&["limit", "x1*x2", "--point", path, "--dir", "zero", "--json"]);
    assert_eq!(r["point"]["blocks"], serde_json::json!([["1"], ["0", "0"], ["0"]]));
    assert_eq!(r["limit_weight"], 0);
    assert_eq!(code(&["relations", "x1*x2", "--point", path]), EXIT_OK);

    let text = dir.path().join("bad.txt");
    std::fs::write(&text, "1\n0, 0\n1\n").unwrap();
    assert_eq!(code(&["relations", "x1*x2", "--point", text.to_str().unwrap()]), EXIT_CHECK_FAILED);
}

#[test]
fn translation_and_curve_limits() {
    let r = json(&["act", "x1*x2", "--w", "2,3", "--v", "1,-1", "--json"]);
    assert_eq!(r["point"]["blocks"], serde_json::json!([["1"], ["3", "2"], ["6"]]));
    let r = json(&["curve-limit", "x1*x2", "--v", "1,1", "--json"]);
    assert_eq!(r["point"]["blocks"], serde_json::json!([["0"], ["0", "0"], ["1"]]));
}

#[test]
fn catalog_commands() {
    let r = json(&["catalog", "list", "--json"]);
    assert_eq!(r["catalog"].as_array().unwrap().len(), 8);
    let r = json(&["catalog", "build", "cartan", "--json"]);
    assert_eq!(r["expected"]["ambient_dim"], 56);
    assert_eq!(code(&["catalog", "classify", "monprod[2],quad[3]"]), EXIT_OK);
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let c = run(["eulersym", "analyze", "det[2]", "--json"], &mut out, &mut err);
    assert_eq!(c, EXIT_OK);
    assert_eq!(out, eulersym(&["analyze", "det[2]", "--json"]).stdout);
}

#[test]
fn catalog_polynomials_round_trip() {
    for family in all_families() {
        let p = build_family(family).polynomial;
        let q = parse_polynomial(&p.to_string(), Some(p.nvars())).unwrap();
        assert_eq!(p, q, "{family}");
    }
}

fn random_polynomial() -> impl Strategy<Value = Polynomial> {
    (1usize..=5, 0u32..=4).prop_flat_map(|(m, max_deg)| {
        let monos: Vec<_> = (0..=max_deg).flat_map(|d| monomials_of_degree(m, d)).collect();
        let n = monos.len();
        proptest::collection::vec((-9i64..=9, 1i64..=5), n).prop_map(move |cs| {
            Polynomial::from_terms(
                m,
                monos
                    .clone()
                    .into_iter()
                    .zip(cs)
                    .map(|(mono, (a, b))| (mono, int(a) / int(b))),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_polynomials_round_trip(p in random_polynomial()) {
        let q = parse_expression(&p.to_string(), Some(p.nvars())).unwrap();
        prop_assert_eq!(p, q);
    }
}
