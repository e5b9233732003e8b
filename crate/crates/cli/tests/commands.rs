use powtool::commands::{resolve_settings, run_command, solve, CliError, Command, Flags};
use powtool::dsl::parse_problem;
use powtool_core::exponent_field::EmbeddingSpec;
use powtool_core::numeric::{ec_search, BallSpec, SearchOptions};
use powtool_core::predimension::{classify_pair_with, delta_of, ClassifyOptions, Configuration};
use powtool_core::PowError;
use serde_json::json;

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn run(cmd: Command, name: &str, flags: &Flags) -> serde_json::Value {
    let p = parse_problem(&data(name)).unwrap();
    run_command(cmd, name, &p, flags).unwrap().to_json()
}

#[test]
fn analyze_matches_library() {
    let r = run(Command::Analyze, "sqrt2.pow", &Flags::default());
    let res = &r["result"];
    assert_eq!(res["free"], json!(true));
    assert_eq!(res["special"], json!(false));
    assert_eq!(res["normality"]["verdict"], json!("normal_up_to_height"));
    assert!(r["warnings"].as_array().unwrap().iter().any(|w| w == "normality verified only up to height 2"));

    let p = parse_problem(&data("sqrt2.pow")).unwrap();
    let c = classify_pair_with(&p.configuration().unwrap(), 2, &ClassifyOptions::default()).unwrap();
    assert_eq!(res["free"], json!(c.is_free));
    assert_eq!(res["special"], json!(c.is_special));
    assert_eq!(res["delta"], json!(c.delta));
    assert_eq!(res["dim_l"], json!(c.dim_l));
    assert_eq!(res["dim_w"], json!(c.dim_w));
}

#[test]
fn solve_matches_library() {
    let flags = Flags { budget: Some(40), ..Flags::default() };
    let r = run(Command::Solve, "sqrt2.pow", &flags);
    let sols = r["result"]["solutions"].as_array().unwrap();
    assert!(!sols.is_empty());
    for s in sols {
        assert!(s["residual"].as_f64().unwrap() < 1e-10);
        assert!(s["certified_residual"].as_f64().unwrap() < 4e-10);
    }

    let p = parse_problem(&data("sqrt2.pow")).unwrap();
    let config = p.configuration().unwrap();
    let emb = EmbeddingSpec::new(vec!["sqrt(2)".into()], 128).unwrap();
    let opts = SearchOptions { budget: 40, seed: 0, ..SearchOptions::default() };
    let direct = ec_search(&config, &emb, &BallSpec::new(vec![0.0], 1.0).unwrap(), &[], &opts).unwrap();
    let mut expected = serde_json::to_value(&direct).unwrap();
    expected["status_counts"] = r["result"]["status_counts"].clone();
    assert_eq!(r["result"], expected);

    let via_helper = solve(&p, &config, &resolve_settings(&p, &flags)).unwrap();
    assert_eq!(via_helper, direct);
}

#[test]
fn kernel_delta_is_zero() {
    let r = run(Command::Delta, "kernel.pow", &Flags::default());
    assert_eq!(r["result"]["delta"], json!(0));
    assert_eq!(delta_of(&Configuration::kernel(2), 100).unwrap(), 0);
}

#[test]
fn quotient_and_certificate() {
    let r = run(Command::Quotient, "quotient.pow", &Flags::default());
    assert_eq!(r["result"]["n"], json!(2));
    assert_eq!(r["result"]["variety"], json!(["y1 - y2"]));
    let r = run(Command::Cert, "quotient.pow", &Flags::default());
    assert_eq!(r["result"]["evaluation"]["holds"], json!("torsion(0)"));
}

#[test]
fn confine_reports_cosets_or_uncovered() {
    let flags = Flags { budget: Some(40), seed: Some(3), ..Flags::default() };
    let r = run(Command::Confine, "sqrt2.pow", &flags);
    let n = r["result"]["solve"]["solutions"].as_array().unwrap().len();
    let c = &r["result"]["confinement"];
    let covered: usize = c["cosets"].as_array().unwrap().iter().map(|k| k["members"].as_array().unwrap().len()).sum();
    assert!(covered + c["uncovered"].as_array().unwrap().len() >= n);
}

#[test]
fn flags_override_file_values() {
    let p = parse_problem(&data("param.pow")).unwrap();
    assert_eq!(resolve_settings(&p, &Flags::default()).height, 1);
    assert_eq!(resolve_settings(&p, &Flags { height: Some(3), ..Flags::default() }).height, 3);
    assert_eq!(resolve_settings(&p, &Flags::default()).seed, None);
}

#[test]
fn preconditions_are_reported() {
    let p = parse_problem(&data("kernel.pow")).unwrap();
    let e = run_command(Command::Solve, "k", &p, &Flags::default()).unwrap_err();
    assert_eq!(e.exit_code(), 5);
    let e = run_command(Command::Quotient, "k", &p, &Flags::default()).unwrap_err();
    assert_eq!(e.exit_code(), 5);
    let p = parse_problem(&data("quotient.pow")).unwrap();
    let e = run_command(Command::Solve, "q", &p, &Flags { seed: Some(1), ..Flags::default() }).unwrap_err();
    assert!(matches!(e, CliError::Library(PowError::NotRealEmbedded)));
}
