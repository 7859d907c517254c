mod common;

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use common::*;
use serde_json::Value;

const PLOTS: [&str; 5] = ["scatter.svg", "periodogram.svg", "dwt_levels.svg", "scalogram.svg", "coherence.svg"];

#[test]
fn missing_input_is_a_usage_error() {
    let out = run(&["analyze"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Usage"));
}

#[test]
fn unknown_wavelet_is_a_usage_error() {
    let out = run(&["analyze", "--input", "x.csv", "--wavelet", "sym8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constant_series_has_no_dominant_peak() {
    let dir = scratch("constant");
    let csv = dir.join("flat.csv");
    fs::write(&csv, "7\n".repeat(30)).unwrap();
    let out = run(&["analyze", "--input", path_str(&csv), "--out", path_str(&dir)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NoDominantPeak"), "{}", stderr(&out));
    assert!(!dir.join("report.json").exists());
}

#[test]
fn malformed_and_missing_files_are_data_errors() {
    let dir = scratch("malformed");
    let csv = dir.join("bad.csv");
    fs::write(&csv, "1\n2\nthree\n").unwrap();
    let out = run(&["analyze", "--input", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("ParseError") && stderr(&out).contains("line 3"));

    let out = run(&["analyze", "--input", path_str(&dir.join("absent.csv"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("[Io]"));
}

#[test]
fn compare_rejects_unequal_lengths() {
    let dir = scratch("lengths");
    let a = synth(&dir, "a.csv", &["--n", "60", "--period", "20"]);
    let b = synth(&dir, "b.csv", &["--n", "61", "--period", "20"]);
    let out = run(&["compare", "--input", path_str(&a), "--input2", path_str(&b), "--out", path_str(&dir)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("LengthMismatch"));
}

#[test]
fn synth_is_deterministic_and_checks_nyquist() {
    let dir = scratch("synth");
    let flags = ["--n", "61", "--period", "20", "--amp", "1.5", "--period", "7", "--amp", "0.5", "--noise", "0.3", "--seed", "9"];
    let a = fs::read(synth(&dir, "a.csv", &flags)).unwrap();
    let b = fs::read(synth(&dir, "b.csv", &flags)).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 61);

    let out = run(&["synth", "--n", "60", "--period", "1.5", "--dt", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NyquistViolation"));

    let out = run(&["synth", "--n", "60", "--period", "20", "--period", "10", "--phase", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn synth_then_analyze_recovers_the_period() {
    let dir = scratch("period");
    let csv = synth(&dir, "s.csv", &["--n", "60", "--period", "20", "--amp", "1", "--seed", "1", "--noise", "0"]);
    let out = run(&["analyze", "--input", path_str(&csv), "--out", path_str(&dir)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_report(&dir);
    let fourier = &report["series"][0]["fourier"];
    assert_eq!(fourier["dominant_period_days"].as_f64(), Some(20.0));
    assert_eq!(fourier["dominant_bin"].as_u64(), Some(3));
    assert!(report.get("coherence").is_none());
    assert!(schema_errors(&report).is_empty(), "{:?}", schema_errors(&report));
}

fn compare(dir: &Path, x: &Path, y: &Path, extra: &[&str]) -> Value {
    let mut args = vec!["compare", "--input", path_str(x), "--input2", path_str(y), "--out", path_str(dir)];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    read_report(dir)
}

#[test]
fn compare_self_and_anti_phase_pairs() {
    let dir = scratch("pairs");
    let x = synth(&dir, "x.csv", &["--n", "128", "--period", "20", "--noise", "0.2", "--seed", "4"]);
    let neg = dir.join("neg.csv");
    negate_csv(&x, &neg);

    let same = compare(&dir.join("same"), &x, &x, &[]);
    let c = &same["coherence"];
    assert!(c["mean_phase"].as_f64().unwrap().abs() < 0.1);
    assert!(c["mean_r2_in_coi"].as_f64().unwrap() > 0.99);

    let anti = compare(&dir.join("anti"), &x, &neg, &[]);
    let phase = anti["coherence"]["mean_phase"].as_f64().unwrap();
    assert!((phase.abs() - PI).abs() < 0.1, "{phase}");
    for r in [&same, &anti] {
        assert!(schema_errors(r).is_empty(), "{:?}", schema_errors(r));
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let dir = scratch("schema");
    let x = synth(&dir, "x.csv", &["--n", "61", "--period", "20", "--noise", "0.3", "--seed", "1"]);
    let mut report = compare(&dir, &x, &x, &[]);
    assert!(schema_errors(&report).is_empty());
    report["series"][0]["fourier"]["dominant_bin"] = Value::from(0);
    assert!(!schema_errors(&report).is_empty());
    report["series"][0]["fourier"]["dominant_bin"] = Value::from(3);
    report["extra"] = Value::from(1);
    assert!(!schema_errors(&report).is_empty());
}

fn assert_finite_numbers(v: &Value, path: &str) {
    match v {
        Value::Number(n) => assert!(n.as_f64().is_some_and(f64::is_finite), "{path}"),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, x)| assert_finite_numbers(x, &format!("{path}[{i}]"))),
        Value::Object(map) => map.iter().for_each(|(k, x)| assert_finite_numbers(x, &format!("{path}.{k}"))),
        _ => {}
    }
}

/// Rebuilds the command line from a report's configuration echo.
fn argv_from_config(config: &Value, out: &Path) -> Vec<String> {
    let mut argv = vec![config["command"].as_str().unwrap().to_string()];
    let inputs = config["inputs"].as_array().unwrap();
    argv.extend(["--input".into(), inputs[0].as_str().unwrap().into()]);
    if let Some(second) = inputs.get(1) {
        argv.extend(["--input2".into(), second.as_str().unwrap().into()]);
    }
    let wavelets = config["wavelets"].as_array().unwrap();
    let wavelet = if wavelets.len() == 2 { "both" } else { wavelets[0].as_str().unwrap() };
    let num = |k: &str| config[k].as_f64().unwrap().to_string();
    argv.extend([
        "--dt".into(),
        num("dt"),
        "--levels".into(),
        config["levels"].to_string(),
        "--wavelet".into(),
        wavelet.into(),
        "--cwt-wavelet".into(),
        config["cwt_wavelet"].as_str().unwrap().into(),
        "--omega0".into(),
        num("omega0"),
        "--dj".into(),
        num("dj"),
        "--out".into(),
        out.to_str().unwrap().into(),
    ]);
    if let Some(seed) = config["seed"].as_u64() {
        argv.extend(["--seed".into(), seed.to_string()]);
    }
    if config["command"] == "compare" {
        argv.extend([
            "--coherence-wavelet".into(),
            config["coherence_wavelet"].as_str().unwrap().into(),
            "--min-r2".into(),
            num("min_r2"),
            "--stride".into(),
            config["stride"].to_string(),
        ]);
    }
    argv
}

#[test]
fn configuration_echo_reproduces_the_report() {
    let dir = scratch("echo");
    let x = synth(&dir, "x.csv", &["--n", "61", "--period", "20", "--noise", "0.3", "--seed", "1"]);
    let y = synth(&dir, "y.csv", &["--n", "61", "--period", "15", "--noise", "0.3", "--seed", "2"]);
    let first = compare(
        &dir.join("first"),
        &x,
        &y,
        &["--dj", "0.2", "--levels", "4", "--wavelet", "db4", "--cwt-wavelet", "cgau2", "--min-r2", "0.6", "--stride", "3", "--seed", "5"],
    );
    assert_finite_numbers(&first, "$");

    let again = dir.join("again");
    let argv = argv_from_config(&first["config"], &again);
    let out = run(&argv.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(report_without_timestamp(&dir.join("first")), report_without_timestamp(&again));
}

fn plot_run(dir: &Path) {
    let x = synth(dir, "summer.csv", &["--n", "61", "--period", "20", "--amp", "1.5", "--offset", "4", "--noise", "0.3", "--seed", "11"]);
    let y = synth(dir, "winter.csv", &["--n", "61", "--period", "15", "--amp", "1.2", "--phase", "3", "--offset", "6", "--noise", "0.3", "--seed", "12"]);
    let out = run(&["compare", "--input", path_str(&x), "--input2", path_str(&y), "--out", path_str(&dir.join("out")), "--plots", "--dj", "0.25"]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn plots_are_well_formed_and_match_golden_files() {
    let dir = scratch("golden");
    plot_run(&dir);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("SEASONWAVE_UPDATE_GOLDEN").is_some();
    for name in PLOTS {
        let text = fs::read_to_string(dir.join("out").join(name)).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        let expected = golden.join(name);
        if update {
            fs::write(&expected, &text).unwrap();
        } else {
            let want = fs::read_to_string(&expected).unwrap_or_else(|_| panic!("missing golden {name}"));
            assert!(want == text, "{name} differs from its golden file");
        }
    }
}

#[test]
fn analyze_writes_only_single_series_plots() {
    let dir = scratch("single");
    let csv = synth(&dir, "s.csv", &["--n", "64", "--period", "16", "--noise", "0.1", "--seed", "3"]);
    let out = run(&["analyze", "--input", path_str(&csv), "--out", path_str(&dir), "--plots", "--wavelet", "haar"]);
    assert!(out.status.success(), "{}", stderr(&out));
    for name in &PLOTS[..4] {
        roxmltree::Document::parse(&fs::read_to_string(dir.join(name)).unwrap()).unwrap();
    }
    assert!(!dir.join("coherence.svg").exists());
    let report = read_report(&dir);
    assert_eq!(report["series"][0]["dwt"].as_array().unwrap().len(), 1);
}
