mod common;

use common::jordan2;
use numrange::calculus::DiskFunction;
use numrange::verify::{
    check_drury, check_region_s, extremal_search, nilpotent_seed, parse_reports, reports_to_text, run_suite, witness_residual, SearchSettings, Suite,
};
use proptest::prelude::*;

#[test]
fn reports_are_deterministic() {
    for suite in Suite::ALL {
        let a = run_suite(suite, 8, 99);
        let b = run_suite(suite, 8, 99);
        assert_eq!(a.to_text(), b.to_text());
    }
    assert_ne!(run_suite(Suite::Power, 8, 1).to_text(), run_suite(Suite::Power, 8, 2).to_text());
}

#[test]
fn text_and_json_round_trip_with_rechecked_witnesses() {
    let reports: Vec<_> = Suite::ALL.iter().map(|&s| run_suite(s, 5, 3)).collect();
    let text = reports_to_text(&reports);
    let parsed = parse_reports(&text).unwrap();
    assert_eq!(parsed, reports);
    for report in &parsed {
        let witness = report.witness.as_ref().unwrap();
        let again = witness_residual(report.suite, witness).unwrap();
        assert_eq!(again.residual.to_bits(), report.worst_residual.to_bits(), "{}", report.suite.name());
    }
    let json: serde_json::Value = serde_json::to_value(&reports).unwrap();
    assert_eq!(json[0]["suite"], "berger-stampfli");
    assert!(json[5]["witness"]["function"].as_str().unwrap().starts_with("compose"));
}

#[test]
fn drury_report_has_containment_stats() {
    let report = check_drury(1, 7);
    assert!(report.passed());
    assert!(report.stat("max.teardrop_excess").is_some());
    assert_eq!(report.stat("boundary_angles"), Some("360"));
    assert_eq!(report.checks, 361);
}

#[test]
fn region_s_sharpness_is_recorded() {
    let report = check_region_s(10, 4, 5);
    assert!(report.passed());
    assert_eq!(report.stat("sharpness.failures"), Some("0"));
    let det_error: f64 = report.stat("sharpness.case1_det_error").unwrap().parse().unwrap();
    assert!(det_error < 1e-12);
}

#[test]
fn search_examples() {
    let f = DiskFunction::mobius(
        num_complex::Complex64::new(1.0, 0.0),
        num_complex::Complex64::new(-2.0, 0.0),
        num_complex::Complex64::new(2.0, 0.0),
        num_complex::Complex64::new(-1.0, 0.0),
    )
    .unwrap();
    let r = extremal_search(&f, 2, 50, 3, &[jordan2()], SearchSettings::default());
    assert!(r.best_w >= 1.25 - 1e-6);
    let r = extremal_search(&DiskFunction::power(2), 3, 400, 3, &[nilpotent_seed(3)], SearchSettings::default());
    assert!(r.best_w <= 1.0 + 1e-7);
    let r = extremal_search(&DiskFunction::identity(), 4, 100, 3, &[], SearchSettings::default());
    assert!((r.best_w - 1.0).abs() < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn any_seed_passes_and_round_trips(seed in any::<u64>()) {
        let report = run_suite(Suite::LocalInequality, 4, seed);
        prop_assert!(report.passed());
        let parsed = parse_reports(&report.to_text()).unwrap();
        prop_assert_eq!(&parsed[0], &report);
    }
}
