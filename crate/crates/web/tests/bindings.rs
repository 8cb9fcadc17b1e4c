use stirzeta_web::{gf_curve, gf_curve_json, row, stirling_row_json, sweep, zeta_sweep_json};

#[test]
fn row_matches_known_values() {
    let r = row(2, 2).unwrap();
    assert_eq!((r[1].numerator.as_str(), r[1].denominator.as_str()), ("-3", "4"));
    assert_eq!((r[2].numerator.as_str(), r[2].denominator.as_str()), ("11", "36"));
    assert!(r.iter().all(|e| e.scaled > 0.0 && e.scaled <= 1.0));
}

#[test]
fn sweep_decays() {
    let pts = sweep(2, 6, 12).unwrap();
    assert_eq!(pts.len(), 7);
    assert!(pts.last().unwrap().abs_err < pts[0].abs_err);
    assert!(pts.iter().all(|p| p.abs_err < 50.0 * p.envelope));
}

#[test]
fn gf_partial_sums_approach_closed_form() {
    let c = gf_curve(3, 1, 2, 40).unwrap();
    assert!((c.partial_sums.last().unwrap() - c.closed).abs() < 1e-14);
    assert!(c.closed_radius <= 1e-20);
}

#[test]
fn json_wrappers_report_errors() {
    assert!(stirling_row_json(0, 5).contains("\"error\""));
    assert!(zeta_sweep_json(2, 1, 3).contains("\"error\""));
    assert!(gf_curve_json(2, 1, 0, 10).contains("\"error\""));
    assert!(stirling_row_json(2, 3).starts_with('['));
}
