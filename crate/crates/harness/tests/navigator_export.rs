use smoothfront_harness::navigator::{NavigatorBundle, SCHEMA_VERSION};
use smoothfront_harness::stats::summarize;
use smoothfront_harness::{
    export_navigator_bundle, run_single, Algorithm, HarnessError, ResultBundle, RunConfig,
};

fn bezea_bundle() -> ResultBundle {
    let mut cfg = RunConfig::new(Algorithm::Bezea, "curveps", 10, 20_000);
    cfg.q = Some(3);
    run_single(&cfg, 2).unwrap()
}

fn uhvea_bundle(seed: u64) -> ResultBundle {
    let cfg = RunConfig::new(Algorithm::UhveaGb, "curveps", 6, 10_000);
    run_single(&cfg, seed).unwrap()
}

#[test]
fn bezea_export_round_trips_through_a_file() {
    let bundle = bezea_bundle();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    bundle.write_json(&path).unwrap();
    let reloaded = ResultBundle::read_json(&path).unwrap();
    assert_eq!(reloaded, bundle);
    reloaded.check_consistency().unwrap();

    let nav = export_navigator_bundle(&reloaded, 200).unwrap();
    let nav_path = dir.path().join("b.nav.json");
    nav.write(&nav_path).unwrap();
    let loaded = NavigatorBundle::load(&nav_path).unwrap();
    assert_eq!(loaded, nav);

    let curve = loaded.curve.as_ref().unwrap();
    assert_eq!(curve.dense.len(), 200);
    assert!(curve.dense.windows(2).all(|w| w[0].t < w[1].t));
    assert_eq!(curve.dense[0].t, 0.0);
    assert_eq!(curve.dense[199].t, 1.0);
    assert_eq!(curve.control_points.len(), 3);
    assert!(!loaded.meta.discrete);
    assert!(loaded.points.iter().all(|p| p.t.is_some()));

    let (hv, uhv, sm) = loaded.recompute_metrics().unwrap();
    assert!((hv - bundle.metrics.hv).abs() <= 1e-9);
    assert!((uhv - bundle.metrics.uhv).abs() <= 1e-9);
    match (sm, bundle.metrics.sm) {
        (Some(a), Some(b)) => assert!((a - b).abs() <= 1e-9),
        (a, b) => assert_eq!(a, b),
    }
}

#[test]
fn resampling_the_curve_matches_stored_samples() {
    let bundle = bezea_bundle();
    let a = export_navigator_bundle(&bundle, 200).unwrap();
    let mut without = bundle.clone();
    without.dense = None;
    let b = export_navigator_bundle(&without, 200).unwrap();
    assert_eq!(a, b);
    let sparse = export_navigator_bundle(&bundle, 7).unwrap();
    assert_eq!(sparse.curve.unwrap().dense.len(), 7);
}

#[test]
fn uhvea_export_is_discrete() {
    let bundle = uhvea_bundle(3);
    let nav = export_navigator_bundle(&bundle, 200).unwrap();
    assert!(nav.curve.is_none());
    assert!(nav.meta.discrete);
    assert!(nav.points.iter().all(|p| p.t.is_none()));
    let json = serde_json::to_value(&nav).unwrap();
    assert!(json["curve"].is_null());
    assert!(json["points"][0].get("t").is_none());
    for key in ["meta", "points", "nav_order", "metrics", "trace"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    let (hv, _, sm) = nav.recompute_metrics().unwrap();
    assert!((hv - bundle.metrics.hv).abs() <= 1e-9);
    assert_eq!(sm.is_some(), bundle.metrics.sm.is_some());
}

#[test]
fn schema_errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let mut nav = export_navigator_bundle(&bezea_bundle(), 20).unwrap();
    nav.meta.schema_version = SCHEMA_VERSION + 1;
    let path = dir.path().join("v.json");
    nav.write(&path).unwrap();
    assert!(matches!(
        NavigatorBundle::load(&path),
        Err(HarnessError::SchemaVersion { .. })
    ));

    let mut nav = export_navigator_bundle(&bezea_bundle(), 20).unwrap();
    nav.nav_order.push(99);
    assert!(nav.validate().is_err());

    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    assert!(matches!(
        NavigatorBundle::load(&path),
        Err(HarnessError::Json { .. })
    ));
}

#[test]
fn tampered_bundles_fail_the_consistency_check() {
    let mut bundle = bezea_bundle();
    bundle.metrics.hv += 1e-6;
    assert!(bundle.check_consistency().is_err());
    let mut bundle = uhvea_bundle(1);
    bundle.points[0].f[0] -= 0.5;
    assert!(bundle.check_consistency().is_err());
}

#[test]
fn summary_ignores_bundle_order() {
    let mut bundles: Vec<ResultBundle> = (0..4).map(uhvea_bundle).collect();
    let mut cfg = RunConfig::new(Algorithm::Bezea, "curveps", 6, 10_000);
    cfg.q = Some(2);
    bundles.extend((0..4).map(|s| run_single(&cfg, s).unwrap()));
    let a = summarize(&bundles, None).unwrap();
    bundles.reverse();
    bundles.swap(1, 5);
    let b = summarize(&bundles, None).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.cells.len(), 2);
    assert_eq!(a.cells.iter().filter(|c| c.p_value.is_none()).count(), 1);

    let mut other = uhvea_bundle(9);
    other.config.p = 7;
    bundles.push(other);
    assert!(matches!(
        summarize(&bundles, None),
        Err(HarnessError::Mismatch(_))
    ));
}

#[test]
fn repetitions_use_consecutive_seeds() {
    let mut cfg = RunConfig::new(Algorithm::UhveaGb, "curveps", 5, 3_000);
    cfg.seed = 10;
    cfg.repetitions = 3;
    let bundles = smoothfront_harness::run_experiment(&cfg).unwrap();
    let seeds: Vec<u64> = bundles.iter().map(|b| b.seed).collect();
    assert_eq!(seeds, vec![10, 11, 12]);
    assert!(bundles.iter().all(|b| b.fevals <= 3_000));
    assert!(!bundles[0].same_outcome(&bundles[1]));
}
