use proptest::prelude::*;
use smoothfront::benchmarks::{Benchmark, CurvePs};
use smoothfront::bezea::run_bezea;
use smoothfront::gomea::{FosKind, GomeaConfig};
use smoothfront::indicators::ReferencePoint;
use smoothfront::uhvea::{partial_uhv_fitness, run_uhvea, uhv_fitness, UhvCache, UhvVariant};
use smoothfront::EvaluationCounter;

const R: ReferencePoint<f64> = ReferencePoint([11.0, 11.0]);

fn not_worse(prev: (f64, f64), next: (f64, f64)) -> bool {
    let (hv0, c0) = prev;
    let (hv1, c1) = next;
    if c0 > 0.0 {
        c1 <= c0
    } else {
        c1 == 0.0 && hv1 >= hv0
    }
}

proptest! {
    #[test]
    fn partial_uhv_matches_full_evaluation(
        phi in prop::collection::vec(-1.0..2.0f64, 12),
        moves in prop::collection::vec((0usize..6, -0.5..0.5f64, -0.5..0.5f64), 1..6),
    ) {
        let mut counter = EvaluationCounter::unlimited();
        let mut cache = UhvCache::evaluate(&phi, &CurvePs, &R, &mut counter).unwrap();
        let mut cur = phi.clone();
        for (i, dx, dy) in moves {
            cur[2 * i] += dx;
            cur[2 * i + 1] += dy;
            let before = counter.fevals();
            let partial = partial_uhv_fitness(&cur, &[i], &mut cache, &CurvePs, &R, &mut counter).unwrap();
            prop_assert_eq!(counter.fevals() - before, 1);
            let full = uhv_fitness(&cur, &CurvePs, &R, &mut EvaluationCounter::unlimited()).unwrap();
            prop_assert_eq!(partial.to_bits(), full.to_bits());
        }
    }
}

#[test]
fn bezea_elitist_never_gets_worse() {
    let wfg: Benchmark = "wfg4".parse().unwrap();
    let config = GomeaConfig::new(50, FosKind::Full, 3).with_budget(60_000);
    let run = run_bezea(&wfg, 9, 3, R, &config).unwrap();
    for w in run.trace.windows(2) {
        assert!(not_worse(
            (w[0].hv, w[0].constraint),
            (w[1].hv, w[1].constraint)
        ));
    }
    assert!(run.fevals <= 60_000);
}

#[test]
fn uhvea_elitist_never_gets_worse() {
    let config = GomeaConfig::new(20, FosKind::Full, 5).with_budget(30_000);
    let run = run_uhvea(&CurvePs, 6, R, UhvVariant::Gb, &config).unwrap();
    for w in run.trace.windows(2) {
        assert!(w[1].uhv >= w[0].uhv);
    }
    assert!(run.uhv <= run.hv + 1e-12);
}

#[test]
fn runs_are_reproducible_from_the_seed() {
    let config = GomeaConfig::new(30, FosKind::Full, 11).with_budget(20_000);
    let a = run_bezea(&CurvePs, 10, 3, R, &config).unwrap();
    let b = run_bezea(&CurvePs, 10, 3, R, &config).unwrap();
    assert_eq!(a.set, b.set);
    assert_eq!(a.hv.to_bits(), b.hv.to_bits());
    let u = run_uhvea(&CurvePs, 5, R, UhvVariant::Bb, &config).unwrap();
    let v = run_uhvea(&CurvePs, 5, R, UhvVariant::Bb, &config).unwrap();
    assert_eq!(u.set, v.set);
    let other = GomeaConfig { seed: 12, ..config };
    let c = run_bezea(&CurvePs, 10, 3, R, &other).unwrap();
    assert_ne!(a.set, c.set);
}
