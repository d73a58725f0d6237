use proptest::prelude::*;
use smoothfront::benchmarks::CurvePs;
use smoothfront::bezier::{
    bezier_eval, constraint, navigational_order, sample_parameter, sample_points,
    sample_standardized, ControlPolygon,
};
use smoothfront::indicators::ReferencePoint;
use smoothfront::problem::{approximation_set, EvaluationCounter, MoProblem};

const R: ReferencePoint<f64> = ReferencePoint([11.0, 11.0]);

fn polygon(dim: usize, lo: f64, hi: f64) -> impl Strategy<Value = ControlPolygon<f64>> {
    (2usize..6).prop_flat_map(move |q| {
        prop::collection::vec(prop::collection::vec(lo..hi, dim), q)
            .prop_map(|pts| ControlPolygon::new(&pts).unwrap())
    })
}

/// De Casteljau evaluation, independent of the Bernstein form.
fn de_casteljau(poly: &ControlPolygon<f64>, t: f64) -> Vec<f64> {
    let mut pts: Vec<Vec<f64>> = poly.points().map(<[f64]>::to_vec).collect();
    while pts.len() > 1 {
        pts = pts
            .windows(2)
            .map(|w| {
                w[0].iter()
                    .zip(&w[1])
                    .map(|(a, b)| (1.0 - t) * a + t * b)
                    .collect()
            })
            .collect();
    }
    pts.pop().unwrap()
}

fn valid_chain(f: &[[f64; 2]], order: &[usize]) -> bool {
    order
        .windows(2)
        .all(|w| w[0] < w[1] && f[w[1]][1] < f[w[0]][1] && f[w[1]][0] > f[w[0]][0])
}

proptest! {
    #[test]
    fn bernstein_form_matches_de_casteljau(poly in polygon(3, -5.0, 5.0), t in 0.0..=1.0f64) {
        let a = bezier_eval(&poly, t).unwrap();
        let b = de_casteljau(&poly, t);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn curve_stays_in_control_point_bounding_box(poly in polygon(4, -5.0, 5.0), p in 2usize..20) {
        for x in sample_points(&poly, p).unwrap() {
            for (d, &v) in x.iter().enumerate() {
                let lo = poly.points().map(|c| c[d]).fold(f64::INFINITY, f64::min);
                let hi = poly.points().map(|c| c[d]).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
            }
        }
    }

    #[test]
    fn reversing_the_polygon_reverses_the_curve(poly in polygon(3, -5.0, 5.0), p in 2usize..15) {
        let rev = poly.reversed();
        for i in 0..p {
            let t: f64 = sample_parameter(i, p);
            let a = bezier_eval(&poly, t).unwrap();
            let b = bezier_eval(&rev, 1.0 - t).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn standardized_samples_start_left(poly in polygon(2, -1.0, 2.0), p in 2usize..12) {
        let mut counter = EvaluationCounter::unlimited();
        let (set, _) = sample_standardized(&poly, p, &CurvePs, &mut counter).unwrap();
        prop_assert_eq!(counter.fevals(), p as u64);
        prop_assert!(set.f[0][0] <= set.f[p - 1][0]);
        for (i, x) in set.x.iter().enumerate() {
            prop_assert_eq!(x, &bezier_eval(&set.polygon, set.t[i]).unwrap());
            prop_assert_eq!(set.f[i], CurvePs.objectives(x));
        }
    }

    #[test]
    fn navigational_order_is_the_greedy_left_to_right_chain(f in prop::collection::vec((0u8..8, 0u8..8).prop_map(|(a, b)| [a as f64, b as f64]), 1..9)) {
        let nav = navigational_order(&f);
        let order = &nav.order;
        prop_assert!(!order.is_empty());
        let eta = order[0];
        let best_f1 = f.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(f[eta][0], best_f1);
        prop_assert!(f.iter().all(|v| v[0] > best_f1 || v[1] >= f[eta][1]));
        prop_assert!(valid_chain(&f, order));
        let front = approximation_set(&f);
        prop_assert!(order.iter().all(|i| front.contains(i)));
        // every sample after eta that was skipped was dominated or would not improve f2
        for j in eta + 1..f.len() {
            if !order.contains(&j) {
                let last = order.iter().copied().filter(|&i| i < j).max().unwrap();
                prop_assert!(!front.contains(&j) || f[j][1] >= f[last][1]);
            }
        }
        prop_assert_eq!(nav.front.clone(), order.iter().map(|&i| f[i]).collect::<Vec<_>>());
    }

    #[test]
    fn constraint_vanishes_iff_every_sample_is_navigable(poly in polygon(2, -0.5, 1.5), p in 3usize..12) {
        let mut counter = EvaluationCounter::unlimited();
        let (set, _) = sample_standardized(&poly, p, &CurvePs, &mut counter).unwrap();
        let distinct = set.f.windows(2).all(|w| w[0] != w[1]);
        prop_assume!(distinct);
        let nav = navigational_order(&set.f);
        let c = constraint(&set.f, &nav, &R).unwrap();
        prop_assert!(c >= 0.0);
        prop_assert_eq!(c == 0.0, nav.len() == p);
    }
}
