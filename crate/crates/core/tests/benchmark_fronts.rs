use proptest::prelude::*;
use smoothfront::benchmarks::{Benchmark, BiSphere, CurvePs, Wfg};
use smoothfront::problem::MoProblem;

fn gradient<P: MoProblem<f64>>(p: &P, x: &[f64], objective: usize) -> Vec<f64> {
    let h = 1e-6;
    (0..x.len())
        .map(|i| {
            let mut up = x.to_vec();
            let mut down = x.to_vec();
            up[i] += h;
            down[i] -= h;
            (p.objectives(&up)[objective] - p.objectives(&down)[objective]) / (2.0 * h)
        })
        .collect()
}

proptest! {
    #[test]
    fn wfg3_optimal_points_lie_on_the_linear_front(pos in prop::collection::vec(0.0..=1.0f64, 4)) {
        let w = Wfg::standard(3).unwrap();
        let f = w.objectives(&w.optimal_solution(&pos));
        prop_assert!((f[0] / 2.0 + f[1] / 4.0 - 1.0).abs() < 1e-9, "{:?}", f);
    }

    #[test]
    fn concave_wfg_optimal_points_lie_on_the_ellipse(which in 4u8..=9, pos in prop::collection::vec(0.0..=1.0f64, 4)) {
        let w = Wfg::standard(which).unwrap();
        let f = w.objectives(&w.optimal_solution(&pos));
        let r = (f[0] / 2.0).powi(2) + (f[1] / 4.0).powi(2);
        prop_assert!((r - 1.0).abs() < 1e-9, "wfg{} {:?}", which, f);
    }

    #[test]
    fn wfg_optimal_solutions_are_inside_the_domain(which in 1u8..=9, pos in prop::collection::vec(0.0..=1.0f64, 4)) {
        let w = Wfg::standard(which).unwrap();
        let x = w.optimal_solution(&pos);
        let (lo, hi) = MoProblem::<f64>::domain_bounds(&w).unwrap();
        prop_assert_eq!(x.len(), 24);
        for i in 0..24 {
            prop_assert!(x[i] >= lo[i] && x[i] <= hi[i]);
        }
    }

    #[test]
    fn curveps_pareto_set_has_opposed_gradients(a in 0.01..0.99f64) {
        let x = CurvePs::pareto_point(a);
        let g1 = gradient(&CurvePs, &x, 0);
        let g2 = gradient(&CurvePs, &x, 1);
        let cross = g1[0] * g2[1] - g1[1] * g2[0];
        let dot = g1[0] * g2[0] + g1[1] * g2[1];
        prop_assert!(cross.abs() < 1e-6);
        prop_assert!(dot < 0.0);
    }

    #[test]
    fn bisphere_pareto_set_is_the_segment(t in 0.01..0.99f64) {
        let b = BiSphere::new(10);
        let mut x = vec![0.0; 10];
        x[0] = t;
        let f = b.objectives(&x);
        prop_assert!((f[0].sqrt() + f[1].sqrt() - 1.0).abs() < 1e-12);
        let g1 = gradient(&b, &x, 0);
        let g2 = gradient(&b, &x, 1);
        let n1 = g1.iter().map(|v| v * v).sum::<f64>().sqrt();
        let n2 = g2.iter().map(|v| v * v).sum::<f64>().sqrt();
        let cos = g1.iter().zip(&g2).map(|(a, b)| a * b).sum::<f64>() / (n1 * n2);
        prop_assert!((cos + 1.0).abs() < 1e-6);
    }
}

#[test]
fn extreme_points_of_the_simple_problems() {
    assert_eq!(CurvePs.objectives(&[1.0, 0.0]), [0.0, 2.0]);
    assert_eq!(CurvePs.objectives(&[0.0, 1.0]), [1.01, 0.0]);
    let b = BiSphere::new(3);
    assert_eq!(b.objectives(&[0.0, 0.0, 0.0]), [0.0, 1.0]);
    assert_eq!(b.objectives(&[1.0, 0.0, 0.0]), [1.0, 0.0]);
}

#[test]
fn registry_round_trips_every_benchmark() {
    for id in ["curveps", "bisphere:n=10", "wfg1", "wfg5", "wfg9"] {
        let b: Benchmark = id.parse().unwrap();
        assert_eq!(b.id(), id);
        let (lo, hi) = MoProblem::<f64>::init_bounds(&b);
        assert_eq!(lo.len(), MoProblem::<f64>::dimension(&b));
        assert!(lo.iter().zip(&hi).all(|(a, b)| a < b));
    }
}
