use levy_extremes::rates::{
    getoor_mean_fht, rate_closed_form, rate_poisson_approx, rate_quadrature, rate_upper_bound_halfline,
};
use levy_extremes::subordinators::SubordinatorSpec;
use levy_extremes::targets::TargetSpec;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stable_closed_forms_match_quadrature(alpha in 0.2f64..1.9, k in 0.1f64..5.0, l in 0.2f64..5.0, d in 1usize..5, gap in 0.1f64..3.0) {
        let spec = SubordinatorSpec::stable(alpha, k).unwrap();
        for target in [
            TargetSpec::half_line(l).unwrap(),
            TargetSpec::sphere_exterior(l, d).unwrap(),
            TargetSpec::annulus(l, l + gap, d).unwrap(),
        ] {
            let c = rate_closed_form(&spec, &target).unwrap().rho;
            let q = rate_quadrature(&spec, &target).unwrap();
            prop_assert!(c > 0.0);
            prop_assert!(rel(q.rho, c) < 1e-6, "{:?} {:?}: {} vs {}", spec, target, q.rho, c);
            prop_assert!(q.abs_error_estimate <= 1e-8 * q.rho);
        }
    }

    #[test]
    fn gamma_sphere_closed_form_matches_quadrature(c in 0.1f64..5.0, mu in 0.05f64..5.0, l in 0.2f64..4.0) {
        let spec = SubordinatorSpec::gamma(c, mu).unwrap();
        let target = TargetSpec::sphere_exterior(l, 3).unwrap();
        let cf = rate_closed_form(&spec, &target).unwrap().rho;
        let q = rate_quadrature(&spec, &target).unwrap().rho;
        prop_assert!(rel(q, cf) < 1e-6);
    }

    #[test]
    fn upper_bound_is_twice_the_half_line_rate(alpha in 0.2f64..1.9, mu in 0.0f64..3.0, l in 0.3f64..3.0, c in 0.2f64..3.0) {
        for spec in [
            SubordinatorSpec::tempered_stable(alpha, 1.0, mu).unwrap(),
            SubordinatorSpec::gamma(c, mu.max(0.05)).unwrap(),
        ] {
            let rho = rate_quadrature(&spec, &TargetSpec::half_line(l).unwrap()).unwrap().rho;
            let up = rate_upper_bound_halfline(&spec, l).unwrap().rho;
            prop_assert!(up >= rho);
            prop_assert!(rel(up, 2.0 * rho) < 1e-6);
        }
    }

    #[test]
    fn doubling_k_doubles_stable_rates(alpha in 0.2f64..1.9, k in 0.1f64..5.0, l in 0.2f64..5.0) {
        let t = TargetSpec::half_line(l).unwrap();
        let a = rate_quadrature(&SubordinatorSpec::stable(alpha, k).unwrap(), &t).unwrap().rho;
        let b = rate_quadrature(&SubordinatorSpec::stable(alpha, 2.0 * k).unwrap(), &t).unwrap().rho;
        prop_assert!(rel(b, 2.0 * a) < 1e-12);
    }

    #[test]
    fn poisson_approximation_is_superlinear_in_density(alpha in 0.2f64..1.9, l in 0.01f64..0.2, d in 1usize..4, lambda in 1e-4f64..0.5) {
        let spec = SubordinatorSpec::stable(alpha, 1.0).unwrap();
        let a = rate_poisson_approx(&spec, lambda, l, d).unwrap();
        let b = rate_poisson_approx(&spec, 2.0 * lambda, l, d).unwrap();
        prop_assert!(rel(b, a * 2f64.powf(1.0 + alpha / d as f64)) < 1e-12);
    }
}

#[test]
fn rate_is_monotone_in_distance_for_every_family() {
    let specs = [
        SubordinatorSpec::stable(0.7, 1.0).unwrap(),
        SubordinatorSpec::tempered_stable(1.5, 2.0, 1.0).unwrap(),
        SubordinatorSpec::gamma(1.0, 0.5).unwrap(),
    ];
    for spec in specs {
        for d in [1, 3] {
            let sphere: Vec<f64> = (1..=10)
                .map(|j| {
                    rate_quadrature(&spec, &TargetSpec::sphere_exterior(0.25 * j as f64, d).unwrap())
                        .unwrap()
                        .rho
                })
                .collect();
            assert!(sphere.windows(2).all(|w| w[1] < w[0]), "{spec:?} d={d}: {sphere:?}");
        }
        let half: Vec<f64> = (1..=10)
            .map(|j| {
                rate_quadrature(&spec, &TargetSpec::half_line(0.25 * j as f64).unwrap())
                    .unwrap()
                    .rho
            })
            .collect();
        assert!(half.windows(2).all(|w| w[1] < w[0]), "{spec:?}: {half:?}");
    }
}

#[test]
fn shifted_start_equals_shorter_half_line() {
    let spec = SubordinatorSpec::tempered_stable(1.1, 1.0, 0.3).unwrap();
    let a = rate_quadrature(&spec, &TargetSpec::half_line_from(2.0, -0.5).unwrap())
        .unwrap()
        .rho;
    let b = rate_quadrature(&spec, &TargetSpec::half_line(1.5).unwrap())
        .unwrap()
        .rho;
    assert!(rel(a, b) < 1e-12);
}

#[test]
fn tempered_rate_tends_to_stable_rate() {
    let t = TargetSpec::sphere_exterior(1.0, 2).unwrap();
    let stable = rate_quadrature(&SubordinatorSpec::stable(1.2, 1.0).unwrap(), &t)
        .unwrap()
        .rho;
    let mut prev = f64::INFINITY;
    for mu in [1.0, 1e-1, 1e-2, 1e-3, 1e-4] {
        let tempered = rate_quadrature(&SubordinatorSpec::tempered_stable(1.2, 1.0, mu).unwrap(), &t)
            .unwrap()
            .rho;
        assert!(tempered < stable);
        let gap = rel(tempered, stable);
        assert!(gap < prev);
        prev = gap;
    }
    assert!(prev < 1e-2);
}

#[test]
fn getoor_mean_for_unit_flight() {
    assert!((getoor_mean_fht(1.0, 1.0, 1.0, 3).unwrap() - 0.5).abs() < 1e-14);
    assert!(getoor_mean_fht(2.0, 1.0, 1.0, 3).is_err());
}
