use std::f64::consts::{FRAC_PI_2, PI};

use gelfand::analysis::{
    high_tau_report, limit_profile_deviation, mass_integral, mass_integral_quadrature, sech_limit_deviation,
    sqrt_mass_integral, sqrt_mass_integral_quadrature, weak_limit_check, weak_limit_report,
};
use gelfand::{mu_exact, ProblemKind, RootSolveConfig};

#[test]
fn integral_identities() {
    for tau in [0.1, 1.0, 5.0, 20.0] {
        let closed = mass_integral(tau).unwrap();
        let quad = mass_integral_quadrature(tau, 1e-12 * closed).unwrap();
        assert!(((closed - quad) / closed).abs() <= 1e-8, "tau={tau}");
        let closed = sqrt_mass_integral(tau).unwrap();
        let quad = sqrt_mass_integral_quadrature(tau, 1e-12 * closed).unwrap();
        assert!(((closed - quad) / closed).abs() <= 1e-8, "tau={tau}");
    }
    assert!((sqrt_mass_integral(40.0).unwrap() - 2f64.sqrt() * PI).abs() <= 1e-10);
}

#[test]
fn higher_eigenvalues_approach_shifted_targets() {
    let taus = [10.0, 20.0, 40.0, 80.0];
    for j in 2..=5 {
        let r = high_tau_report(j, ProblemKind::PlusExp, &taus).unwrap();
        assert!(r.is_monotone_approach(), "j={j}: {:?}", r.deviation);
        assert!(r.measured.iter().all(|&s| s > FRAC_PI_2 * (j - 1) as f64));
    }
}

#[test]
fn first_eigenvalue_diverges() {
    let cfg = RootSolveConfig::default();
    let mus: Vec<f64> = [5.0, 10.0, 15.0, 20.0, 40.0]
        .iter()
        .map(|&t| mu_exact(1, t, ProblemKind::PlusExp, &cfg).unwrap().mu)
        .collect();
    assert!(mus.windows(2).all(|w| w[1] < w[0]));
    assert!(mus[2] < -100.0);
}

#[test]
fn concentration_profile() {
    assert!(sech_limit_deviation(50.0, 3.0, 601).unwrap() <= 1e-4);
    assert!(sech_limit_deviation(50.0, 3.0, 601).unwrap() < sech_limit_deviation(10.0, 3.0, 601).unwrap());
}

#[test]
fn pointwise_limit_of_higher_modes() {
    let d = limit_profile_deviation(3, 200.0, ProblemKind::PlusExp, 0.1, 200).unwrap();
    assert!(d <= 0.05, "{d}");
    let near = limit_profile_deviation(2, std::f64::consts::FRAC_PI_2 - 1e-6, ProblemKind::MinusExp, 0.05, 200).unwrap();
    let far = limit_profile_deviation(2, 1.2, ProblemKind::MinusExp, 0.05, 200).unwrap();
    assert!(near < far, "{near} vs {far}");
}

#[test]
fn delta_limit_for_several_test_functions() {
    type TestFn = fn(f64) -> f64;
    let tests: [(&str, TestFn); 3] = [
        ("one", |_| 1.0),
        ("gauss", |x| (-x * x).exp()),
        ("shifted", |x| 1.0 + x + (2.0 * x).cos()),
    ];
    for (name, g) in tests {
        let r = weak_limit_report(name, &[20.0, 100.0], g, 1e-10).unwrap();
        assert!(r.is_monotone_approach(), "{name}: {:?}", r.deviation);
        assert!(r.deviation[1] <= 0.05, "{name}: {:?}", r.deviation);
    }
    assert!((weak_limit_check(100.0, |_| 1.0, 1e-10).unwrap() - PI).abs() <= 0.05);
}
