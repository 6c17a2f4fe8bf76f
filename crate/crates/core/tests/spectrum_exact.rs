use std::f64::consts::FRAC_PI_2;

use gelfand::quadrature;
use gelfand::spectrum::{self, zero_crossings};
use gelfand::{eigenfunction, mu_exact, tau1, EigenPair, Normalization, ProblemKind, RootSolveConfig};

fn cfg() -> RootSolveConfig {
    RootSolveConfig::default()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn grids() -> Vec<(ProblemKind, Vec<f64>)> {
    vec![
        (ProblemKind::PlusExp, log_grid(1e-3, 50.0, 50)),
        (ProblemKind::MinusExp, log_grid(1e-3, std::f64::consts::FRAC_PI_2 - 1e-4, 50)),
    ]
}

#[test]
fn roots_lie_inside_brackets() {
    for (kind, taus) in grids() {
        for &tau in &taus {
            for j in 1..=10 {
                let p = mu_exact(j, tau, kind, &cfg()).unwrap();
                let s = p.sqrt_abs_mu();
                let jf = j as f64;
                match kind {
                    ProblemKind::PlusExp if j == 1 && p.mu <= 0.0 => {
                        assert!(tau >= tau1() - spectrum::FOLD_WINDOW);
                        assert!(s <= tau * tau.tanh());
                    }
                    ProblemKind::PlusExp => {
                        assert!(FRAC_PI_2 * (jf - 1.0) < s && s < FRAC_PI_2 * jf, "tau={tau} j={j} s={s}");
                    }
                    ProblemKind::MinusExp => {
                        assert!(FRAC_PI_2 * jf < s && s < FRAC_PI_2 * (jf + 1.0), "tau={tau} j={j} s={s}");
                    }
                }
                assert!(p.equation_residual().unwrap().abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn eigenvalues_interlace_strictly() {
    for (kind, taus) in grids() {
        for &tau in &taus {
            let mus: Vec<f64> = (1..=10).map(|j| mu_exact(j, tau, kind, &cfg()).unwrap().mu).collect();
            assert!(mus.windows(2).all(|w| w[0] < w[1]), "{kind:?} tau={tau}: {mus:?}");
        }
    }
}

#[test]
fn first_eigenvalue_is_continuous_at_fold() {
    let t1 = tau1();
    let below = mu_exact(1, t1 - 1e-4, ProblemKind::PlusExp, &cfg()).unwrap().mu;
    let above = mu_exact(1, t1 + 1e-4, ProblemKind::PlusExp, &cfg()).unwrap().mu;
    assert!(below > 0.0 && below <= 1e-2);
    assert!((-1e-2..0.0).contains(&above));
    assert_eq!(mu_exact(1, t1, ProblemKind::PlusExp, &cfg()).unwrap().mu, 0.0);
}

fn ode_cases() -> Vec<(ProblemKind, f64)> {
    let mut v: Vec<_> = [0.3, tau1(), 2.0, 5.0].iter().map(|&t| (ProblemKind::PlusExp, t)).collect();
    v.extend([0.3, 1.0, 1.4].iter().map(|&t| (ProblemKind::MinusExp, t)));
    v
}

#[test]
fn eigenfunctions_solve_the_linearized_equation() {
    for (kind, tau) in ode_cases() {
        for j in 1..=6 {
            let p = eigenfunction(mu_exact(j, tau, kind, &cfg()).unwrap(), Normalization::SupOne).unwrap();
            let r = gelfand::verify::ode_residual(&p, 201, 1e-3).unwrap();
            assert!(r <= 1e-4, "{kind:?} tau={tau} j={j}: {r}");
        }
    }
}

#[test]
fn parity_is_exact() {
    for (kind, tau) in ode_cases() {
        for j in 1..=6 {
            let p = eigenfunction(mu_exact(j, tau, kind, &cfg()).unwrap(), Normalization::SupOne).unwrap();
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            for k in 0..=100 {
                let x = k as f64 / 100.0;
                let d = (p.value(x).unwrap() - sign * p.value(-x).unwrap()).abs();
                assert!(d <= 1e-12, "{kind:?} tau={tau} j={j} x={x}: {d}");
            }
        }
    }
}

#[test]
fn eigenfunctions_are_orthogonal() {
    for (kind, tau) in [(ProblemKind::PlusExp, 0.8), (ProblemKind::PlusExp, 3.0), (ProblemKind::MinusExp, 1.0)] {
        let profiles: Vec<_> = (1..=5)
            .map(|j| eigenfunction(mu_exact(j, tau, kind, &cfg()).unwrap(), Normalization::L2One).unwrap())
            .collect();
        for a in 0..5 {
            for b in 0..5 {
                let ip = quadrature::integrate(
                    |x| profiles[a].value(x).unwrap() * profiles[b].value(x).unwrap(),
                    -1.0,
                    1.0,
                    1e-11,
                )
                .unwrap();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip - expect).abs() <= 1e-6, "{kind:?} tau={tau} <{a},{b}> = {ip}");
            }
        }
    }
}

#[test]
fn zero_count_and_positivity() {
    for (kind, tau) in ode_cases() {
        for j in 1..=8 {
            let p = eigenfunction(mu_exact(j, tau, kind, &cfg()).unwrap(), Normalization::SupOne).unwrap();
            assert_eq!(zero_crossings(&p, 4096).unwrap(), j - 1, "{kind:?} tau={tau} j={j}");
        }
    }
    let pair = mu_exact(1, 4.0, ProblemKind::PlusExp, &cfg()).unwrap();
    assert!(pair.mu < 0.0);
    for k in 1..200 {
        let x = -1.0 + k as f64 / 100.0;
        assert!(spectrum::raw_eigenfunction(&pair, x).unwrap() > 0.0);
    }
}

#[test]
fn normalizations_agree_up_to_scale() {
    let pair = mu_exact(3, 1.5, ProblemKind::PlusExp, &cfg()).unwrap();
    let raw = eigenfunction(pair, Normalization::PaperRaw).unwrap();
    let sup = eigenfunction(pair, Normalization::SupOne).unwrap();
    let l2 = eigenfunction(pair, Normalization::L2One).unwrap();
    assert_eq!(raw.scale(), 1.0);
    for x in [-0.7, -0.2, 0.1, 0.55] {
        let r = raw.value(x).unwrap();
        assert!((sup.value(x).unwrap() - sup.scale() * r).abs() < 1e-15);
        assert!((l2.value(x).unwrap() / sup.value(x).unwrap() - l2.scale() / sup.scale()).abs() < 1e-12);
    }
    assert!(sup.value(0.0).unwrap() > 0.0 && l2.value(0.0).unwrap() > 0.0);
}

#[test]
fn invalid_pairs_are_rejected() {
    let bad = EigenPair { kind: ProblemKind::PlusExp, j: 2, tau: 1.0, mu: -1.0 };
    assert!(eigenfunction(bad, Normalization::SupOne).is_err());
    assert!(mu_exact(0, 1.0, ProblemKind::PlusExp, &cfg()).is_err());
    assert!(mu_exact(1, 1.6, ProblemKind::MinusExp, &cfg()).is_err());
}
