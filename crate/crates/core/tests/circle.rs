use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use sector_kit::circle_theta::{
    convergence_report, gauge_equivalence_check, momentum_operator, momentum_spectrum, position_operator, sample,
    translation_cycle, translation_unitary, Stencil, ThetaSector,
};
use sector_kit::linalg;
use sector_kit::Error;

const THETAS: [f64; 4] = [0.0, PI / 2.0, PI, 3.0];

fn sector(theta: f64) -> ThetaSector {
    ThetaSector::new(theta).unwrap()
}

#[test]
fn spectral_stencil_reproduces_twisted_momenta() {
    for theta in THETAS {
        let rows = momentum_spectrum(sector(theta), 128, 16, Stencil::Spectral).unwrap();
        assert_eq!(rows.len(), 33);
        for r in rows {
            let exact = theta + TAU * r.k as f64;
            assert!((r.eigenvalue - exact).abs() < 1e-9, "θ={theta} k={}: {}", r.k, r.eigenvalue);
        }
    }
}

#[test]
fn central_differences_match_the_sine_dispersion() {
    // Plane waves diagonalize the stencil: λ = n sin((θ + 2πk)/n).
    for theta in THETAS {
        for n in [64usize, 128] {
            for r in momentum_spectrum(sector(theta), n, 8, Stencil::CentralDifference).unwrap() {
                let kappa = theta + TAU * r.k as f64;
                assert!((r.eigenvalue - n as f64 * (kappa / n as f64).sin()).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn central_differences_converge_at_second_order() {
    for theta in THETAS {
        let report = convergence_report(sector(theta), &[64, 128, 256], 8).unwrap();
        assert!(report.min_order() >= 1.9, "θ={theta}: {:?}", report.fd_orders);
        assert!(report.spectral_errors.iter().all(|&e| e < 1e-9));
    }
}

#[test]
fn gauge_conjugation_removes_the_twist() {
    for theta in THETAS {
        let g = gauge_equivalence_check(sector(theta), 256, Stencil::Spectral).unwrap();
        assert!(g.residual < 1e-8, "θ={theta}: {}", g.residual);
        assert!((g.c_theta - theta).abs() < 1e-9);
        assert!(g.eigenvalue_distance < 1e-8);
    }
}

#[test]
fn finite_difference_gauge_defect_is_second_order_on_low_modes() {
    let theta = 1.0;
    let defects: Vec<f64> = [64, 128, 256]
        .iter()
        .map(|&n| gauge_equivalence_check(sector(theta), n, Stencil::CentralDifference).unwrap().low_mode_residual)
        .collect();
    for w in defects.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order > 1.9, "{defects:?}");
    }
}

#[test]
fn momentum_operators_are_hermitian() {
    for stencil in [Stencil::CentralDifference, Stencil::Spectral] {
        for theta in THETAS {
            let d = momentum_operator(sector(theta), 32, stencil).unwrap();
            assert!(linalg::hermiticity_residual(d.matrix()) < 1e-12);
        }
    }
}

#[test]
fn sectors_are_periodic_in_theta() {
    for stencil in [Stencil::CentralDifference, Stencil::Spectral] {
        let a = momentum_operator(sector(1.0), 32, stencil).unwrap();
        let b = momentum_operator(sector(1.0 + TAU), 32, stencil).unwrap();
        let c = momentum_operator(sector(1.0 - 3.0 * TAU), 32, stencil).unwrap();
        assert!(linalg::max_abs_diff(a.matrix(), b.matrix()) < 1e-12);
        assert!(linalg::max_abs_diff(a.matrix(), c.matrix()) < 1e-12);
    }
    assert!(matches!(ThetaSector::new(f64::NAN), Err(Error::Domain(_))));
}

#[test]
fn translations_compose_and_close_up_to_a_phase() {
    let n = 16;
    for theta in THETAS {
        let s = sector(theta);
        let quarter = translation_unitary(0.25, s, n).unwrap();
        let half = translation_unitary(0.5, s, n).unwrap();
        assert!(linalg::max_abs_diff(&(quarter.matrix() * quarter.matrix()), half.matrix()) < 1e-12);

        let cycle = translation_cycle(s, n).unwrap();
        assert!(cycle.unitarity_residual < 1e-12);
        assert!(cycle.cycle_residual < 1e-12);
        let expected = Complex64::from_polar(1.0, theta / TAU);
        assert!((Complex64::from_polar(1.0, cycle.cycle_phase) - expected).norm() < 1e-12);
    }
    assert!(translation_unitary(0.3, sector(0.0), 16).is_err());
    assert!(translation_unitary(1.0, sector(0.0), 16).is_err());
}

#[test]
fn position_operator_is_sector_independent_and_diagonal() {
    let samples = sample(16, |x| Complex64::new((TAU * x).cos(), 0.0));
    let x = position_operator(&samples).unwrap();
    assert!(linalg::hermiticity_residual(x.matrix()) < 1e-15);
    assert_eq!(x.matrix()[(0, 0)], Complex64::new(1.0, 0.0));
    assert_eq!(x.matrix()[(0, 1)], Complex64::new(0.0, 0.0));
}

#[test]
fn small_grids_and_oversized_k_are_rejected() {
    assert!(matches!(momentum_operator(sector(0.0), 4, Stencil::Spectral), Err(Error::Domain(_))));
    assert!(momentum_spectrum(sector(0.0), 32, 9, Stencil::Spectral).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn spectral_accuracy_for_any_theta(theta in -10.0f64..10.0) {
        let s = ThetaSector::new(theta).unwrap();
        for r in momentum_spectrum(s, 64, 16, Stencil::Spectral).unwrap() {
            prop_assert!(r.error < 1e-9);
            prop_assert!((r.reference - (s.theta() + TAU * r.k as f64)).abs() < 1e-12);
        }
    }
}
