mod common;

use sinc_kdv::equations::{
    check_reference, exact_kdv, exact_kdvb, EquationKind, EquationSpec, ProblemSetup,
};
use sinc_kdv::sinc_basis::Grid;

use common::{central_derivative, Lcg};

/// PDE residual of `f` by finite differences, together with a magnitude
/// of the individual terms for relative comparisons.
fn fd_residual(f: &dyn Fn(f64, f64) -> f64, eq: &EquationSpec, x: f64, t: f64) -> (f64, f64) {
    let d = 1e-2;
    let ut = central_derivative(|s| f(x, s), t, 1, d);
    let ux = central_derivative(|y| f(y, t), x, 1, d);
    let uxx = central_derivative(|y| f(y, t), x, 2, d);
    let uxxx = central_derivative(|y| f(y, t), x, 3, d);
    let u = f(x, t);
    let terms = [ut, eq.epsilon() * u * ux, -eq.nu() * uxx, eq.mu() * uxxx];
    let scale = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (terms.iter().sum(), scale)
}

#[test]
fn soliton_satisfies_kdv() {
    let eq = EquationSpec::kdv();
    let mut rng = Lcg::new(21);
    for _ in 0..100 {
        let x = rng.uniform(-10.0, 10.0);
        let t = rng.uniform(0.0, 2.0);
        let (res, _) = fd_residual(&|x, t| exact_kdv(x, t), &eq, x, t);
        assert!(res.abs() <= 1e-6, "residual {res} at ({x}, {t})");
    }
}

#[test]
fn shock_satisfies_kdvb_at_unit_epsilon() {
    for (nu, mu) in [(0.1, 0.1), (0.01, 0.01), (0.5, 1.0)] {
        let eq = EquationSpec::kdvb(1.0, nu, mu).unwrap();
        let mut rng = Lcg::new(22);
        for _ in 0..100 {
            let x = rng.uniform(-20.0, 20.0);
            let t = rng.uniform(0.0, 2.0);
            let (res, _) = fd_residual(&|x, t| exact_kdvb(x, t, &eq).unwrap(), &eq, x, t);
            assert!(
                res.abs() <= 1e-6,
                "nu={nu} mu={mu}: residual {res} at ({x}, {t})"
            );
        }
    }
}

#[test]
fn analytic_residual_agrees_with_finite_differences() {
    let eq = EquationSpec::kdvb(2.0, 0.005, 0.1).unwrap();
    let mut rng = Lcg::new(23);
    for _ in 0..50 {
        let x = rng.uniform(-20.0, 20.0);
        let t = rng.uniform(0.0, 2.0);
        let (fd, scale) = fd_residual(&|x, t| eq.exact(x, t), &eq, x, t);
        let (an, _) = eq.exact_residual(x, t);
        assert!((fd - an).abs() <= 1e-5 * scale.max(1e-3), "{fd} vs {an}");
    }
}

#[test]
fn soliton_translates_at_unit_speed() {
    let mut rng = Lcg::new(24);
    for _ in 0..50 {
        let x = rng.uniform(-10.0, 10.0);
        let t = rng.uniform(0.0, 3.0);
        let s = rng.uniform(0.0, 2.0);
        assert!((exact_kdv(x + s, t + s) - exact_kdv(x, t)).abs() < 1e-13);
    }
}

#[test]
fn shock_reference_flags() {
    let grid = Grid::new(-40.0, 100.0, 100).unwrap();
    let exact = ProblemSetup::new(
        EquationSpec::kdvb(1.0, 0.1, 0.1).unwrap(),
        grid.clone(),
        0.5,
        0.05,
        1.0,
    )
    .unwrap();
    assert!(check_reference(&exact, 5).exact);
    let inexact = ProblemSetup::new(
        EquationSpec::kdvb(2.0, 0.005, 0.1).unwrap(),
        grid,
        0.5,
        0.02,
        1.0,
    )
    .unwrap();
    assert!(!check_reference(&inexact, 5).exact);
}

#[test]
fn coefficient_validation() {
    assert!(EquationSpec::new(EquationKind::KdV, 6.0, 0.1, 1.0).is_err());
    assert!(EquationSpec::kdvb(1.0, -0.1, 1.0).is_err());
    assert!(EquationSpec::kdvb(1.0, 0.1, 0.0).is_err());
    assert!(EquationSpec::kdvb(f64::NAN, 0.1, 0.1).is_err());
    assert!("kdvb".parse::<EquationKind>().is_ok());
    assert!("burgers".parse::<EquationKind>().is_err());
}
