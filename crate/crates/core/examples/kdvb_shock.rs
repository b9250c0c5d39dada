//! KdV-Burgers travelling shock. Runs a case where the reference profile is
//! an exact solution and one where it only approximates the dynamics.
//!
//! cargo run --example kdvb_shock

use sinc_kdv::equations::{check_reference, EquationSpec, ProblemSetup};
use sinc_kdv::sinc_basis::Grid;
use sinc_kdv::stepper;

fn report(label: &str, setup: &ProblemSetup, observers: &[f64]) -> sinc_kdv::Result<()> {
    let eq = &setup.equation;
    let check = check_reference(setup, 5);
    println!(
        "{label}: eps = {}, nu = {}, mu = {}, n = {}, [{}, {}], dt = {}",
        eq.epsilon(),
        eq.nu(),
        eq.mu(),
        setup.grid.len(),
        setup.grid.a(),
        setup.grid.b(),
        setup.dt
    );
    println!(
        "  reference {} (relative residual {:.2e})",
        if check.exact {
            "is exact"
        } else {
            "is approximate"
        },
        check.relative_residual
    );
    let traj = stepper::run(setup, observers)?;
    for r in &traj.records {
        println!(
            "  t = {:>4}: L_inf = {:.5e}, L_2 = {:.5e}",
            r.t, r.l_inf, r.l_2
        );
    }
    Ok(())
}

fn main() -> sinc_kdv::Result<()> {
    let observers: Vec<f64> = (1..=9).map(f64::from).collect();

    let exact = ProblemSetup::new(
        EquationSpec::kdvb(1.0, 0.001, 0.001)?,
        Grid::new(-40.0, 100.0, 100)?,
        0.5,
        0.05,
        9.0,
    )?;
    report("smooth shock", &exact, &observers)?;

    let approx = ProblemSetup::new(
        EquationSpec::kdvb(2.0, 0.005, 0.1)?,
        Grid::new(-100.0, 100.0, 100)?,
        0.5,
        0.02,
        3.0,
    )?;
    report("dispersive shock", &approx, &[1.0, 2.0, 3.0])?;
    Ok(())
}
