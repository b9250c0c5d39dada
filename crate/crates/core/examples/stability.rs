//! Spectral radius of the one-step amplification matrix across the θ
//! family, for both linearizations of the nonlinear term.
//!
//! cargo run --example stability

use sinc_kdv::diagnostics::{self, StabilityMode, STABILITY_TOL};
use sinc_kdv::equations::{EquationSpec, ProblemSetup};
use sinc_kdv::sinc_basis::Grid;
use sinc_kdv::stepper::{self, Operators, SolverState};

fn main() -> sinc_kdv::Result<()> {
    let grid = Grid::new(-15.0, 15.0, 100)?;
    let ops = Operators::new(&grid);
    println!(
        "{:>6} {:>6} {:>14} {:>10} {:>14}",
        "theta", "dt", "rho frozen", "verdict", "rho jacobian"
    );
    for dt in [0.1, 0.01] {
        for theta in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let setup = ProblemSetup::new(EquationSpec::kdv(), grid.clone(), theta, dt, dt)?;
            let s0 = SolverState::initial(&setup);
            let frozen = diagnostics::assess_stability(
                &s0,
                &setup,
                &ops,
                StabilityMode::default(),
                STABILITY_TOL,
            )?;
            let jac = diagnostics::assess_stability(
                &s0,
                &setup,
                &ops,
                StabilityMode::Jacobian,
                STABILITY_TOL,
            )?;
            println!(
                "{theta:>6} {dt:>6} {:>14.8} {:>10} {:>14.8}",
                frozen.rho,
                if frozen.stable { "stable" } else { "unstable" },
                jac.rho
            );
        }
    }

    // what an unstable verdict means in practice
    let setup = ProblemSetup::new(EquationSpec::kdv(), grid, 0.0, 0.1, 20.0)?;
    let mut s = SolverState::initial(&setup);
    let ops = Operators::new(&setup.grid);
    print!("\ntheta = 0, dt = 0.1, max|u| every 20 steps:");
    for k in 1..=200 {
        match stepper::step(&s, &setup, &ops) {
            Ok(next) => s = next,
            Err(e) => {
                println!(" stopped: {e}");
                return Ok(());
            }
        }
        if k % 20 == 0 {
            print!(" {:.2e}", s.u.iter().fold(0.0f64, |m, v| m.max(v.abs())));
        }
    }
    println!();
    Ok(())
}
