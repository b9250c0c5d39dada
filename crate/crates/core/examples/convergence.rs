//! Time-step refinement study at a fixed grid, and grid refinement at a
//! fixed small step.
//!
//! cargo run --release --example convergence

use sinc_kdv::equations::{EquationSpec, ProblemSetup};
use sinc_kdv::sinc_basis::Grid;
use sinc_kdv::stepper;

fn final_error(n: usize, dt: f64, theta: f64) -> sinc_kdv::Result<f64> {
    let setup = ProblemSetup::new(
        EquationSpec::kdv(),
        Grid::new(-15.0, 15.0, n)?,
        theta,
        dt,
        0.9,
    )?;
    Ok(stepper::run(&setup, &[0.9])?.records[0].l_inf)
}

fn main() -> sinc_kdv::Result<()> {
    println!("L_inf at T = 0.9, n = 100");
    println!("{:>8} {:>12} {:>12}", "dt", "theta=0.5", "theta=1");
    for dt in [0.1, 0.05, 0.025, 0.01, 0.001] {
        println!(
            "{dt:>8} {:>12.4e} {:>12.4e}",
            final_error(100, dt, 0.5)?,
            final_error(100, dt, 1.0)?
        );
    }

    println!("\nL_inf at T = 0.9, dt = 0.001, theta = 0.5");
    for n in [25, 50, 75, 100, 150] {
        println!("n = {n:>3}: {:.4e}", final_error(n, 0.001, 0.5)?);
    }
    Ok(())
}
