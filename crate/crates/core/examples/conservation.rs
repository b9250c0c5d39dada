//! Tracks the discrete mass, momentum and energy sums of the soliton.
//!
//! cargo run --example conservation

use sinc_kdv::equations::{EquationSpec, ProblemSetup};
use sinc_kdv::sinc_basis::Grid;
use sinc_kdv::stepper;

fn main() -> sinc_kdv::Result<()> {
    let grid = Grid::new(-15.0, 15.0, 100)?;
    let setup = ProblemSetup::new(EquationSpec::kdv(), grid, 0.5, 0.1, 5.0)?;
    let observers: Vec<f64> = (0..=10).map(|k| k as f64 * 0.5).collect();
    let traj = stepper::run(&setup, &observers)?;

    println!(
        "continuous values: I1 = 2, I2 = 2/3, I3 = 26/45 = {:.6}",
        26.0 / 45.0
    );
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>12} {:>11}",
        "t", "I1", "I2", "I3", "-h/3 sum u^3", "L_inf"
    );
    for r in &traj.records {
        println!(
            "{:>5} {:>10.6} {:>10.6} {:>10.6} {:>12.7} {:>11.3e}",
            r.t, r.i1, r.i2, r.i3, r.i3_cubic, r.l_inf
        );
    }
    Ok(())
}
