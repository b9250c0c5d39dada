//! Propagates the KdV soliton 0.5 sech^2(0.5 (x - t)) and reports the
//! error against the exact travelling wave.
//!
//! cargo run --example soliton [dt]

use sinc_kdv::equations::{EquationSpec, ProblemSetup};
use sinc_kdv::sinc_basis::Grid;
use sinc_kdv::stepper;

fn main() -> sinc_kdv::Result<()> {
    let dt: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.01);
    let grid = Grid::new(-15.0, 15.0, 100)?;
    let setup = ProblemSetup::new(EquationSpec::kdv(), grid, 0.5, dt, 0.9)?;
    let observers: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let traj = stepper::run(&setup, &observers)?;

    println!("u_t + 6 u u_x + u_xxx = 0, n = 100, [-15, 15], dt = {dt}");
    println!("{:>5} {:>12} {:>12}", "t", "L_inf", "L_2");
    for r in &traj.records {
        println!("{:>5} {:>12.5e} {:>12.5e}", r.t, r.l_inf, r.l_2);
    }

    let last = traj.snapshots.last().expect("observer at T");
    let peak = last
        .u
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| setup.grid.nodes()[i])
        .unwrap_or_default();
    println!(
        "largest nodal value at x = {peak:.3}; exact crest at x = {} (h = {:.3})",
        last.t,
        setup.grid.spacing()
    );
    Ok(())
}
