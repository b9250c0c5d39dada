//! Builds the sinc differentiation matrices on a small grid, prints a corner
//! of each, and differentiates a Gaussian to show spectral accuracy.
//!
//! cargo run --example derivative_matrices

use sinc_kdv::sinc_basis::{derivative_matrix, derivative_matrix_general, Grid};

fn main() -> sinc_kdv::Result<()> {
    let small = Grid::new(0.0, 1.0, 6)?;
    for r in 0..=3 {
        let d = derivative_matrix(&small, r)?;
        println!("D{r} (h = {:.3}), top-left 4x4:", d.spacing());
        for i in 0..4 {
            let row: Vec<String> = (0..4).map(|j| format!("{:>10.3}", d.entry(i, j))).collect();
            println!("  {}", row.join(" "));
        }
    }

    // f(x) = exp(-x^2) and its first three derivatives
    let f = |x: f64| (-x * x).exp();
    let exact = [
        |x: f64| -2.0 * x * (-x * x).exp(),
        |x: f64| (4.0 * x * x - 2.0) * (-x * x).exp(),
        |x: f64| (12.0 * x - 8.0 * x.powi(3)) * (-x * x).exp(),
    ];
    println!("\nmax nodal error differentiating exp(-x^2) on [-10, 10]:");
    println!("{:>6} {:>12} {:>12} {:>12}", "n", "D1", "D2", "D3");
    for n in [21, 41, 81, 161] {
        let grid = Grid::new(-10.0, 10.0, n)?;
        let u = grid.sample(f);
        let mut errs = Vec::new();
        for (r, df) in exact.iter().enumerate() {
            let du = derivative_matrix(&grid, r + 1)?.apply(&u)?;
            let err = grid
                .nodes()
                .iter()
                .zip(&du)
                .map(|(&x, v)| (v - df(x)).abs())
                .fold(0.0, f64::max);
            errs.push(err);
        }
        println!(
            "{n:>6} {:>12.3e} {:>12.3e} {:>12.3e}",
            errs[0], errs[1], errs[2]
        );
    }

    let grid = Grid::new(-10.0, 10.0, 81)?;
    let d4 = derivative_matrix_general(&grid, 4)?;
    println!(
        "\nD4 diagonal from the general formula: {:.6}",
        d4.entry(0, 0)
    );
    Ok(())
}
