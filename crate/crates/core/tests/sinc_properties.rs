mod common;

use proptest::prelude::*;
use sinc_kdv::sinc_basis::{
    basis_value, cardinal_interpolate, derivative_matrix, derivative_matrix_general, sinc, Grid,
};

use common::{central_derivative, Lcg};

fn grid_strategy() -> impl Strategy<Value = Grid> {
    (-20.0f64..20.0, 0.5f64..60.0, 4usize..40)
        .prop_map(|(a, len, n)| Grid::new(a, a + len, n).unwrap())
}

proptest! {
    #[test]
    fn odd_orders_antisymmetric_even_symmetric(grid in grid_strategy()) {
        for r in 1..=3 {
            let d = derivative_matrix(&grid, r).unwrap();
            let m = d.matrix();
            let n = grid.len();
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..n {
                for j in 0..n {
                    let scale = m.max_abs();
                    prop_assert!((m[(i, j)] - sign * m[(j, i)]).abs() <= 1e-14 * scale);
                }
                if r % 2 == 1 {
                    prop_assert_eq!(m[(i, i)], 0.0);
                }
            }
        }
    }

    #[test]
    fn entries_depend_only_on_offset(grid in grid_strategy()) {
        let n = grid.len();
        for r in 0..=3 {
            let d = derivative_matrix(&grid, r).unwrap();
            let m = d.matrix();
            for i in 1..n {
                for j in 1..n {
                    prop_assert_eq!(m[(i, j)], m[(i - 1, j - 1)]);
                }
            }
        }
    }

    #[test]
    fn general_formula_matches_closed_forms(grid in grid_strategy()) {
        for r in 0..=3 {
            let closed = derivative_matrix(&grid, r).unwrap();
            let general = derivative_matrix_general(&grid, r).unwrap();
            let scale = closed.matrix().max_abs();
            let n = grid.len();
            for i in 0..n {
                for j in 0..n {
                    let diff = (closed.entry(i, j) - general.entry(i, j)).abs();
                    prop_assert!(diff <= 8.0 * f64::EPSILON * scale, "r={} ({},{}) diff {}", r, i, j, diff);
                }
            }
        }
    }

    #[test]
    fn basis_is_cardinal(grid in grid_strategy()) {
        let n = grid.len();
        for j in 0..n {
            for (i, &x) in grid.nodes().iter().enumerate() {
                let v = basis_value(&grid, j, x).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((v - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interpolant_reproduces_coefficients(
        grid in grid_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = Lcg::new(seed);
        let c = rng.vector(grid.len(), -1.0, 1.0);
        for (i, &x) in grid.nodes().iter().enumerate() {
            prop_assert!((cardinal_interpolate(&grid, &c, x).unwrap() - c[i]).abs() <= 1e-14);
        }
    }
}

#[test]
fn sinc_values() {
    assert_eq!(sinc(0.0), 1.0);
    for k in 1..20 {
        assert!(sinc(k as f64).abs() < 1e-15);
        assert!(sinc(-(k as f64)).abs() < 1e-15);
    }
    assert!((sinc(0.5) - 2.0 / std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn matrices_match_finite_differences_of_the_interpolant() {
    let mut rng = Lcg::new(7);
    for &(a, b, n) in &[(-15.0, 15.0, 40), (0.0, 1.0, 25), (-3.0, 9.0, 31)] {
        let grid = Grid::new(a, b, n).unwrap();
        let h = grid.spacing();
        let c = rng.vector(n, -1.0, 1.0);
        let delta = h / 50.0;
        for r in 1..=3 {
            let exact = derivative_matrix(&grid, r).unwrap().apply(&c).unwrap();
            let scale = exact.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (i, (&x, &want)) in grid
                .nodes()
                .iter()
                .zip(&exact)
                .enumerate()
                .take(n - 2)
                .skip(2)
            {
                let fd = central_derivative(
                    |y| cardinal_interpolate(&grid, &c, y).unwrap(),
                    x,
                    r,
                    delta,
                );
                assert!(
                    (fd - want).abs() <= 1e-6 * scale,
                    "grid [{a},{b}] n={n} r={r} i={i}: fd {fd} vs {want}"
                );
            }
        }
    }
}

#[test]
fn matrices_scale_with_spacing() {
    for n in [5, 12, 33] {
        let g1 = Grid::new(0.0, 1.0, n).unwrap();
        let g2 = Grid::new(0.0, 2.0, n).unwrap();
        for r in 0..=3 {
            let d1 = derivative_matrix(&g1, r).unwrap();
            let d2 = derivative_matrix(&g2, r).unwrap();
            let factor = 2f64.powi(r as i32);
            for i in 0..n {
                for j in 0..n {
                    let lhs = d1.entry(i, j);
                    let rhs = factor * d2.entry(i, j);
                    assert!(
                        (lhs - rhs).abs() <= 1e-15 * lhs.abs().max(1.0),
                        "n={n} r={r}"
                    );
                }
            }
        }
    }
}

#[test]
fn unsupported_orders_rejected() {
    let grid = Grid::new(0.0, 1.0, 8).unwrap();
    assert!(derivative_matrix(&grid, 4).is_err());
    assert!(derivative_matrix_general(&grid, 9).is_err());
    assert!(derivative_matrix_general(&grid, 8).is_ok());
}

#[test]
fn mismatched_lengths_rejected() {
    let grid = Grid::new(0.0, 1.0, 8).unwrap();
    assert!(cardinal_interpolate(&grid, &[1.0; 7], 0.3).is_err());
    let d = derivative_matrix(&grid, 1).unwrap();
    assert!(d.apply(&[1.0; 9]).is_err());
}
