//! Sinc cardinal basis on a uniform grid and its collocation
//! differentiation matrices.
//!
//! Basis function `j` (0-based) is `S_j(x) = sinc((x - x_j) / h)`, so it is
//! one at its own node and zero at every other node. The order-`r`
//! differentiation matrix holds `d^r S_j / dx^r` evaluated at `x_i` in row
//! `i`, column `j`; it depends only on `k = i - j`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};

/// Highest derivative order accepted by [`derivative_matrix_general`].
pub const MAX_GENERAL_ORDER: usize = 8;

/// Highest derivative order with a closed form in [`derivative_matrix`].
pub const MAX_CLOSED_FORM_ORDER: usize = 3;

/// `sin(pi x) / (pi x)`, with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = PI * x;
        px.sin() / px
    }
}

/// Uniform collocation grid `x_i = a + i h`, `i = 0..n`, with `h = (b - a) / (n - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    h: f64,
    nodes: Vec<f64>,
}

/// Fewest nodes that still leave interior collocation rows.
pub const MIN_NODES: usize = 4;

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!(
                "endpoints must be finite, got [{a}, {b}]"
            )));
        }
        if a >= b {
            return Err(Error::Domain(format!("need a < b, got a = {a}, b = {b}")));
        }
        if n < MIN_NODES {
            return Err(Error::Domain(format!(
                "need at least {MIN_NODES} nodes, got {n}"
            )));
        }
        let h = (b - a) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| a + i as f64 * h).collect();
        nodes[n - 1] = b;
        Ok(Grid { a, b, h, nodes })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Samples `f` at every node.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}

/// Same as [`Grid::new`].
pub fn make_grid(a: f64, b: f64, n: usize) -> Result<Grid> {
    Grid::new(a, b, n)
}

/// Value of basis function `j` (0-based) at `x`.
pub fn basis_value(grid: &Grid, j: usize, x: f64) -> Result<f64> {
    let xj = *grid.nodes.get(j).ok_or(Error::IndexOutOfRange {
        index: j,
        len: grid.len(),
    })?;
    Ok(sinc((x - xj) / grid.h))
}

/// Whittaker cardinal series truncated to the grid: `sum_j c_j S_j(x)`.
pub fn cardinal_interpolate(grid: &Grid, coeffs: &[f64], x: f64) -> Result<f64> {
    if coeffs.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            found: coeffs.len(),
        });
    }
    let t0 = (x - grid.a) / grid.h;
    let m = t0.round();
    let d0 = t0 - m;
    // x within rounding of a node counts as that node
    let snap = 4.0 * f64::EPSILON * x.abs().max(grid.a.abs()) / grid.h;
    if d0.abs() <= snap && m >= 0.0 && (m as usize) < grid.len() {
        return Ok(coeffs[m as usize]);
    }
    // sin(pi (t0 - j)) = (-1)^(m - j) sin(pi d0), with t0 = m + d0
    let s = (PI * d0).sin();
    let sum: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let k = m - j as f64;
            let sign = if k.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
            c * sign / (PI * (d0 + k))
        })
        .sum();
    Ok(s * sum)
}

/// Order-`r` collocation differentiation matrix on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeMatrix {
    order: usize,
    spacing: f64,
    matrix: DenseMatrix,
}

impl DerivativeMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    /// Applies the matrix to nodal values.
    pub fn apply(&self, values: &[f64]) -> Result<Vec<f64>> {
        linalg::matvec(&self.matrix, values)
    }
}

fn alternating(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn toeplitz(order: usize, grid: &Grid, entry: impl Fn(i64) -> f64) -> DerivativeMatrix {
    let n = grid.len();
    let matrix = DenseMatrix::from_fn(n, n, |i, j| entry(i as i64 - j as i64));
    DerivativeMatrix {
        order,
        spacing: grid.h,
        matrix,
    }
}

/// Closed-form differentiation matrices for orders 0 through 3.
pub fn derivative_matrix(grid: &Grid, order: usize) -> Result<DerivativeMatrix> {
    let h = grid.h;
    let pi2 = PI * PI;
    let m = match order {
        0 => toeplitz(0, grid, |k| if k == 0 { 1.0 } else { 0.0 }),
        1 => toeplitz(1, grid, |k| {
            if k == 0 {
                0.0
            } else {
                alternating(k) / (h * k as f64)
            }
        }),
        2 => toeplitz(2, grid, |k| {
            if k == 0 {
                -pi2 / (3.0 * h * h)
            } else {
                let kf = k as f64;
                -2.0 * alternating(k) / (h * h * kf * kf)
            }
        }),
        3 => toeplitz(3, grid, |k| {
            if k == 0 {
                0.0
            } else {
                let kf = k as f64;
                alternating(k) * (6.0 - pi2 * kf * kf) / (h * h * h * kf * kf * kf)
            }
        }),
        _ => {
            return Err(Error::UnsupportedOrder {
                order,
                max: MAX_CLOSED_FORM_ORDER,
            })
        }
    };
    Ok(m)
}

/// Differentiation matrix of any order up to [`MAX_GENERAL_ORDER`] from the
/// Leibniz expansion of `sin(pi t) * (pi t)^{-1}` at integer `t = k`:
///
/// ```text
/// m even:  diag = (-1)^{m/2} (pi/h)^m / (m+1)
/// k != 0:  (-1)^k / (h^m k^m) * sum_{l=0}^{floor((m-1)/2)} (-1)^{m-1+l} m!/(2l+1)! (pi k)^{2l}
/// ```
///
/// The odd-order sum runs through `l = (m-1)/2`; that last term carries the
/// `-pi^2 k^2` of the third derivative.
pub fn derivative_matrix_general(grid: &Grid, order: usize) -> Result<DerivativeMatrix> {
    if order > MAX_GENERAL_ORDER {
        return Err(Error::UnsupportedOrder {
            order,
            max: MAX_GENERAL_ORDER,
        });
    }
    if order == 0 {
        return derivative_matrix(grid, 0);
    }
    let m = order as i32;
    let h = grid.h;
    let hm = h.powi(m);
    let m_fact = factorial(order);
    let diag = if order.is_multiple_of(2) {
        let half = order / 2;
        alternating(half as i64) * (PI / h).powi(m) / (order + 1) as f64
    } else {
        0.0
    };
    let upper = (order - 1) / 2;
    let coeffs: Vec<f64> = (0..=upper)
        .map(|l| alternating((order - 1 + l) as i64) * m_fact / factorial(2 * l + 1))
        .collect();
    Ok(toeplitz(order, grid, |k| {
        if k == 0 {
            return diag;
        }
        let kf = k as f64;
        let pk2 = (PI * kf) * (PI * kf);
        let mut pow = 1.0;
        let mut sum = 0.0;
        for c in &coeffs {
            sum += c * pow;
            pow *= pk2;
        }
        alternating(k) * sum / (hm * kf.powi(m))
    }))
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
