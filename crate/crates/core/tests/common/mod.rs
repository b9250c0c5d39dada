#![allow(dead_code)]

//! Test-only oracles shared by the integration suites.

use sinc_kdv::equations::{EquationSpec, ProblemSetup};
use sinc_kdv::linalg::DenseMatrix;
use sinc_kdv::sinc_basis::Grid;
use sinc_kdv::stepper::{self, Operators, SolverState};

/// Finite-difference weights for derivative `order` at 0 on the given
/// offsets (Fornberg's recursion).
pub fn fd_weights(order: usize, offsets: &[f64]) -> Vec<f64> {
    let n = offsets.len();
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Central difference of `f` at `x` with step `delta`, accurate to
/// eighth order for derivative orders 1 through 3.
pub fn central_derivative(f: impl Fn(f64) -> f64, x: f64, order: usize, delta: f64) -> f64 {
    let half = if order <= 2 { 4 } else { 5 };
    let offsets: Vec<f64> = (-(half as i64)..=half as i64).map(|k| k as f64).collect();
    let w = fd_weights(order, &offsets);
    let sum: f64 = offsets
        .iter()
        .zip(&w)
        .map(|(o, wk)| wk * f(x + o * delta))
        .sum();
    sum / delta.powi(order as i32)
}

/// Small deterministic generator so oracles do not share the library's RNG.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407))
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn vector(&mut self, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n).map(|_| self.uniform(lo, hi)).collect()
    }

    pub fn matrix(&mut self, n: usize, lo: f64, hi: f64) -> DenseMatrix {
        DenseMatrix::from_fn(n, n, |_, _| self.uniform(lo, hi))
    }
}

/// Real roots of `x^3 + p2 x^2 + p1 x + p0` and the modulus of the largest
/// root, by the trigonometric / Cardano closed form.
pub fn cubic_max_modulus(p2: f64, p1: f64, p0: f64) -> f64 {
    use num_complex::Complex64;
    // depressed cubic t^3 + p t + q with x = t - p2/3
    let shift = p2 / 3.0;
    let p = p1 - p2 * p2 / 3.0;
    let q = 2.0 * p2.powi(3) / 27.0 - p2 * p1 / 3.0 + p0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let roots: Vec<Complex64> = if disc < 0.0 {
        let r = (-p / 3.0).sqrt();
        let phi = (-q / (2.0 * r.powi(3))).clamp(-1.0, 1.0).acos();
        (0..3)
            .map(|k| {
                let t = 2.0 * r * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos();
                Complex64::new(t - shift, 0.0)
            })
            .collect()
    } else {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        vec![
            Complex64::new(u + v - shift, 0.0),
            omega * u + omega.conj() * v - shift,
            omega.conj() * u + omega * v - shift,
        ]
    };
    roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Coefficients `(p2, p1, p0)` of the characteristic polynomial
/// `det(x I - A)` of a 3x3 matrix.
pub fn char_poly_3x3(a: &DenseMatrix) -> (f64, f64, f64) {
    let tr = a[(0, 0)] + a[(1, 1)] + a[(2, 2)];
    let minors = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)] + a[(0, 0)] * a[(2, 2)]
        - a[(0, 2)] * a[(2, 0)]
        + a[(1, 1)] * a[(2, 2)]
        - a[(1, 2)] * a[(2, 1)];
    let det = a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
        - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
        + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)]);
    (-tr, minors, -det)
}

pub fn kdv_setup(theta: f64, dt: f64, t_final: f64) -> ProblemSetup {
    let grid = Grid::new(-15.0, 15.0, 100).unwrap();
    ProblemSetup::new(EquationSpec::kdv(), grid, theta, dt, t_final).unwrap()
}

/// Method-of-lines right-hand side with the end values driven by the
/// reference solution's time derivative.
pub fn semi_discrete_rhs(setup: &ProblemSetup, ops: &Operators, u: &[f64], t: f64) -> Vec<f64> {
    let eq = &setup.equation;
    let ux = ops.d1.apply(u).unwrap();
    let uxx = ops.d2.apply(u).unwrap();
    let uxxx = ops.d3.apply(u).unwrap();
    let n = u.len();
    let mut f: Vec<f64> = (0..n)
        .map(|i| -(eq.epsilon() * u[i] * ux[i] - eq.nu() * uxx[i] + eq.mu() * uxxx[i]))
        .collect();
    for i in [0, n - 1] {
        let x = setup.grid.nodes()[i];
        f[i] = central_derivative(|s| setup.exact(x, s), t, 1, 1e-3);
    }
    f
}

pub fn rk4_reference(setup: &ProblemSetup, u0: &[f64], dt: f64, substeps: usize) -> Vec<f64> {
    let ops = Operators::new(&setup.grid);
    let k = dt / substeps as f64;
    let mut u = u0.to_vec();
    let mut t = 0.0;
    let axpy = |u: &[f64], s: f64, v: &[f64]| -> Vec<f64> {
        u.iter().zip(v).map(|(a, b)| a + s * b).collect()
    };
    for _ in 0..substeps {
        let k1 = semi_discrete_rhs(setup, &ops, &u, t);
        let k2 = semi_discrete_rhs(setup, &ops, &axpy(&u, k / 2.0, &k1), t + k / 2.0);
        let k3 = semi_discrete_rhs(setup, &ops, &axpy(&u, k / 2.0, &k2), t + k / 2.0);
        let k4 = semi_discrete_rhs(setup, &ops, &axpy(&u, k, &k3), t + k);
        for i in 0..u.len() {
            u[i] += k / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += k;
    }
    u
}

/// Slope of log(one-step error / dt) against log dt on the KdV soliton,
/// measured against a fine RK4 solution of the same semi-discrete system.
pub fn observed_order(theta: f64) -> f64 {
    let dts = [0.1, 0.05, 0.025];
    let mut logs = Vec::new();
    for &dt in &dts {
        let setup = kdv_setup(theta, dt, dt);
        let ops = Operators::new(&setup.grid);
        let s0 = SolverState::initial(&setup);
        let one = stepper::step(&s0, &setup, &ops).unwrap();
        let reference = rk4_reference(&setup, &s0.u, dt, (dt / 2.5e-4).round() as usize);
        let n = one.u.len();
        let err = (1..n - 1)
            .map(|i| (one.u[i] - reference[i]).abs())
            .fold(0.0f64, f64::max);
        logs.push((dt.ln(), (err / dt).ln()));
    }
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / logs.len() as f64;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / logs.len() as f64;
    let num: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}
