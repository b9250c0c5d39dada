//! Error norms, conservation sums and amplification-matrix stability.

use num_complex::Complex64;

use crate::equations::ProblemSetup;
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, LuFactorization};
use crate::stepper::{Operators, SolverState};

/// Default slack on `rho <= 1` before a scheme is called unstable.
pub const STABILITY_TOL: f64 = 1e-8;

/// Power-iteration budget used by [`stability_check`].
pub const SPECTRAL_ITERS: usize = 20_000;

/// Residual at which the power iteration counts as converged.
pub const SPECTRAL_TOL: f64 = 1e-10;

/// Errors and conserved sums at one observer time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub l_inf: f64,
    pub l_2: f64,
    pub i1: f64,
    pub i2: f64,
    /// `h sum (u^2 - u^3 / 3)`
    pub i3: f64,
    /// `-h sum u^3 / 3`, the cubic part of `i3` alone.
    pub i3_cubic: f64,
}

/// `(L_inf, L_2)` of `u_num - u_exact`, with `L_2 = sqrt(h sum e_j^2)`.
pub fn error_norms(u_num: &[f64], u_exact: &[f64], h: f64) -> Result<(f64, f64)> {
    if u_num.len() != u_exact.len() {
        return Err(Error::LengthMismatch {
            expected: u_exact.len(),
            found: u_num.len(),
        });
    }
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Domain(format!("spacing must be > 0, got {h}")));
    }
    let (max, sq) = u_num
        .iter()
        .zip(u_exact)
        .fold((0.0f64, 0.0f64), |(m, s), (a, b)| {
            let e = (a - b).abs();
            (m.max(e), s + e * e)
        });
    Ok((max, (h * sq).sqrt()))
}

/// Discrete mass, momentum and energy sums over all nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Invariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i3_cubic: f64,
}

pub fn invariants(u: &[f64], h: f64) -> Invariants {
    let (mut s1, mut s2, mut s3) = (0.0, 0.0, 0.0);
    for &v in u {
        s1 += v;
        s2 += v * v;
        s3 += v * v * v;
    }
    Invariants {
        i1: h * s1,
        i2: h * s2,
        i3: h * (s2 - s3 / 3.0),
        i3_cubic: -h * s3 / 3.0,
    }
}

/// Builds the record for one snapshot.
pub fn record(t: f64, u_num: &[f64], u_exact: &[f64], h: f64) -> Result<DiagnosticsRecord> {
    let (l_inf, l_2) = error_norms(u_num, u_exact, h)?;
    let inv = invariants(u_num, h);
    Ok(DiagnosticsRecord {
        t,
        l_inf,
        l_2,
        i1: inv.i1,
        i2: inv.i2,
        i3: inv.i3,
        i3_cubic: inv.i3_cubic,
    })
}

/// How the nonlinear coefficient is frozen when building `K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Linearization {
    /// Full Jacobian at the state:
    /// `eps [diag(u^p) D1 + diag(p u^{p-1} D1 u)] - nu D2 + mu D3`.
    StateJacobian,
    /// Coefficient frozen at the constant `U`: `eps U^p D1 - nu D2 + mu D3`.
    FrozenCoefficient(f64),
}

/// `K` for the given linearization; spans all rows with `H = I`.
pub fn linearized_operator(
    state: &SolverState,
    setup: &ProblemSetup,
    ops: &Operators,
    lin: Linearization,
) -> Result<DenseMatrix> {
    let n = setup.grid.len();
    if state.u.len() != n || ops.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: state.u.len(),
        });
    }
    let eq = &setup.equation;
    let mut k = ops.linear_part(eq.nu(), eq.mu());
    let p = setup.power as i32;
    match lin {
        Linearization::StateJacobian => {
            let ux = ops.d1.apply(&state.u)?;
            let up: Vec<f64> = state.u.iter().map(|v| v.powi(p)).collect();
            let mut nl = linalg::scale_rows(&up, ops.d1.matrix())?;
            for i in 0..n {
                nl[(i, i)] += p as f64 * state.u[i].powi(p - 1) * ux[i];
            }
            k.add_scaled(eq.epsilon(), &nl)?;
        }
        Linearization::FrozenCoefficient(c) => {
            k.add_scaled(eq.epsilon() * c.powi(p), ops.d1.matrix())?;
        }
    }
    Ok(k)
}

/// `P = (H + dt θ K)^{-1} (H - dt (1-θ) K)` with `H = I`.
pub fn amplification_matrix(
    state: &SolverState,
    setup: &ProblemSetup,
    ops: &Operators,
    lin: Linearization,
) -> Result<DenseMatrix> {
    let k = linearized_operator(state, setup, ops, lin)?;
    amplification_from_operator(&k, setup.theta, setup.dt)
}

pub fn amplification_from_operator(k: &DenseMatrix, theta: f64, dt: f64) -> Result<DenseMatrix> {
    let n = k.rows();
    let mut lhs = DenseMatrix::identity(n);
    lhs.add_scaled(dt * theta, k)?;
    let mut rhs = DenseMatrix::identity(n);
    rhs.add_scaled(-dt * (1.0 - theta), k)?;
    LuFactorization::new(&lhs)?.solve_matrix(&rhs)
}

/// Spectral-radius verdict on one amplification matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityReport {
    pub rho: f64,
    pub stable: bool,
    pub theta: f64,
    pub dt: f64,
    pub converged: bool,
}

impl StabilityReport {
    /// `theta,dt,rho,stable,converged`
    pub const CSV_HEADER: &'static str = "theta,dt,rho,stable,converged";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:e},{},{}",
            self.theta, self.dt, self.rho, self.stable, self.converged
        )
    }
}

/// Estimates `rho(p)` and compares it with `1 + tol`. `theta` and `dt` are
/// left at zero; [`assess_stability`] fills them in.
pub fn stability_check(p: &DenseMatrix, tol: f64) -> Result<StabilityReport> {
    let sr = linalg::spectral_radius(p, SPECTRAL_ITERS, SPECTRAL_TOL)?;
    Ok(StabilityReport {
        rho: sr.rho,
        stable: sr.rho <= 1.0 + tol,
        theta: 0.0,
        dt: 0.0,
        converged: sr.converged,
    })
}

/// Which linearization(s) [`assess_stability`] examines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StabilityMode {
    /// One amplification matrix from the full state Jacobian.
    Jacobian,
    /// Classical frozen coefficients: `samples` constants spread evenly over
    /// `[min u, max u]`, reporting the worst.
    FrozenRange { samples: usize },
}

impl Default for StabilityMode {
    fn default() -> Self {
        StabilityMode::FrozenRange { samples: 3 }
    }
}

pub fn assess_stability(
    state: &SolverState,
    setup: &ProblemSetup,
    ops: &Operators,
    mode: StabilityMode,
    tol: f64,
) -> Result<StabilityReport> {
    let lins: Vec<Linearization> = match mode {
        StabilityMode::Jacobian => vec![Linearization::StateJacobian],
        StabilityMode::FrozenRange { samples } => {
            let lo = state.u.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = state.u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let samples = samples.max(1);
            (0..samples)
                .map(|s| {
                    let w = if samples == 1 {
                        0.5
                    } else {
                        s as f64 / (samples - 1) as f64
                    };
                    Linearization::FrozenCoefficient(lo + w * (hi - lo))
                })
                .collect()
        }
    };
    let mut worst: Option<StabilityReport> = None;
    for lin in lins {
        let p = amplification_matrix(state, setup, ops, lin)?;
        let mut report = stability_check(&p, tol)?;
        report.theta = setup.theta;
        report.dt = setup.dt;
        worst = Some(match worst {
            Some(w) if w.rho >= report.rho => StabilityReport {
                converged: w.converged && report.converged,
                ..w
            },
            Some(w) => StabilityReport {
                converged: w.converged && report.converged,
                ..report
            },
            None => report,
        });
    }
    Ok(worst.expect("at least one linearization"))
}

/// Per-eigenvalue amplification bound
/// `|l_h - dt (1-θ) l_k| <= |l_h + dt θ l_k|`.
pub fn eigenvalue_condition(lh: Complex64, lk: Complex64, theta: f64, dt: f64) -> Result<bool> {
    let num = lh - lk * (dt * (1.0 - theta));
    let den = lh + lk * (dt * theta);
    let den2 = den.norm_sqr();
    if den2 == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(num.norm_sqr() <= den2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::EquationSpec;
    use crate::sinc_basis::make_grid;

    #[test]
    fn norms_of_simple_differences() {
        assert_eq!(
            error_norms(&[1.0, 2.0], &[1.0, 2.0], 0.1).unwrap(),
            (0.0, 0.0)
        );
        let (li, l2) = error_norms(&[0.0, 1.0, 0.0], &[0.0; 3], 0.25).unwrap();
        assert_eq!((li, l2), (1.0, 0.5));
        assert!(error_norms(&[0.0], &[0.0, 1.0], 0.1).is_err());
        assert!(error_norms(&[0.0], &[0.0], 0.0).is_err());
    }

    #[test]
    fn invariants_of_zero() {
        let inv = invariants(&[0.0; 10], 0.3);
        assert_eq!((inv.i1, inv.i2, inv.i3), (0.0, 0.0, 0.0));
    }

    #[test]
    fn soliton_invariants() {
        let g = make_grid(-15.0, 15.0, 100).unwrap();
        let u = g.sample(|x| crate::equations::exact_kdv(x, 0.0));
        let inv = invariants(&u, g.spacing());
        assert!((inv.i1 - 2.0).abs() < 1e-5, "{inv:?}");
        assert!((inv.i2 - 2.0 / 3.0).abs() < 1e-5);
        assert!((inv.i3 - 26.0 / 45.0).abs() < 1e-5);
        assert!((inv.i3_cubic + 4.0 / 45.0).abs() < 1e-5);
    }

    #[test]
    fn trivial_stability_checks() {
        let r = stability_check(&DenseMatrix::identity(4), STABILITY_TOL).unwrap();
        assert!(r.stable && (r.rho - 1.0).abs() < 1e-12);
        let r = stability_check(&DenseMatrix::identity(4).scaled(2.0), STABILITY_TOL).unwrap();
        assert!(!r.stable);
    }

    #[test]
    fn no_dynamics_gives_identity() {
        let g = make_grid(-5.0, 5.0, 12).unwrap();
        let eq = EquationSpec::new(crate::equations::EquationKind::KdV, 6.0, 0.0, 0.0).unwrap();
        let setup = ProblemSetup::new(eq, g, 0.5, 0.1, 0.1).unwrap();
        let ops = Operators::new(&setup.grid);
        let st = SolverState {
            t: 0.0,
            u: vec![0.0; 12],
            step_index: 0,
        };
        let p = amplification_matrix(&st, &setup, &ops, Linearization::StateJacobian).unwrap();
        assert_eq!(p, DenseMatrix::identity(12));
    }

    #[test]
    fn eigenvalue_condition_cases() {
        let c = |re, im| Complex64::new(re, im);
        for dt in [0.01, 0.1, 1.0, 10.0] {
            assert!(eigenvalue_condition(c(1.0, 0.0), c(1.0, 0.0), 0.5, dt).unwrap());
            assert!(!eigenvalue_condition(c(1.0, 0.0), c(-1.0, 0.0), 0.5, dt).unwrap());
            assert!(eigenvalue_condition(c(1.0, 1.0), c(1.0, -1.0), 0.5, dt).unwrap());
        }
        assert!(matches!(
            eigenvalue_condition(c(1.0, 0.0), c(-1.0, 0.0), 0.5, 2.0),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn stability_report_csv() {
        let r = StabilityReport {
            rho: 1.0,
            stable: true,
            theta: 0.5,
            dt: 0.1,
            converged: false,
        };
        assert_eq!(r.csv_row(), "0.5,0.1,1e0,true,false");
    }
}
