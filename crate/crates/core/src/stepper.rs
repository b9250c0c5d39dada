//! θ-weighted, quasilinearized time stepping of the collocation system.
//!
//! With `N(u) = eps u^p u_x - nu u_xx + mu u_xxx` and the product at the new
//! level replaced by its Taylor expansion about `u^n`,
//!
//! ```text
//! (u^p u_x)^{n+1} ~ (u^n)^p u_x^{n+1} + p (u^n)^{p-1} u_x^n u^{n+1} - p (u^n)^p u_x^n
//! ```
//!
//! one step solves the linear system `M u^{n+1} = R` with interior rows
//!
//! ```text
//! M = I + dt θ (eps [diag(u^p) D1 + diag(p u^{p-1} D1 u)] - nu D2 + mu D3)
//! R = u + dt θ eps p (u^p ∘ D1 u) - dt (1-θ) N(u)
//! ```
//!
//! and identity rows at both ends carrying the Dirichlet data.

use crate::diagnostics::{self, DiagnosticsRecord};
use crate::equations::{self, ProblemSetup};
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, LuFactorization};
use crate::sinc_basis::{derivative_matrix, DerivativeMatrix, Grid};

/// First, second and third sinc differentiation matrices of one grid.
#[derive(Clone, Debug)]
pub struct Operators {
    pub d1: DerivativeMatrix,
    pub d2: DerivativeMatrix,
    pub d3: DerivativeMatrix,
}

impl Operators {
    pub fn new(grid: &Grid) -> Self {
        Operators {
            d1: derivative_matrix(grid, 1).expect("order 1 is supported"),
            d2: derivative_matrix(grid, 2).expect("order 2 is supported"),
            d3: derivative_matrix(grid, 3).expect("order 3 is supported"),
        }
    }

    pub fn len(&self) -> usize {
        self.d1.matrix().rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `-nu D2 + mu D3`
    pub fn linear_part(&self, nu: f64, mu: f64) -> DenseMatrix {
        let mut l = self.d3.matrix().scaled(mu);
        if nu != 0.0 {
            l.add_scaled(-nu, self.d2.matrix()).expect("same grid");
        }
        l
    }
}

/// Time level and nodal values (the sinc expansion coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    pub t: f64,
    pub u: Vec<f64>,
    pub step_index: usize,
}

impl SolverState {
    pub fn initial(setup: &ProblemSetup) -> Self {
        SolverState {
            t: 0.0,
            u: equations::initial_condition(setup),
            step_index: 0,
        }
    }
}

/// One step's linear system `M u^{n+1} = R`.
#[derive(Clone, Debug)]
pub struct AssembledSystem {
    pub m: DenseMatrix,
    pub r: Vec<f64>,
}

/// `eps N_nl(u) = eps u^p u_x` pieces reused by assembly and diagnostics.
struct Nonlinear {
    /// `u^p`
    up: Vec<f64>,
    /// `p u^{p-1} u_x`
    jac_diag: Vec<f64>,
    /// `u^p u_x`
    flux: Vec<f64>,
}

fn nonlinear_terms(u: &[f64], ux: &[f64], power: u32) -> Nonlinear {
    if power == 1 {
        return Nonlinear {
            up: u.to_vec(),
            jac_diag: ux.to_vec(),
            flux: u.iter().zip(ux).map(|(a, b)| a * b).collect(),
        };
    }
    let p = power as i32;
    let up: Vec<f64> = u.iter().map(|v| v.powi(p)).collect();
    let jac_diag = u
        .iter()
        .zip(ux)
        .map(|(v, d)| p as f64 * v.powi(p - 1) * d)
        .collect();
    let flux = up.iter().zip(ux).map(|(a, b)| a * b).collect();
    Nonlinear { up, jac_diag, flux }
}

/// Builds the step system with explicitly supplied boundary values at `t + dt`.
pub fn assemble_with_boundary(
    state: &SolverState,
    setup: &ProblemSetup,
    ops: &Operators,
    boundary: (f64, f64),
) -> Result<AssembledSystem> {
    let n = setup.grid.len();
    if state.u.len() != n || ops.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: state.u.len(),
        });
    }
    let eq = &setup.equation;
    let (eps, nu, mu) = (eq.epsilon(), eq.nu(), eq.mu());
    let (dt, theta) = (setup.dt, setup.theta);
    let u = &state.u;

    let ux = ops.d1.apply(u)?;
    let nl = nonlinear_terms(u, &ux, setup.power);
    let linear = ops.linear_part(nu, mu);
    let lin_u = linalg::matvec(&linear, u)?;

    // spatial Jacobian K = eps [diag(u^p) D1 + diag(p u^{p-1} u_x)] + linear
    let mut m = linear;
    let mut k_nl = linalg::scale_rows(&nl.up, ops.d1.matrix())?;
    for (i, d) in nl.jac_diag.iter().enumerate() {
        k_nl[(i, i)] += d;
    }
    m.add_scaled(eps, &k_nl)?;
    let mut m = m.scaled(dt * theta);
    for i in 0..n {
        m[(i, i)] += 1.0;
    }

    let p = setup.power as f64;
    let mut r: Vec<f64> = (0..n)
        .map(|i| {
            let explicit = eps * nl.flux[i] + lin_u[i];
            u[i] + dt * theta * eps * p * nl.flux[i] - dt * (1.0 - theta) * explicit
        })
        .collect();

    m.set_identity_row(0);
    m.set_identity_row(n - 1);
    r[0] = boundary.0;
    r[n - 1] = boundary.1;
    Ok(AssembledSystem { m, r })
}

/// Builds the step system with boundary data from the reference solution.
pub fn assemble(
    state: &SolverState,
    setup: &ProblemSetup,
    ops: &Operators,
) -> Result<AssembledSystem> {
    let t_next = next_time(state, setup);
    assemble_with_boundary(state, setup, ops, equations::boundary_values(setup, t_next))
}

fn next_time(state: &SolverState, setup: &ProblemSetup) -> f64 {
    (state.step_index + 1) as f64 * setup.dt
}

/// Advances one step with explicitly supplied boundary values.
pub fn step_with_boundary(
    state: &SolverState,
    setup: &ProblemSetup,
    ops: &Operators,
    boundary: (f64, f64),
) -> Result<SolverState> {
    let sys = assemble_with_boundary(state, setup, ops, boundary)?;
    let step = state.step_index + 1;
    let lu = LuFactorization::new(&sys.m).map_err(|e| match e {
        Error::Singular { pivot } => Error::SolverFailure { step, pivot },
        other => other,
    })?;
    let mut u = lu.solve(&sys.r)?;
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { step });
    }
    let n = u.len();
    u[0] = boundary.0;
    u[n - 1] = boundary.1;
    Ok(SolverState {
        t: step as f64 * setup.dt,
        u,
        step_index: step,
    })
}

/// Advances one step; boundary data comes from the reference solution.
pub fn step(state: &SolverState, setup: &ProblemSetup, ops: &Operators) -> Result<SolverState> {
    let t_next = next_time(state, setup);
    step_with_boundary(state, setup, ops, equations::boundary_values(setup, t_next))
}

/// Nodal values recorded at an observer time.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    /// Observer time as requested (not accumulated from `dt`).
    pub t: f64,
    pub u: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub records: Vec<DiagnosticsRecord>,
}

/// Maps observer times to step indices, sorted and deduplicated.
pub fn observer_steps(setup: &ProblemSetup, observers: &[f64]) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::with_capacity(observers.len());
    let total = setup.n_steps();
    for &t in observers {
        let misaligned = Error::MisalignedObserver {
            time: t,
            dt: setup.dt,
            t_final: setup.t_final,
        };
        let k = equations::step_count(t, setup.dt).ok_or(misaligned)?;
        if k > total {
            return Err(Error::MisalignedObserver {
                time: t,
                dt: setup.dt,
                t_final: setup.t_final,
            });
        }
        out.push((k, t));
    }
    out.sort_by_key(|&(k, _)| k);
    out.dedup_by_key(|&mut (k, _)| k);
    Ok(out)
}

/// Marches from the initial condition to `t_final`, handing each observer
/// snapshot and its diagnostics to `sink` as soon as it is reached.
pub fn run_with(
    setup: &ProblemSetup,
    observers: &[f64],
    mut sink: impl FnMut(&Snapshot, &DiagnosticsRecord),
) -> Result<SolverState> {
    let plan = observer_steps(setup, observers)?;
    let ops = Operators::new(&setup.grid);
    let h = setup.grid.spacing();
    let mut state = SolverState::initial(setup);
    let mut next = plan.iter().peekable();

    let mut emit = |state: &SolverState, t_obs: f64| -> Result<()> {
        let exact = setup.exact_on_grid(t_obs);
        let record = diagnostics::record(t_obs, &state.u, &exact, h)?;
        let snap = Snapshot {
            t: t_obs,
            u: state.u.clone(),
        };
        sink(&snap, &record);
        Ok(())
    };

    while let Some(&&(k, t_obs)) = next.peek() {
        if k != 0 {
            break;
        }
        emit(&state, t_obs)?;
        next.next();
    }
    for _ in 0..setup.n_steps() {
        state = step(&state, setup, &ops)?;
        while let Some(&&(k, t_obs)) = next.peek() {
            if k != state.step_index {
                break;
            }
            emit(&state, t_obs)?;
            next.next();
        }
    }
    Ok(state)
}

/// Collects [`run_with`] into a [`Trajectory`].
pub fn run(setup: &ProblemSetup, observers: &[f64]) -> Result<Trajectory> {
    let mut traj = Trajectory::default();
    run_with(setup, observers, |s, r| {
        traj.snapshots.push(s.clone());
        traj.records.push(*r);
    })?;
    Ok(traj)
}
