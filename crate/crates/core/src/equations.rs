//! The KdV / KdV-Burgers family `u_t + eps u u_x - nu u_xx + mu u_xxx = 0`,
//! its travelling-wave solutions, and the initial/boundary data sampled
//! from them.

use crate::error::{Error, Result};
use crate::sinc_basis::Grid;

/// Which closed-form travelling wave serves as initial, boundary and reference data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquationKind {
    /// Soliton `0.5 sech^2(0.5 (x - t))`.
    KdV,
    /// Smoothed shock `-(6 nu^2 / 25 mu) [1 + tanh xi - sech^2(xi) / 2]`.
    KdVB,
}

impl EquationKind {
    pub fn name(self) -> &'static str {
        match self {
            EquationKind::KdV => "kdv",
            EquationKind::KdVB => "kdvb",
        }
    }
}

impl std::str::FromStr for EquationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kdv" => Ok(EquationKind::KdV),
            "kdvb" => Ok(EquationKind::KdVB),
            other => Err(Error::config(
                "equation",
                format!("expected `kdv` or `kdvb`, got `{other}`"),
            )),
        }
    }
}

impl std::fmt::Display for EquationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients of the unified PDE plus the reference-solution selector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquationSpec {
    epsilon: f64,
    nu: f64,
    mu: f64,
    kind: EquationKind,
}

impl EquationSpec {
    pub fn new(kind: EquationKind, epsilon: f64, nu: f64, mu: f64) -> Result<Self> {
        for (name, v) in [("epsilon", epsilon), ("nu", nu), ("mu", mu)] {
            if !v.is_finite() {
                return Err(Error::config(name, format!("must be finite, got {v}")));
            }
        }
        if nu < 0.0 {
            return Err(Error::config("nu", format!("must be >= 0, got {nu}")));
        }
        match kind {
            EquationKind::KdV if nu != 0.0 => Err(Error::config("nu", "KdV requires nu = 0")),
            EquationKind::KdVB if mu == 0.0 => Err(Error::config("mu", "KdVB requires mu != 0")),
            _ => Ok(EquationSpec {
                epsilon,
                nu,
                mu,
                kind,
            }),
        }
    }

    /// `u_t + 6 u u_x + u_xxx = 0`.
    pub fn kdv() -> Self {
        EquationSpec {
            epsilon: 6.0,
            nu: 0.0,
            mu: 1.0,
            kind: EquationKind::KdV,
        }
    }

    pub fn kdvb(epsilon: f64, nu: f64, mu: f64) -> Result<Self> {
        Self::new(EquationKind::KdVB, epsilon, nu, mu)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn kind(&self) -> EquationKind {
        self.kind
    }

    /// Reference solution selected by `kind`.
    pub fn exact(&self, x: f64, t: f64) -> f64 {
        match self.kind {
            EquationKind::KdV => exact_kdv(x, t),
            EquationKind::KdVB => shock_profile(x, t, self.nu, self.mu).value,
        }
    }

    /// Residual of the PDE evaluated on the reference solution, using
    /// analytic derivatives. Returned as `(residual, scale)` where `scale`
    /// is the sum of magnitudes of the individual terms.
    pub fn exact_residual(&self, x: f64, t: f64) -> (f64, f64) {
        let d = match self.kind {
            EquationKind::KdV => soliton_profile(x, t),
            EquationKind::KdVB => shock_profile(x, t, self.nu, self.mu),
        };
        let terms = [
            d.u_t,
            self.epsilon * d.value * d.u_x,
            -self.nu * d.u_xx,
            self.mu * d.u_xxx,
        ];
        (terms.iter().sum(), terms.iter().map(|v| v.abs()).sum())
    }
}

/// `sech^2(z)` as `4 / (e^z + e^-z)^2`, with the exponent clamped so the
/// tails stay finite instead of overflowing.
pub fn sech2(z: f64) -> f64 {
    let a = z.abs().min(354.0);
    let e = (-a).exp();
    let d = 1.0 + e * e;
    4.0 * e * e / (d * d)
}

/// KdV soliton `0.5 sech^2(0.5 (x - t))`.
pub fn exact_kdv(x: f64, t: f64) -> f64 {
    0.5 * sech2(0.5 * (x - t))
}

/// KdV-Burgers travelling shock. Requires `kind == KdVB` and `mu != 0`.
pub fn exact_kdvb(x: f64, t: f64, eq: &EquationSpec) -> Result<f64> {
    if eq.kind != EquationKind::KdVB {
        return Err(Error::Domain("exact_kdvb needs a KdVB equation".into()));
    }
    if eq.mu == 0.0 {
        return Err(Error::Domain("exact_kdvb needs mu != 0".into()));
    }
    Ok(shock_profile(x, t, eq.nu, eq.mu).value)
}

/// Value and derivatives of a reference solution at one point.
#[derive(Clone, Copy, Debug)]
struct Profile {
    value: f64,
    u_t: f64,
    u_x: f64,
    u_xx: f64,
    u_xxx: f64,
}

// With T = tanh z and S = sech^2 z: T' = S, S' = -2 T S.
fn soliton_profile(x: f64, t: f64) -> Profile {
    let z = 0.5 * (x - t);
    let s = sech2(z);
    let th = z.tanh();
    // d/dz of 0.5 S: -T S; d2: -S^2 + 2 T^2 S; d3: 8 T S^2 - 4 T^3 S
    let d1 = -th * s;
    let d2 = -s * s + 2.0 * th * th * s;
    let d3 = 8.0 * th * s * s - 4.0 * th * th * th * s;
    Profile {
        value: 0.5 * s,
        u_t: -0.5 * d1,
        u_x: 0.5 * d1,
        u_xx: 0.25 * d2,
        u_xxx: 0.125 * d3,
    }
}

fn shock_profile(x: f64, t: f64, nu: f64, mu: f64) -> Profile {
    let c = 6.0 * nu * nu / (25.0 * mu);
    let k = nu / (10.0 * mu);
    let xi = k * (x + c * t);
    let th = xi.tanh();
    let s = sech2(xi);
    // f(xi) = 1 + T - S/2
    let f = 1.0 + th - 0.5 * s;
    let f1 = s + th * s;
    // f'' = -2TS + S^2 - 2T^2 S
    let f2 = -2.0 * th * s + s * s - 2.0 * th * th * s;
    // f''' = -2S^2 + 4T^2 S - 8TS^2 + 4T^3 S
    let f3 = -2.0 * s * s + 4.0 * th * th * s - 8.0 * th * s * s + 4.0 * th * th * th * s;
    let amp = -c;
    Profile {
        value: amp * f,
        u_t: amp * f1 * k * c,
        u_x: amp * f1 * k,
        u_xx: amp * f2 * k * k,
        u_xxx: amp * f3 * k * k * k,
    }
}

/// Grid, scheme parameters and horizon for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSetup {
    pub equation: EquationSpec,
    pub grid: Grid,
    pub theta: f64,
    pub dt: f64,
    pub t_final: f64,
    /// Exponent of the nonlinearity `u^p u_x`. Every reference solution
    /// assumes `p = 1`; other values are an experimental knob.
    pub power: u32,
}

/// Relative tolerance on `t_final / dt` being a whole number.
pub const STEP_ALIGNMENT_RTOL: f64 = 1e-9;

impl ProblemSetup {
    pub fn new(
        equation: EquationSpec,
        grid: Grid,
        theta: f64,
        dt: f64,
        t_final: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::config(
                "theta",
                format!("must lie in [0, 1], got {theta}"),
            ));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::config("dt", format!("must be > 0, got {dt}")));
        }
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::config("T", format!("must be > 0, got {t_final}")));
        }
        if step_count(t_final, dt).is_none() {
            return Err(Error::config(
                "T",
                format!("T = {t_final} is not a whole number of steps of dt = {dt}"),
            ));
        }
        Ok(ProblemSetup {
            equation,
            grid,
            theta,
            dt,
            t_final,
            power: 1,
        })
    }

    pub fn with_power(mut self, power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::config("p", "must be >= 1"));
        }
        self.power = power;
        Ok(self)
    }

    pub fn n_steps(&self) -> usize {
        step_count(self.t_final, self.dt).unwrap_or(0)
    }

    pub fn exact(&self, x: f64, t: f64) -> f64 {
        self.equation.exact(x, t)
    }

    pub fn exact_on_grid(&self, t: f64) -> Vec<f64> {
        self.grid.sample(|x| self.exact(x, t))
    }
}

/// `Some(round(t / dt))` when `t` is a whole multiple of `dt` within
/// [`STEP_ALIGNMENT_RTOL`].
pub fn step_count(t: f64, dt: f64) -> Option<usize> {
    let ratio = t / dt;
    let n = ratio.round();
    if n < 0.0 || !n.is_finite() {
        return None;
    }
    if (ratio - n).abs() <= STEP_ALIGNMENT_RTOL * n.max(1.0) {
        Some(n as usize)
    } else {
        None
    }
}

/// Reference solution at `t = 0` on the grid nodes.
pub fn initial_condition(setup: &ProblemSetup) -> Vec<f64> {
    setup.exact_on_grid(0.0)
}

/// Reference solution at the two endpoints.
pub fn boundary_values(setup: &ProblemSetup, t: f64) -> (f64, f64) {
    (
        setup.exact(setup.grid.a(), t),
        setup.exact(setup.grid.b(), t),
    )
}

/// Outcome of checking whether the reference profile actually solves the
/// configured PDE.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactnessCheck {
    pub max_residual: f64,
    /// `max |residual| / max (sum of term magnitudes)`.
    pub relative_residual: f64,
    pub exact: bool,
}

/// Relative residual below which the reference profile counts as exact.
pub const EXACTNESS_RTOL: f64 = 1e-6;

/// Evaluates the PDE residual of the reference profile at every node for
/// `samples` times spread over `[0, t_final]`.
pub fn check_reference(setup: &ProblemSetup, samples: usize) -> ExactnessCheck {
    let samples = samples.max(1);
    let mut max_res: f64 = 0.0;
    let mut max_scale: f64 = 0.0;
    for s in 0..samples {
        let t = setup.t_final * s as f64 / (samples.max(2) - 1) as f64;
        for &x in setup.grid.nodes() {
            let (r, scale) = setup.equation.exact_residual(x, t);
            max_res = max_res.max(r.abs());
            max_scale = max_scale.max(scale);
        }
    }
    let relative = if max_scale > 0.0 {
        max_res / max_scale
    } else {
        0.0
    };
    ExactnessCheck {
        max_residual: max_res,
        relative_residual: relative,
        exact: setup.power == 1 && relative <= EXACTNESS_RTOL,
    }
}
