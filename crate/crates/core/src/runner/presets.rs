//! Fixed experiment presets: the nine error tables and six solution plots.

use crate::equations::EquationKind;

/// Parameters of one named experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub kind: EquationKind,
    pub epsilon: f64,
    pub nu: f64,
    pub mu: f64,
    pub theta: f64,
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub dt: f64,
    /// Observer times `first, 2 first, ..., count first`.
    pub first_observer: f64,
    pub observer_count: usize,
    /// Caption order: coefficients before the grid (KdVB tables) or after.
    coefficients_first: bool,
}

impl Preset {
    pub fn observers(&self) -> Vec<f64> {
        (1..=self.observer_count)
            .map(|k| round_sig(k as f64 * self.first_observer))
            .collect()
    }

    pub fn t_final(&self) -> f64 {
        round_sig(self.observer_count as f64 * self.first_observer)
    }

    fn time_label(&self) -> String {
        if self.observer_count == 1 {
            format!("T={}", self.first_observer)
        } else {
            format!("T={}..{}", self.first_observer, self.t_final())
        }
    }

    /// One-line summary in caption order.
    pub fn describe(&self) -> String {
        let coeffs = format!(
            "μ={}, ε={}, ν={}, θ={}",
            self.mu, self.epsilon, self.nu, self.theta
        );
        let grid = format!(
            "n={}, a={}, b={}, δt={}, {}",
            self.n,
            self.a,
            self.b,
            self.dt,
            self.time_label()
        );
        if self.coefficients_first {
            format!("{}: {coeffs}, {grid} [{}]", self.name, self.kind)
        } else {
            format!("{}: {grid}, {coeffs} [{}]", self.name, self.kind)
        }
    }
}

/// Strips the float noise left by `k * step` (e.g. `0.30000000000000004`).
fn round_sig(v: f64) -> f64 {
    format!("{v:.12e}").parse().unwrap_or(v)
}

#[allow(clippy::too_many_arguments)]
const fn preset(
    name: &'static str,
    kind: EquationKind,
    (epsilon, nu, mu): (f64, f64, f64),
    n: usize,
    (a, b): (f64, f64),
    dt: f64,
    (first_observer, observer_count): (f64, usize),
    coefficients_first: bool,
) -> Preset {
    Preset {
        name,
        kind,
        epsilon,
        nu,
        mu,
        theta: 0.5,
        n,
        a,
        b,
        dt,
        first_observer,
        observer_count,
        coefficients_first,
    }
}

use EquationKind::{KdV, KdVB};

const KDV: (f64, f64, f64) = (6.0, 0.0, 1.0);

/// All presets, sorted by name.
pub const PRESETS: &[Preset] = &[
    preset("fig1", KdV, KDV, 100, (-10.0, 20.0), 0.01, (1.0, 9), false),
    preset("fig2", KdV, KDV, 100, (-15.0, 15.0), 0.1, (1.0, 9), false),
    preset(
        "fig3",
        KdVB,
        (2.0, 0.005, 0.1),
        100,
        (-100.0, 100.0),
        0.02,
        (1.0, 1),
        false,
    ),
    preset(
        "fig4",
        KdVB,
        (1.0, 0.1, 0.1),
        100,
        (-40.0, 100.0),
        0.05,
        (1.0, 1),
        false,
    ),
    preset(
        "fig5",
        KdVB,
        (1.0, 0.01, 0.01),
        100,
        (-40.0, 100.0),
        0.05,
        (1.0, 1),
        false,
    ),
    preset(
        "fig6",
        KdVB,
        (1.0, 0.001, 0.001),
        100,
        (-40.0, 100.0),
        0.05,
        (1.0, 1),
        false,
    ),
    preset("table1", KdV, KDV, 100, (-15.0, 15.0), 0.1, (0.1, 9), false),
    preset(
        "table2",
        KdV,
        KDV,
        100,
        (-15.0, 15.0),
        0.01,
        (0.1, 9),
        false,
    ),
    preset(
        "table3",
        KdV,
        KDV,
        100,
        (-15.0, 15.0),
        0.001,
        (0.1, 9),
        false,
    ),
    preset(
        "table4",
        KdV,
        KDV,
        100,
        (-15.0, 15.0),
        0.001,
        (0.01, 9),
        false,
    ),
    preset(
        "table5",
        KdVB,
        (2.0, 0.005, 0.1),
        100,
        (-100.0, 100.0),
        0.02,
        (1.0, 9),
        true,
    ),
    preset(
        "table6",
        KdVB,
        (1.0, 0.001, 0.001),
        100,
        (-40.0, 100.0),
        0.05,
        (1.0, 9),
        true,
    ),
    preset(
        "table7",
        KdVB,
        (1.0, 0.001, 0.001),
        16,
        (0.0, 100.0),
        0.00001,
        (0.0001, 9),
        true,
    ),
    preset(
        "table8",
        KdVB,
        (2.0, 0.005, 0.1),
        16,
        (-40.0, 40.0),
        0.02,
        (1.0, 9),
        true,
    ),
    preset(
        "table9",
        KdVB,
        (1.0, 0.001, 0.001),
        16,
        (8.0, 99.0),
        0.05,
        (1.0, 9),
        true,
    ),
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name.trim())
}

/// Every preset's summary, one per line, sorted by name.
pub fn list_presets() -> String {
    let mut lines: Vec<String> = PRESETS.iter().map(Preset::describe).collect();
    lines.sort();
    let mut out = lines.join("\n");
    out.push('\n');
    out
}
