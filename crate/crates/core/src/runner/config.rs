//! Layered experiment configuration: preset values, then a flat
//! `key = value` file, then command-line flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::equations::{EquationKind, EquationSpec, ProblemSetup};
use crate::error::{Error, Result};
use crate::runner::presets::{self, Preset};
use crate::sinc_basis::Grid;
use crate::stepper;

/// Recognised keys, in echo order.
pub const KEYS: &[&str] = &[
    "preset",
    "equation",
    "epsilon",
    "nu",
    "mu",
    "p",
    "a",
    "b",
    "n",
    "dt",
    "T",
    "theta",
    "observers",
    "out",
    "jobs",
    "no-stability-gate",
    "svg",
];

/// Raw `key -> value` strings from one configuration layer.
pub type KeyValues = BTreeMap<String, String>;

/// Fully resolved parameters for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Preset name, or `custom`.
    pub name: String,
    pub preset: Option<String>,
    pub equation: EquationSpec,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub theta: f64,
    pub dt: f64,
    pub t_final: f64,
    pub observers: Vec<f64>,
    pub power: u32,
    /// Base output directory; artifacts go to `out/<name>/`.
    pub out: PathBuf,
    pub jobs: usize,
    pub stability_gate: bool,
    pub svg: bool,
}

impl ExperimentConfig {
    pub fn setup(&self) -> Result<ProblemSetup> {
        let grid = Grid::new(self.a, self.b, self.n)?;
        ProblemSetup::new(self.equation, grid, self.theta, self.dt, self.t_final)?
            .with_power(self.power)
    }

    pub fn output_dir(&self) -> PathBuf {
        self.out.join(&self.name)
    }

    /// `key = value` lines that resolve back to this same config.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        if let Some(p) = &self.preset {
            let _ = writeln!(s, "preset = {p}");
        }
        let observers: Vec<String> = self.observers.iter().map(|t| t.to_string()).collect();
        let eq = &self.equation;
        let _ = writeln!(s, "equation = {}", eq.kind());
        let _ = writeln!(s, "epsilon = {}", eq.epsilon());
        let _ = writeln!(s, "nu = {}", eq.nu());
        let _ = writeln!(s, "mu = {}", eq.mu());
        let _ = writeln!(s, "p = {}", self.power);
        let _ = writeln!(s, "a = {}", self.a);
        let _ = writeln!(s, "b = {}", self.b);
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "dt = {}", self.dt);
        let _ = writeln!(s, "T = {}", self.t_final);
        let _ = writeln!(s, "theta = {}", self.theta);
        let _ = writeln!(s, "observers = {}", observers.join(","));
        let _ = writeln!(s, "out = {}", self.out.display());
        let _ = writeln!(s, "jobs = {}", self.jobs);
        let _ = writeln!(s, "no-stability-gate = {}", !self.stability_gate);
        let _ = writeln!(s, "svg = {}", self.svg);
        s
    }
}

/// Parses flat `key = value` text. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<KeyValues> {
    let mut map = KeyValues::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(
                format!("line {}", lineno + 1),
                format!("expected `key = value`, got `{line}`"),
            )
        })?;
        let key = key.trim();
        check_key(key)?;
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> Result<KeyValues> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_text(&text)
}

fn check_key(key: &str) -> Result<()> {
    if KEYS.contains(&key) {
        Ok(())
    } else {
        Err(Error::config(key, "unknown key"))
    }
}

/// Resolves flags over an optional file over preset values. A `preset`
/// value may list several names separated by commas, or be `all`; one
/// config is produced per preset.
pub fn resolve_config(flags: &KeyValues, file: Option<&Path>) -> Result<Vec<ExperimentConfig>> {
    for key in flags.keys() {
        check_key(key)?;
    }
    let mut user = match file {
        Some(path) => read_config_file(path)?,
        None => KeyValues::new(),
    };
    user.extend(flags.iter().map(|(k, v)| (k.clone(), v.clone())));

    let names: Vec<String> = match user.get("preset").map(|s| s.trim()) {
        None | Some("") => Vec::new(),
        Some("all") => presets::PRESETS
            .iter()
            .map(|p| p.name.to_string())
            .collect(),
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
    };
    if names.is_empty() {
        return Ok(vec![build(None, &user)?]);
    }
    names
        .iter()
        .map(|name| {
            let preset = presets::find(name).ok_or_else(|| Error::UnknownPreset(name.clone()))?;
            build(Some(preset), &user)
        })
        .collect()
}

fn preset_values(p: &Preset) -> KeyValues {
    let observers: Vec<String> = p.observers().iter().map(|t| t.to_string()).collect();
    [
        ("equation", p.kind.to_string()),
        ("epsilon", p.epsilon.to_string()),
        ("nu", p.nu.to_string()),
        ("mu", p.mu.to_string()),
        ("a", p.a.to_string()),
        ("b", p.b.to_string()),
        ("n", p.n.to_string()),
        ("dt", p.dt.to_string()),
        ("T", p.t_final().to_string()),
        ("theta", p.theta.to_string()),
        ("observers", observers.join(",")),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

struct Fields<'a>(&'a KeyValues);

impl Fields<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(|s| s.trim())
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::config(key, format!("cannot parse `{v}`"))),
        }
    }

    fn required<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.parse(key)?
            .ok_or_else(|| Error::config(key, "missing (give a preset or set it explicitly)"))
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.raw(key) {
            None => Ok(false),
            Some(v) => match v.to_ascii_lowercase().as_str() {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(Error::config(key, format!("expected a boolean, got `{v}`"))),
            },
        }
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::config(key, format!("cannot parse `{}`", s.trim())))
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    }
}

fn build(preset: Option<&Preset>, user: &KeyValues) -> Result<ExperimentConfig> {
    let mut merged = preset.map(preset_values).unwrap_or_default();
    merged.extend(user.iter().map(|(k, v)| (k.clone(), v.clone())));
    let f = Fields(&merged);

    let kind: EquationKind = f.required("equation")?;
    let (eps, nu, mu) = match kind {
        EquationKind::KdV => (
            f.parse("epsilon")?.unwrap_or(6.0),
            f.parse("nu")?.unwrap_or(0.0),
            f.parse("mu")?.unwrap_or(1.0),
        ),
        EquationKind::KdVB => (f.required("epsilon")?, f.required("nu")?, f.required("mu")?),
    };
    let equation = EquationSpec::new(kind, eps, nu, mu)?;

    let a: f64 = f.required("a")?;
    let b: f64 = f.required("b")?;
    let n: usize = f.required("n")?;
    Grid::new(a, b, n).map_err(|e| Error::config("a/b/n", e.to_string()))?;

    let dt: f64 = f.required("dt")?;
    let theta: f64 = f.parse("theta")?.unwrap_or(0.5);
    let listed = f.list("observers")?;
    let t_final: f64 = match (f.parse("T")?, &listed) {
        (Some(t), _) => t,
        (None, Some(obs)) => obs.iter().cloned().fold(0.0, f64::max),
        (None, None) => return Err(Error::config("T", "missing")),
    };
    let observers = listed.unwrap_or_else(|| vec![t_final]);
    let power: u32 = f.parse("p")?.unwrap_or(1);
    let jobs: usize = f.parse("jobs")?.unwrap_or(1);
    if jobs == 0 {
        return Err(Error::config("jobs", "must be >= 1"));
    }

    let cfg = ExperimentConfig {
        name: preset.map_or("custom", |p| p.name).to_string(),
        preset: preset.map(|p| p.name.to_string()),
        equation,
        a,
        b,
        n,
        theta,
        dt,
        t_final,
        observers,
        power,
        out: PathBuf::from(f.raw("out").unwrap_or("out")),
        jobs,
        stability_gate: !f.flag("no-stability-gate")?,
        svg: f.flag("svg")?,
    };
    let setup = cfg.setup()?;
    stepper::observer_steps(&setup, &cfg.observers)
        .map_err(|e| Error::config("observers", e.to_string()))?;
    Ok(cfg)
}
