//! Experiment driver: resolves configurations, runs the solver and writes
//! the records, snapshot and stability files.

pub mod config;
pub mod output;
pub mod presets;

use std::path::PathBuf;

use rayon::prelude::*;

use crate::diagnostics::{self, StabilityMode, StabilityReport};
use crate::equations::{self, ExactnessCheck};
use crate::error::{Error, Result};
use crate::stepper::{self, Operators, SolverState};

pub use config::{resolve_config, ExperimentConfig, KeyValues};
pub use presets::{list_presets, Preset, PRESETS};

/// Boundary magnitude above which a run gets a boundary notice.
pub const BOUNDARY_WARN_LEVEL: f64 = 1e-3;

/// How a run ended.
#[derive(Clone, Debug, PartialEq)]
pub enum RunStatus {
    Success,
    /// The stability gate rejected the initial amplification matrix.
    Unstable,
    /// The time march failed; artifacts hold everything up to the failure.
    SolverFailed(String),
}

impl RunStatus {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunStatus::Success => 0,
            RunStatus::SolverFailed(_) => EXIT_SOLVER,
            RunStatus::Unstable => EXIT_UNSTABLE,
        }
    }
}

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_UNSTABLE: i32 = 4;

/// Maps a library error to the CLI exit code.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::SolverFailure { .. } | Error::NonFinite { .. } | Error::Singular { .. } => {
            EXIT_SOLVER
        }
        Error::Io { .. } => 1,
        _ => EXIT_CONFIG,
    }
}

/// Files written by one run, plus what the console should report.
#[derive(Clone, Debug)]
pub struct RunArtifacts {
    pub name: String,
    pub records_csv: PathBuf,
    pub snapshots_csv: PathBuf,
    pub stability_csv: PathBuf,
    pub svg_files: Vec<PathBuf>,
    pub status: RunStatus,
    pub stability: StabilityReport,
    pub reference: ExactnessCheck,
    pub notices: Vec<String>,
    pub records: Vec<diagnostics::DiagnosticsRecord>,
}

/// Runs one resolved configuration.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunArtifacts> {
    let setup = cfg.setup()?;
    let dir = cfg.output_dir();
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let records_csv = dir.join("records.csv");
    let snapshots_csv = dir.join("snapshots.csv");
    let stability_csv = dir.join("stability.csv");

    let mut notices = Vec::new();
    let reference = equations::check_reference(&setup, 5);
    if !reference.exact {
        notices.push(format!(
            "exact solution used as reference only (relative PDE residual {:.3e})",
            reference.relative_residual
        ));
    }
    for &t in &cfg.observers {
        let (ga, gb) = equations::boundary_values(&setup, t);
        if ga.abs().max(gb.abs()) > BOUNDARY_WARN_LEVEL {
            notices.push(format!(
                "warn-boundary: |u| at the boundary reaches {:.3e} at t = {t}",
                ga.abs().max(gb.abs())
            ));
            break;
        }
    }

    let ops = Operators::new(&setup.grid);
    let initial = SolverState::initial(&setup);
    let stability = diagnostics::assess_stability(
        &initial,
        &setup,
        &ops,
        StabilityMode::default(),
        diagnostics::STABILITY_TOL,
    )?;
    output::write_stability(&stability_csv, &stability)?;

    let mut artifacts = RunArtifacts {
        name: cfg.name.clone(),
        records_csv,
        snapshots_csv,
        stability_csv,
        svg_files: Vec::new(),
        status: RunStatus::Success,
        stability,
        reference,
        notices,
        records: Vec::new(),
    };

    let mut records = output::CsvWriter::create(&artifacts.records_csv, output::RECORDS_HEADER)?;
    let mut snapshots =
        output::CsvWriter::create(&artifacts.snapshots_csv, output::SNAPSHOTS_HEADER)?;
    if cfg.stability_gate && !stability.stable {
        artifacts.status = RunStatus::Unstable;
        records.finish()?;
        snapshots.finish()?;
        return Ok(artifacts);
    }

    let nodes = setup.grid.nodes().to_vec();
    let mut io_error: Option<Error> = None;
    let mut svgs = Vec::new();
    let outcome = stepper::run_with(&setup, &cfg.observers, |snap, rec| {
        if io_error.is_some() {
            return;
        }
        artifacts.records.push(*rec);
        let exact = setup.exact_on_grid(snap.t);
        let res = records.line(&output::record_row(rec)).and_then(|_| {
            output::write_snapshot_rows(&mut snapshots, &nodes, &snap.u, &exact, snap.t)
        });
        if let Err(e) = res {
            io_error = Some(e);
            return;
        }
        if cfg.svg {
            let path = dir.join(format!("snapshot_t{}.svg", snap.t));
            let body = output::snapshot_svg(&nodes, &snap.u, &exact, snap.t);
            match std::fs::write(&path, body) {
                Ok(()) => svgs.push(path),
                Err(e) => io_error = Some(Error::io(&path, e)),
            }
        }
    });
    records.finish()?;
    snapshots.finish()?;
    if let Some(e) = io_error {
        return Err(e);
    }
    artifacts.svg_files = svgs;
    match outcome {
        Ok(_) => {}
        Err(e @ (Error::SolverFailure { .. } | Error::NonFinite { .. })) => {
            artifacts.status = RunStatus::SolverFailed(e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(artifacts)
}

/// Runs several configurations on up to `jobs` threads, keeping input order.
pub fn run_all(configs: &[ExperimentConfig], jobs: usize) -> Vec<Result<RunArtifacts>> {
    if jobs <= 1 || configs.len() <= 1 {
        return configs.iter().map(run_experiment).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| configs.par_iter().map(run_experiment).collect()),
        Err(_) => configs.iter().map(run_experiment).collect(),
    }
}
