//! # sinc-kdv
//!
//! Sinc-collocation solver for the Korteweg-de Vries equation
//!
//! ```text
//! u_t + 6 u u_x + u_xxx = 0
//! ```
//!
//! and the KdV-Burgers family `u_t + eps u u_x - nu u_xx + mu u_xxx = 0`.
//! Space is discretized with the sinc cardinal basis on a uniform grid,
//! time with a θ-weighted scheme whose nonlinear term is linearized about
//! the previous level, so each step is one dense linear solve.
//!
//! Modules:
//!
//! - [`sinc_basis`]: grid, basis functions, differentiation matrices
//! - [`equations`]: PDE coefficients, travelling-wave reference solutions
//! - [`stepper`]: system assembly and time marching
//! - [`diagnostics`]: error norms, conserved sums, amplification-matrix stability
//! - [`linalg`]: dense LU and spectral radius
//! - [`runner`]: presets, configuration and CSV/SVG output
//!
//! ```
//! use sinc_kdv::{equations::{EquationSpec, ProblemSetup}, sinc_basis::Grid, stepper};
//!
//! let grid = Grid::new(-15.0, 15.0, 100)?;
//! let setup = ProblemSetup::new(EquationSpec::kdv(), grid, 0.5, 0.01, 0.1)?;
//! let traj = stepper::run(&setup, &[0.1])?;
//! assert!(traj.records[0].l_inf < 5e-6);
//! # Ok::<(), sinc_kdv::Error>(())
//! ```

pub mod diagnostics;
pub mod equations;
pub mod error;
pub mod linalg;
pub mod runner;
pub mod sinc_basis;
pub mod stepper;

pub use error::{Error, Result};
