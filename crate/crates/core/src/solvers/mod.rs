//! Integrators for Caputo fractional systems.

mod abm;
mod config;
mod gl;
mod history;
mod multiterm;
mod system;
mod trajectory;

pub use abm::solve_abm;
pub use config::{Memory, Scheme, SolverConfig, BLOW_UP};
pub use gl::{gl_weights, solve_gl};
pub use multiterm::{commensurate_base, multi_term_to_system, ChainLayout, GradientFn, MultiTermSpec, ScalarFn};
pub use system::{Perturbation, SystemSpec, VectorFn};
pub use trajectory::{format_value, CsvTable, Trajectory, TrajectoryMeta};

pub(crate) use gl::{check_finite, GlKernel};
pub(crate) use history::History;

use crate::error::Result;
use crate::real::Real;

/// Dispatches on `config.scheme`.
pub fn solve<T: Real>(system: &SystemSpec<T>, config: &SolverConfig<T>) -> Result<Trajectory<T>> {
    match config.scheme {
        Scheme::Gl => solve_gl(system, config),
        Scheme::Abm => solve_abm(system, config),
    }
}
