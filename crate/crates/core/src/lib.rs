//! Caputo fractional-order dynamics.
//!
//! Mittag-Leffler functions, GL and ABM solvers, the benchmark catalog,
//! Lyapunov spectra with Kaplan-Yorke dimensions, eigenvalue stability
//! criteria and box-counting dimensions. Everything is generic over
//! [`Real`] (f32 or f64); the aliases below fix f64.

pub mod chaos;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod mlf;
mod quad;
pub mod real;
pub mod solvers;
mod special;
pub mod systems;

pub use error::{Error, Result};
pub use real::Real;

pub type SystemSpec64 = solvers::SystemSpec<f64>;
pub type SolverConfig64 = solvers::SolverConfig<f64>;
pub type Trajectory64 = solvers::Trajectory<f64>;
pub type MultiTermSpec64 = solvers::MultiTermSpec<f64>;
pub type MlParams64 = mlf::MlParams<f64>;
pub type LyapunovOptions64 = chaos::LyapunovOptions<f64>;
pub type LyapunovResult64 = chaos::LyapunovResult<f64>;
pub type StabilityReport64 = chaos::StabilityReport<f64>;
pub type BoxCountResult64 = geometry::BoxCountResult<f64>;
pub type Equilibrium64 = systems::Equilibrium<f64>;
