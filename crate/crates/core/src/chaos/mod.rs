//! Lyapunov spectra, attractor classification and eigenvalue criteria.

mod criteria;
mod lyapunov;
mod report;

pub use criteria::{
    classify_attractor, dimension_instability_check, kaplan_yorke, matignon_stability, spectral_chaos_criterion,
    AttractorClass, SectorTest, SpectralChaos, Stability, ZERO_TOL,
};
pub use lyapunov::{lyapunov_spectrum, LyapunovOptions, LyapunovResult, LyapunovSample};
pub use report::{
    stability_report, AnalysisReport, ComplexValue, Criteria, EquilibriumEntry, EquilibriumVerdict, StabilityReport,
    SCHEMA_VERSION,
};
