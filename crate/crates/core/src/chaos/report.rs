//! Equilibrium stability summaries and the versioned JSON analysis report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::solvers::SystemSpec;
use crate::systems::{find_equilibria, Equilibrium};

use super::criteria::{
    classify_attractor, dimension_instability_check, matignon_stability, spectral_chaos_criterion,
    AttractorClass, SectorTest, SpectralChaos, Stability,
};
use super::lyapunov::LyapunovResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumVerdict<T> {
    pub equilibrium: Equilibrium<T>,
    pub sector: SectorTest<T>,
    pub spectral: SpectralChaos<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport<T> {
    pub alpha: T,
    pub equilibria: Vec<EquilibriumVerdict<T>>,
    /// Newton starts that did not converge.
    pub dropped: usize,
}

/// Finds equilibria from `guesses` and applies both eigenvalue criteria at
/// the system's commensurate order.
pub fn stability_report<T: Real>(system: &SystemSpec<T>, guesses: &[Vec<T>]) -> Result<StabilityReport<T>> {
    let alpha = system
        .commensurate_order()
        .ok_or_else(|| Error::Incommensurate(format!("system `{}` has mixed orders", system.name())))?;
    let search = find_equilibria(system, guesses)?;
    let equilibria = search
        .equilibria
        .into_iter()
        .map(|equilibrium| {
            let sector = matignon_stability(&equilibrium.eigenvalues, alpha)?;
            let spectral = spectral_chaos_criterion(&equilibrium.eigenvalues, alpha);
            Ok(EquilibriumVerdict { equilibrium, sector, spectral })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityReport { alpha, equilibria, dropped: search.dropped })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumEntry {
    pub point: Vec<f64>,
    pub residual: f64,
    pub eigenvalues: Vec<ComplexValue>,
    pub margins: Vec<Option<f64>>,
    pub stability: Stability,
    pub sign_rule: Stability,
    pub spectral_chaos: bool,
    pub sign_split: bool,
    pub witnesses: Vec<ComplexValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criteria {
    /// Some equilibrium has an eigenvalue with Re λ > πα/2.
    pub spectral_chaos: Option<bool>,
    /// The dimension estimate exceeds n - 1.
    pub dimension_instability: Option<bool>,
    pub dimension_estimate: Option<f64>,
}

/// Versioned analysis report. Absent analyses serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub system: String,
    pub alpha: Vec<f64>,
    pub exponents: Option<Vec<f64>>,
    pub d_ky: Option<f64>,
    pub classification: Option<AttractorClass>,
    pub converged: Option<bool>,
    pub drift: Option<f64>,
    pub transient: Option<f64>,
    pub equilibria: Vec<EquilibriumEntry>,
    pub dropped_guesses: Option<usize>,
    pub criteria: Criteria,
}

fn complex<T: Real>(z: &num_complex::Complex<T>) -> ComplexValue {
    ComplexValue { re: z.re.to_f64_lossy(), im: z.im.to_f64_lossy() }
}

fn f64s<T: Real>(v: &[T]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64_lossy()).collect()
}

impl AnalysisReport {
    /// `dimension` overrides the Kaplan-Yorke value as the estimate used by
    /// the dimension criterion; `dim` is the analysed phase-space dimension.
    pub fn build<T: Real>(
        system: &SystemSpec<T>,
        lyapunov: Option<&LyapunovResult<T>>,
        stability: Option<&StabilityReport<T>>,
        zero_tol: T,
        dimension: Option<f64>,
        dim: usize,
    ) -> Self {
        let estimate = dimension.or_else(|| lyapunov.map(|l| l.d_ky.to_f64_lossy()));
        let equilibria: Vec<EquilibriumEntry> = stability
            .map(|s| {
                s.equilibria
                    .iter()
                    .map(|v| EquilibriumEntry {
                        point: f64s(&v.equilibrium.point),
                        residual: v.equilibrium.residual.to_f64_lossy(),
                        eigenvalues: v.equilibrium.eigenvalues.iter().map(complex).collect(),
                        margins: v.sector.margins.iter().map(|m| m.map(|x| x.to_f64_lossy())).collect(),
                        stability: v.sector.classification,
                        sign_rule: v.sector.sign_rule,
                        spectral_chaos: v.spectral.flag,
                        sign_split: v.spectral.sign_split,
                        witnesses: v.spectral.witnesses.iter().map(complex).collect(),
                    })
                    .collect()
            })
            .unwrap_or_default();
        Self {
            schema_version: SCHEMA_VERSION,
            system: system.name().to_owned(),
            alpha: f64s(system.alpha()),
            exponents: lyapunov.map(|l| f64s(&l.exponents)),
            d_ky: lyapunov.map(|l| l.d_ky.to_f64_lossy()),
            classification: lyapunov.map(|l| classify_attractor(&l.exponents, zero_tol)),
            converged: lyapunov.map(|l| l.converged),
            drift: lyapunov.map(|l| l.drift.to_f64_lossy()),
            transient: lyapunov.map(|l| l.transient.to_f64_lossy()),
            dropped_guesses: stability.map(|s| s.dropped),
            criteria: Criteria {
                spectral_chaos: stability.map(|s| s.equilibria.iter().any(|v| v.spectral.flag)),
                dimension_instability: estimate.map(|d| dimension_instability_check(d, dim)),
                dimension_estimate: estimate,
            },
            equilibria,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
