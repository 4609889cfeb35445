//! Exponent-based classification and eigenvalue stability criteria.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Kaplan-Yorke dimension j + Σ_{i≤j} λ_i / |λ_{j+1}| of a descending spectrum.
pub fn kaplan_yorke<T: Real>(exponents: &[T]) -> Result<T> {
    if exponents.is_empty() {
        return Err(Error::EmptyInput("Kaplan-Yorke dimension of an empty spectrum".into()));
    }
    if exponents.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("Lyapunov exponents must be finite".into()));
    }
    if exponents.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain("Lyapunov exponents must be sorted in descending order".into()));
    }
    let mut sum = T::zero();
    for (j, &l) in exponents.iter().enumerate() {
        if sum + l < T::zero() {
            return Ok(T::from_usize_lossy(j) + sum / l.abs());
        }
        sum = sum + l;
    }
    Ok(T::from_usize_lossy(exponents.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttractorClass {
    Strange,
    LimitCycle,
    FixedPoint,
    Undetermined,
}

impl fmt::Display for AttractorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strange => "strange",
            Self::LimitCycle => "limit_cycle",
            Self::FixedPoint => "fixed_point",
            Self::Undetermined => "undetermined",
        })
    }
}

/// Default tolerance separating zero from non-zero exponents (1/time).
pub const ZERO_TOL: f64 = 0.01;

/// Sign-pattern classification of a descending spectrum.
pub fn classify_attractor<T: Real>(exponents: &[T], zero_tol: T) -> AttractorClass {
    let Some(&lead) = exponents.first() else {
        return AttractorClass::Undetermined;
    };
    let negative = |l: &T| *l < -zero_tol;
    if lead > zero_tol && exponents.iter().any(negative) {
        AttractorClass::Strange
    } else if lead.abs() <= zero_tol && exponents[1..].iter().all(negative) {
        AttractorClass::LimitCycle
    } else if exponents.iter().all(negative) {
        AttractorClass::FixedPoint
    } else {
        AttractorClass::Undetermined
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Stable => "stable",
            Self::Unstable => "unstable",
        })
    }
}

/// Sector test for one spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorTest<T> {
    pub alpha: T,
    /// απ/2
    pub threshold: T,
    /// |arg λ| - απ/2 per eigenvalue; `None` for a zero eigenvalue.
    pub margins: Vec<Option<T>>,
    /// Sector verdict: stable iff every defined margin is positive.
    pub classification: Stability,
    /// Half-plane verdict: stable iff every non-zero eigenvalue has Re λ < 0.
    pub sign_rule: Stability,
    pub warnings: Vec<String>,
}

/// Stability of an equilibrium of D^α x = f(x) from the Jacobian spectrum:
/// asymptotically stable iff |arg λ| > απ/2 for every eigenvalue.
pub fn matignon_stability<T: Real>(eigenvalues: &[Complex<T>], alpha: T) -> Result<SectorTest<T>> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::Domain(format!("order must lie in (0, 1], got {alpha}")));
    }
    let threshold = alpha * T::FRAC_PI_2();
    let mut warnings = Vec::new();
    let margins: Vec<Option<T>> = eigenvalues
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if l.re == T::zero() && l.im == T::zero() {
                warnings.push(format!("eigenvalue {i} is zero; marginal, excluded from the verdict"));
                None
            } else {
                Some(l.im.atan2(l.re).abs() - threshold)
            }
        })
        .collect();
    let verdict = |ok: bool| if ok { Stability::Stable } else { Stability::Unstable };
    let classification = verdict(margins.iter().flatten().all(|&m| m > T::zero()));
    let sign_rule = verdict(
        eigenvalues.iter().filter(|l| !(l.re == T::zero() && l.im == T::zero())).all(|l| l.re < T::zero()),
    );
    Ok(SectorTest { alpha, threshold, margins, classification, sign_rule, warnings })
}

/// Eigenvalues with real part above πα/2.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralChaos<T> {
    /// πα/2
    pub threshold: T,
    pub witnesses: Vec<Complex<T>>,
    /// Some eigenvalue exceeds the threshold.
    pub flag: bool,
    /// Some eigenvalue has a negative real part (expanding/contracting split).
    pub sign_split: bool,
}

/// Spectral chaos criterion at one equilibrium. The flag only requires a
/// non-empty witness set; `sign_split` is reported alongside.
pub fn spectral_chaos_criterion<T: Real>(eigenvalues: &[Complex<T>], alpha: T) -> SpectralChaos<T> {
    let threshold = T::PI() * alpha / T::lit(2.0);
    let witnesses: Vec<Complex<T>> = eigenvalues.iter().copied().filter(|l| l.re > threshold).collect();
    SpectralChaos {
        threshold,
        flag: !witnesses.is_empty(),
        sign_split: eigenvalues.iter().any(|l| l.re < T::zero()),
        witnesses,
    }
}

/// True iff the dimension estimate exceeds n - 1. Box-counting or
/// Kaplan-Yorke values stand in for the Hausdorff dimension.
pub fn dimension_instability_check<T: Real>(dimension_estimate: T, n: usize) -> bool {
    dimension_estimate > T::from_usize_lossy(n) - T::one()
}
