//! Lyapunov spectrum of a Caputo system.
//!
//! The base trajectory and `m` tangent vectors are advanced together as one
//! augmented GL system: D^α x = f(t, x), D^α v_i = Df(t, x) v_i. The tangent
//! update is the linearisation of the GL map with respect to the stored
//! history (x_0 is a fixed anchor, so tangent vectors carry none). It is
//! linear in the tangent history, so replacing the frame by V R⁻¹ (QR of the
//! observed part of V) in every stored row continues the evolution of the
//! orthonormalised frame exactly. The log-diagonal of R accumulates into the
//! exponents.
//!
//! Old rows of a contracting direction grow like e^{|λ| age} in the current
//! frame, so memory caps how fast contraction can be resolved and full
//! memory can overflow on long runs; use a memory window.

use crate::error::{Error, Result};
use crate::linalg;
use crate::real::Real;
use crate::solvers::{check_finite, GlKernel, History, Scheme, SolverConfig, SystemSpec};

use super::criteria::kaplan_yorke;

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovOptions<T> {
    /// Steps between orthonormalisations.
    pub renorm_every: usize,
    /// Initial time discarded before accumulating; `None` is 20% of the horizon.
    pub transient: Option<T>,
    /// Initial tangent vectors (full state dimension each); `None` is the
    /// unit vectors of the observed components.
    pub frame: Option<Vec<Vec<T>>>,
    /// Components whose projected growth is measured; `None` falls back to
    /// the system's observables, then to all components.
    pub observables: Option<Vec<usize>>,
    /// Largest accepted spread of the leading estimate over the last quarter
    /// of the run.
    pub drift_bound: T,
}

impl<T: Real> Default for LyapunovOptions<T> {
    fn default() -> Self {
        Self {
            renorm_every: 10,
            transient: None,
            frame: None,
            observables: None,
            drift_bound: T::lit(0.05),
        }
    }
}

/// Running estimate after one orthonormalisation.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovSample<T> {
    pub time: T,
    /// Estimates in frame order (not sorted).
    pub estimates: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovResult<T> {
    /// λ_1 ≥ … ≥ λ_m.
    pub exponents: Vec<T>,
    pub history: Vec<LyapunovSample<T>>,
    pub d_ky: T,
    pub transient: T,
    /// Spread of the leading estimate over the last quarter of `history`.
    pub drift: T,
    pub converged: bool,
}

/// Benettin-style spectrum of `system` along the GL trajectory from `config`.
pub fn lyapunov_spectrum<T: Real>(
    system: &SystemSpec<T>,
    config: &SolverConfig<T>,
    options: &LyapunovOptions<T>,
) -> Result<LyapunovResult<T>> {
    if config.scheme != Scheme::Gl {
        return Err(Error::Config("the Lyapunov spectrum is computed with the GL scheme only".into()));
    }
    if !system.has_jacobian() {
        return Err(Error::Config(format!("system `{}` has no Jacobian", system.name())));
    }
    if options.renorm_every == 0 {
        return Err(Error::Config("renorm_every must be at least 1".into()));
    }
    let n = system.dim();
    let steps = config.steps(n)?;
    let h = config.h;
    let transient = options.transient.unwrap_or(T::lit(0.2) * config.t_end);
    if !(transient >= T::zero()) {
        return Err(Error::Config(format!("transient must be non-negative, got {transient}")));
    }
    let transient_steps = (transient / h).ceil().to_usize().unwrap_or(usize::MAX);
    if transient_steps + options.renorm_every > steps {
        return Err(Error::Config(format!(
            "transient {transient} leaves no accumulation time before t_end = {}",
            config.t_end
        )));
    }

    let observed: Vec<usize> = match (&options.observables, system.observables()) {
        (Some(o), _) => o.clone(),
        (None, Some(o)) => o.to_vec(),
        (None, None) => (0..n).collect(),
    };
    if observed.is_empty() || observed.iter().any(|&i| i >= n) {
        return Err(Error::Config(format!("observables {observed:?} out of range for dimension {n}")));
    }
    let m = observed.len();
    let frame = match &options.frame {
        Some(f) => {
            if f.len() != m || f.iter().any(|v| v.len() != n) {
                return Err(Error::Config(format!("tangent frame must hold {m} vectors of length {n}")));
            }
            f.clone()
        }
        None => observed
            .iter()
            .map(|&i| {
                let mut e = vec![T::zero(); n];
                e[i] = T::one();
                e
            })
            .collect(),
    };

    let width = n * (1 + m);
    let mut alpha = Vec::with_capacity(width);
    for _ in 0..=m {
        alpha.extend_from_slice(system.alpha());
    }
    let mut kernel = GlKernel::new(&alpha, h, config.reach(steps));
    let mut history = History::new(width, kernel.memory_len());

    let mut anchor = vec![T::zero(); width];
    anchor[..n].copy_from_slice(&config.x0);
    let mut first = anchor.clone();
    for (slot, v) in first[n..].chunks_exact_mut(n).zip(&frame) {
        slot.copy_from_slice(v);
    }
    history.push(&first);

    let mut rate = vec![T::zero(); width];
    let mut next = vec![T::zero(); width];
    let mut jac = vec![T::zero(); n * n];
    let mut sums = vec![T::zero(); m];
    let mut start_time: Option<T> = None;
    let mut samples = Vec::new();

    for step in 1..=steps {
        let t_prev = T::from_usize_lossy(step - 1) * h;
        let z = history.back(1);
        let (x, tangents) = z.split_at(n);
        system.eval(t_prev, x, &mut rate[..n]);
        system.eval_jacobian(t_prev, x, &mut jac)?;
        for (v, out) in tangents.chunks_exact(n).zip(rate[n..].chunks_exact_mut(n)) {
            for (row, o) in jac.chunks_exact(n).zip(out.iter_mut()) {
                *o = row.iter().zip(v).map(|(&a, &b)| a * b).sum();
            }
        }
        kernel.step(&history, &anchor, &rate, &mut next);
        check_finite(&next, step, h)?;
        history.push(&next);

        if step % options.renorm_every != 0 {
            continue;
        }
        let columns: Vec<Vec<T>> = next[n..]
            .chunks_exact(n)
            .map(|v| observed.iter().map(|&i| v[i]).collect())
            .collect();
        let (_, r) = linalg::gram_schmidt(&columns);
        let r_inv = linalg::upper_triangular_inverse(&r, m).map_err(|_| {
            Error::NonConvergence(format!("tangent frame collapsed at t = {}", T::from_usize_lossy(step) * h))
        })?;
        let mut scratch = vec![T::zero(); n * m];
        let mut finite = true;
        history.for_each_row_mut(|row| {
            retransform(&mut row[n..], &r_inv, n, m, &mut scratch);
            finite &= row[n..].iter().all(|v| v.is_finite());
        });
        if !finite {
            return Err(Error::NonConvergence(format!(
                "tangent history overflowed at t = {}; use a shorter memory window",
                T::from_usize_lossy(step) * h
            )));
        }

        let t = T::from_usize_lossy(step) * h;
        match start_time {
            None if step >= transient_steps => start_time = Some(t),
            None => {}
            Some(t0) => {
                for (s, j) in sums.iter_mut().zip(0..m) {
                    *s = *s + r[j * m + j].ln();
                }
                let elapsed = t - t0;
                samples.push(LyapunovSample { time: t, estimates: sums.iter().map(|&s| s / elapsed).collect() });
            }
        }
    }

    let last = samples
        .last()
        .ok_or_else(|| Error::Config("horizon too short for a single accumulation interval".into()))?;
    let mut exponents = last.estimates.clone();
    exponents.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let d_ky = kaplan_yorke(&exponents)?;
    let drift = leading_drift(&samples);
    Ok(LyapunovResult {
        exponents,
        d_ky,
        transient: start_time.unwrap_or(transient),
        drift,
        converged: drift < options.drift_bound,
        history: samples,
    })
}

/// Spread (max - min) of the leading estimate over the last quarter.
fn leading_drift<T: Real>(samples: &[LyapunovSample<T>]) -> T {
    let tail = &samples[samples.len() - (samples.len() / 4).max(1)..];
    let lead = |s: &LyapunovSample<T>| s.estimates.iter().copied().fold(T::neg_infinity(), T::max);
    let hi = tail.iter().map(lead).fold(T::neg_infinity(), T::max);
    let lo = tail.iter().map(lead).fold(T::infinity(), T::min);
    hi - lo
}

/// `vectors` holds m stacked n-vectors V; replaces V by V R⁻¹.
fn retransform<T: Real>(vectors: &mut [T], r_inv: &[T], n: usize, m: usize, scratch: &mut [T]) {
    scratch.fill(T::zero());
    for j in 0..m {
        for i in 0..=j {
            let c = r_inv[i * m + j];
            let src = &vectors[i * n..(i + 1) * n];
            for (d, &s) in scratch[j * n..(j + 1) * n].iter_mut().zip(src) {
                *d = *d + c * s;
            }
        }
    }
    vectors.copy_from_slice(scratch);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decay(alpha: f64) -> SystemSpec<f64> {
        SystemSpec::commensurate("decay", 1, alpha, |_, x: &[f64], o: &mut [f64]| o[0] = -x[0])
            .unwrap()
            .with_jacobian(|_, _, j: &mut [f64]| j[0] = -1.0)
    }

    #[test]
    fn linear_contraction_rate() {
        let cfg = SolverConfig::new(0.01, 50.0, vec![1.0]);
        let res = lyapunov_spectrum(&decay(1.0), &cfg, &LyapunovOptions::default()).unwrap();
        // forward Euler contracts by (1 - h) per step
        let want = (0.99f64).ln() / 0.01;
        assert!((res.exponents[0] - want).abs() < 1e-9, "{:?}", res.exponents);
        assert!((res.exponents[0] + 1.0).abs() < 0.05);
        assert!(res.converged);
        assert_eq!(res.d_ky, 0.0);
    }

    #[test]
    fn diagonal_system_keeps_rates_apart() {
        let sys = SystemSpec::commensurate("diag", 2, 1.0, |_, x: &[f64], o: &mut [f64]| {
            o[0] = 0.5 * x[0];
            o[1] = -2.0 * x[1];
        })
        .unwrap()
        .with_jacobian(|_, _, j: &mut [f64]| j.copy_from_slice(&[0.5, 0.0, 0.0, -2.0]));
        let cfg = SolverConfig::new(0.001, 20.0, vec![1e-6, 1.0]);
        let res = lyapunov_spectrum(&sys, &cfg, &LyapunovOptions::default()).unwrap();
        assert!((res.exponents[0] - 0.5).abs() < 1e-3);
        assert!((res.exponents[1] + 2.0).abs() < 1e-2);
        assert!(res.exponents[0] >= res.exponents[1]);
    }

    #[test]
    fn renormalisation_period_does_not_change_linear_rates() {
        let cfg = SolverConfig::new(0.01, 40.0, vec![1.0]);
        let a = lyapunov_spectrum(&decay(0.7), &cfg, &LyapunovOptions { renorm_every: 1, ..Default::default() })
            .unwrap();
        let b = lyapunov_spectrum(&decay(0.7), &cfg, &LyapunovOptions { renorm_every: 25, ..Default::default() })
            .unwrap();
        assert!((a.exponents[0] - b.exponents[0]).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_configuration() {
        let cfg = SolverConfig::new(0.01, 1.0, vec![1.0]);
        let opts = LyapunovOptions { transient: Some(2.0), ..Default::default() };
        assert!(matches!(lyapunov_spectrum(&decay(0.5), &cfg, &opts), Err(Error::Config(_))));
        let no_jac = SystemSpec::commensurate("x", 1, 0.5, |_, _, o: &mut [f64]| o[0] = 0.0).unwrap();
        assert!(lyapunov_spectrum(&no_jac, &cfg, &LyapunovOptions::default()).is_err());
        let abm = cfg.clone().with_scheme(Scheme::Abm);
        assert!(lyapunov_spectrum(&decay(0.5), &abm, &LyapunovOptions::default()).is_err());
        let opts = LyapunovOptions { observables: Some(vec![3]), ..Default::default() };
        assert!(lyapunov_spectrum(&decay(0.5), &cfg, &opts).is_err());
    }
}
