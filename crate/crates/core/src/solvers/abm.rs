//! Fractional Adams-Bashforth-Moulton predictor-corrector.
//!
//! Product integration of x(t) = x_0 + Γ(α)^{-1} ∫_0^t (t - s)^{α-1} f(s, x(s)) ds
//! on a uniform grid: rectangle weights for the predictor, trapezoidal
//! (product) weights for the corrector.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::special::gamma;

use super::config::{Scheme, SolverConfig};
use super::gl::{check_finite, meta_for};
use super::history::History;
use super::system::SystemSpec;
use super::trajectory::Trajectory;

/// b_k = (k + 1)^α - k^α.
pub(crate) fn predictor_weights<T: Real>(alpha: T, count: usize) -> Vec<T> {
    (0..count)
        .map(|k| {
            if k == 0 {
                T::one()
            } else {
                let kf = T::from_usize_lossy(k);
                kf.powf(alpha) * (alpha * kf.recip().ln_1p()).exp_m1()
            }
        })
        .collect()
}

/// ã_k = (k + 2)^p - 2 (k + 1)^p + k^p with p = α + 1.
pub(crate) fn corrector_weights<T: Real>(alpha: T, count: usize) -> Vec<T> {
    let p = alpha + T::one();
    let two = T::lit(2.0);
    (0..count)
        .map(|k| {
            let s = T::from_usize_lossy(k + 1);
            if k < 16 {
                let kf = T::from_usize_lossy(k);
                (s + T::one()).powf(p) - two * s.powf(p) + kf.powf(p)
            } else {
                // s^p [(1 + 1/s)^p + (1 - 1/s)^p - 2] = 2 s^p Σ_{j≥1} C(p, 2j) s^{-2j}
                let inv2 = (s * s).recip();
                let mut coeff = T::one();
                let mut power = T::one();
                let mut sum = T::zero();
                for j in 1..12 {
                    let jj = T::from_usize_lossy(2 * j);
                    coeff = coeff * (p - jj + two) * (p - jj + T::one()) / (jj * (jj - T::one()));
                    power = power * inv2;
                    let term = coeff * power;
                    sum = sum + term;
                    if term.abs() <= T::epsilon() * sum.abs() {
                        break;
                    }
                }
                two * s.powf(p) * sum
            }
        })
        .collect()
}

/// Integrates a commensurate `system` with the ABM predictor-corrector.
pub fn solve_abm<T: Real>(system: &SystemSpec<T>, config: &SolverConfig<T>) -> Result<Trajectory<T>> {
    if config.scheme != Scheme::Abm {
        return Err(Error::Config(format!("solve_abm called with scheme {}", config.scheme)));
    }
    let alpha = system.commensurate_order().ok_or_else(|| {
        Error::Config("the ABM scheme requires a commensurate system".into())
    })?;
    let n = system.dim();
    let steps = config.steps(n)?;
    let reach = config.reach(steps);
    let h = config.h;
    let x0 = config.x0.clone();

    let b = predictor_weights(alpha, reach + 1);
    let a = corrector_weights(alpha, reach + 1);
    let h_alpha = h.powf(alpha);
    let pred_scale = h_alpha / gamma(alpha + T::one());
    let corr_scale = h_alpha / gamma(alpha + T::lit(2.0));

    // Rates f_j = f(t_j, x_j), most recent last.
    let mut rates = History::new(n, reach);
    let mut f = system.field_at(T::zero(), &x0);
    rates.push(&f);

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity((steps + 1) * n);
    times.push(T::zero());
    states.extend_from_slice(&x0);

    let mut pred_sum = vec![T::zero(); n];
    let mut corr_sum = vec![T::zero(); n];
    let mut x = vec![T::zero(); n];
    for step in 0..steps {
        // Advancing from t_step to t_{step+1}; history holds f_{step-K+1..=step}.
        let nf = T::from_usize_lossy(step);
        let avail = rates.len();
        pred_sum.fill(T::zero());
        corr_sum.fill(T::zero());
        for lag in 0..avail {
            // j = step - lag
            let row = rates.back(lag + 1);
            let bw = b[lag];
            let aw = if lag == step {
                // j = 0 endpoint weight
                nf.powf(alpha + T::one()) - (nf - alpha) * (nf + T::one()).powf(alpha)
            } else {
                a[lag]
            };
            for i in 0..n {
                pred_sum[i] = pred_sum[i] + bw * row[i];
                corr_sum[i] = corr_sum[i] + aw * row[i];
            }
        }
        for i in 0..n {
            x[i] = x0[i] + pred_scale * pred_sum[i];
        }
        let t_next = T::from_usize_lossy(step + 1) * h;
        for _ in 0..config.corrector_iters {
            system.eval(t_next, &x, &mut f);
            for i in 0..n {
                x[i] = x0[i] + corr_scale * (corr_sum[i] + f[i]);
            }
        }
        check_finite(&x, step + 1, h)?;
        system.eval(t_next, &x, &mut f);
        rates.push(&f);
        times.push(t_next);
        states.extend_from_slice(&x);
    }
    Ok(Trajectory::new(times, states, meta_for(system, config)))
}
