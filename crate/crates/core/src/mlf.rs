//! Mittag-Leffler functions E_α(z) and E_{α,β}(z).
//!
//! E_{α,β}(z) = Σ_{k≥0} z^k / Γ(αk + β) is evaluated by direct summation in
//! the log domain. The summation tracks Σ|term|, which bounds the rounding
//! error; when that bound is too large relative to the result (large negative
//! arguments, where the series cancels catastrophically) and 0 < α < 1, the
//! value is taken from the real integral representation
//!
//! ```text
//! E_{α,β}(z) = (1/π) ∫_0^∞ u^{α-β} e^{-u}
//!              [u^α sin(π(1-β)) - z sin(π(1-β+α))]
//!              / (u^{2α} - 2 u^α z cos(απ) + z²) du,      β < 1 + α,
//! ```
//!
//! valid for |arg z| > απ, which includes the whole negative real axis.
//! Larger β are first reduced with E_{α,β}(z) = (E_{α,β-α}(z) - 1/Γ(β-α)) / z.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quad::{exp_sinh, tanh_sinh};
use crate::real::Real;
use crate::special::{ln_gamma, recip_gamma};

const MAX_TERMS: usize = 4000;

/// Parameters of a Mittag-Leffler evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> MlParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::lit(2.0)) {
            return Err(Error::Domain(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn eval(&self, z: T) -> Result<T> {
        eval_real(self.alpha, self.beta, z)
    }

    pub fn eval_complex(&self, z: Complex<T>) -> Result<Complex<T>> {
        eval_complex(self.alpha, self.beta, z)
    }
}

/// Relative accuracy the evaluation must certify.
fn target<T: Real>() -> T {
    T::lit(1e-10).max(T::lit(64.0) * T::epsilon())
}

/// E_α(z).
pub fn ml_one<T: Real>(alpha: T, z: T) -> Result<T> {
    ml_two(alpha, T::one(), z)
}

/// E_{α,β}(z).
pub fn ml_two<T: Real>(alpha: T, beta: T, z: T) -> Result<T> {
    MlParams::new(alpha, beta)?.eval(z)
}

/// E_α(z) for complex argument.
pub fn ml_one_complex<T: Real>(alpha: T, z: Complex<T>) -> Result<Complex<T>> {
    ml_two_complex(alpha, T::one(), z)
}

/// E_{α,β}(z) for complex argument (series route only).
pub fn ml_two_complex<T: Real>(alpha: T, beta: T, z: Complex<T>) -> Result<Complex<T>> {
    MlParams::new(alpha, beta)?.eval_complex(z)
}

struct SeriesSum<S, T> {
    value: S,
    abs_sum: T,
    converged: bool,
}

/// Sums the series given the unit "phase" of z^k and a norm for partial sums.
fn series<T: Real, S, P, N>(alpha: T, beta: T, log_abs_z: T, phase: P, norm: N) -> SeriesSum<S, T>
where
    S: Copy + std::ops::Add<Output = S> + std::ops::Mul<T, Output = S>,
    P: Fn(usize) -> S,
    N: Fn(S) -> T,
{
    let first = phase(0);
    let mut value = first * recip_gamma(beta);
    let mut abs_sum = recip_gamma(beta).abs();
    let mut prev_log = T::infinity();
    for k in 1..MAX_TERMS {
        let kf = T::from_usize_lossy(k);
        let log_mag = kf * log_abs_z - ln_gamma(alpha * kf + beta);
        let mag = log_mag.exp();
        if !mag.is_finite() {
            return SeriesSum { value, abs_sum: T::infinity(), converged: false };
        }
        value = value + phase(k) * mag;
        abs_sum = abs_sum + mag;
        let decreasing = log_mag < prev_log;
        prev_log = log_mag;
        if decreasing && (mag <= T::epsilon() * T::lit(0.5) * norm(value) || mag < T::min_positive_value()) {
            return SeriesSum { value, abs_sum, converged: true };
        }
    }
    SeriesSum { value, abs_sum, converged: false }
}

fn series_is_accurate<T: Real>(abs_sum: T, value_abs: T) -> bool {
    abs_sum.is_finite() && T::lit(4.0) * T::epsilon() * abs_sum <= target::<T>() * value_abs
}

fn eval_real<T: Real>(alpha: T, beta: T, z: T) -> Result<T> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {z}")));
    }
    if z == T::zero() {
        return Ok(recip_gamma(beta));
    }
    if beta == T::one() {
        if alpha == T::one() {
            return Ok(z.exp());
        }
        if alpha == T::lit(2.0) {
            return Ok(if z > T::zero() { z.sqrt().cosh() } else { (-z).sqrt().cos() });
        }
    }
    let negative = z < T::zero();
    let s = series(
        alpha,
        beta,
        z.abs().ln(),
        |k| if negative && k % 2 == 1 { -T::one() } else { T::one() },
        |v: T| v.abs(),
    );
    if s.converged && series_is_accurate(s.abs_sum, s.value.abs()) {
        return Ok(s.value);
    }
    if negative && alpha < T::one() {
        return integral_negative_axis(alpha, beta, z);
    }
    Err(Error::NonConvergence(format!(
        "series for E_{{{alpha},{beta}}}({z}) cannot reach relative accuracy {:e}",
        target::<T>()
    )))
}

fn eval_complex<T: Real>(alpha: T, beta: T, z: Complex<T>) -> Result<Complex<T>> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("argument must be finite".into()));
    }
    if z.im == T::zero() && (z.re >= T::zero() || alpha < T::one()) {
        return eval_real(alpha, beta, z.re).map(|v| Complex::new(v, T::zero()));
    }
    let (r, theta) = z.to_polar();
    if r == T::zero() {
        return Ok(Complex::new(recip_gamma(beta), T::zero()));
    }
    let s = series(
        alpha,
        beta,
        r.ln(),
        |k| Complex::from_polar(T::one(), theta * T::from_usize_lossy(k)),
        |v: Complex<T>| v.norm(),
    );
    if s.converged && series_is_accurate(s.abs_sum, s.value.norm()) {
        return Ok(s.value);
    }
    Err(Error::NonConvergence(format!(
        "series for E_{{{alpha},{beta}}} at |z| = {r} cannot reach relative accuracy {:e}",
        target::<T>()
    )))
}

fn integral_negative_axis<T: Real>(alpha: T, beta: T, z: T) -> Result<T> {
    let upper = T::one() + alpha;
    if beta >= upper {
        let inner = integral_negative_axis(alpha, beta - alpha, z)?;
        return Ok((inner - recip_gamma(beta - alpha)) / z);
    }
    let pi = T::PI();
    let sin_a = (pi * (T::one() - beta)).sin();
    let sin_b = (pi * (T::one() - beta + alpha)).sin();
    let cos_ap = (alpha * pi).cos();
    let z2 = z * z;
    let regular = |u: T| {
        let ua = u.powf(alpha);
        let num = ua * sin_a - z * sin_b;
        let den = ua * ua - T::lit(2.0) * ua * z * cos_ap + z2;
        (-u).exp() * num / den
    };
    let kernel = |u: T| u.powf(alpha - beta) * regular(u);
    let tol = T::lit(1e-13).max(T::lit(16.0) * T::epsilon());
    // Split where u^α = |z|, where the denominator is smallest.
    let peak = z.abs().powf(alpha.recip());
    let split = if peak <= T::lit(50.0) { peak } else { T::one() };
    // On [0, split] substitute u = v^m, m = 1/(1 + α - β), which absorbs the
    // u^{α-β} endpoint singularity; truncating the rule there instead loses
    // up to 1e-7 when α - β is close to -1.
    let lift = T::one() + alpha - beta;
    let left = if lift < T::one() {
        let m = lift.recip();
        tanh_sinh(|v: T, _| m * regular(v.powf(m)), T::zero(), split.powf(lift), tol)
    } else {
        tanh_sinh(|_u, d| kernel(d), T::zero(), split, tol)
    };
    let right = exp_sinh(kernel, split, tol);
    let (value, error) = (left.value + right.value, left.error + right.error);
    let value = value / pi;
    let error = error / pi;
    if !value.is_finite() || error > target::<T>() * value.abs() {
        return Err(Error::NonConvergence(format!(
            "integral for E_{{{alpha},{beta}}}({z}) stalled with error {error:e}"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn closed_form_special_cases() {
        assert!(rel(ml_one(1.0, 1.0).unwrap(), std::f64::consts::E) < 1e-15);
        assert_eq!(ml_one(0.7, 0.0).unwrap(), 1.0);
        assert!(rel(ml_one(2.0, 1.0).unwrap(), 1.543_080_634_815_243_7) < 1e-15);
        assert!(rel(ml_two(1.0, 2.0, 1.0).unwrap(), 1.718_281_828_459_045) < 1e-12);
    }

    #[test]
    fn series_route_matches_high_precision_values() {
        // Reference values from 40-digit summation of the defining series.
        assert!(rel(ml_one(0.5, 1.0).unwrap(), 5.008_980_080_762_283_5) < 1e-12);
        assert!(rel(ml_two(0.8, 0.8, -0.5).unwrap(), 0.457_931_498_101_114_4) < 1e-12);
        assert!(rel(ml_one(0.6, -1.0).unwrap(), 0.413_327_340_943_106_3) < 1e-12);
    }

    #[test]
    fn integral_route_matches_high_precision_values() {
        assert!(rel(ml_one(0.5, -5.0).unwrap(), 0.110_704_637_733_069) < 1e-12);
        assert!(rel(ml_one(0.8, -7.0).unwrap(), 0.037_861_333_396_684_9) < 1e-12);
        assert!(rel(ml_two(0.8, 0.8, -6.0).unwrap(), 0.007_585_081_658_562_41) < 1e-11);
        assert!(rel(ml_one(0.3, -20.0).unwrap(), 0.037_406_226_213_884_5) < 1e-12);
    }

    #[test]
    fn integral_route_handles_strong_endpoint_singularity() {
        // α - β close to -1: u^{α-β} is barely integrable at 0.
        let (a, b, z) = (0.2, 0.875, -2.0);
        let lhs = ml_two(a, b, z).unwrap();
        let rhs = recip_gamma(b) + z * ml_two(a, a + b, z).unwrap();
        assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
        let lhs = ml_two(0.2, 1.15, -3.0).unwrap();
        let rhs = recip_gamma(1.15) - 3.0 * ml_two(0.2, 1.35, -3.0).unwrap();
        assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(ml_one(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(ml_one(-0.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(ml_one(2.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(ml_two(0.5, 0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(ml_one(0.5, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn reports_unreachable_accuracy() {
        // Oscillatory regime 1 < α < 2 at large |z| cancels beyond repair.
        assert!(matches!(ml_one(1.5, -50.0), Err(Error::NonConvergence(_))));
    }

    #[test]
    fn complex_argument() {
        // E_1(iπ) = -1
        let v = ml_one_complex(1.0, Complex::new(0.0, std::f64::consts::PI)).unwrap();
        assert!((v.re + 1.0).abs() < 1e-12 && v.im.abs() < 1e-12);
        // E_2(-z²) = cos z on the real axis, and E_2(z) = cosh(√z) for complex z.
        let z = Complex::new(0.3, 0.4);
        let v = ml_one_complex(2.0, z).unwrap();
        let want = z.sqrt().cosh();
        assert!((v - want).norm() < 1e-12);
    }

    #[test]
    fn single_precision_evaluation() {
        let v = ml_one(0.5f32, 1.0).unwrap();
        assert!((v - 5.008_98).abs() < 1e-4);
    }
}
