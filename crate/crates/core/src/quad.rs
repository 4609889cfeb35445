//! Double-exponential quadrature rules used by the Mittag-Leffler integral route.

use crate::real::Real;

const MAX_LEVEL: usize = 10;
const T_MAX: f64 = 4.5;
// exp-sinh reaches down to offsets of about e^{-520} on the left, enough for
// integrable algebraic singularities at the finite end.
const T_MIN_EXP_SINH: f64 = -6.5;

/// Result of a quadrature: value and the difference between the last two refinements.
pub(crate) struct Quadrature<T> {
    pub value: T,
    pub error: T,
}

fn refine<T: Real>(mut level_sum: impl FnMut(T) -> T, tol: T) -> Quadrature<T> {
    let mut step = T::one();
    let mut prev = level_sum(step);
    let mut error = T::infinity();
    for _ in 0..MAX_LEVEL {
        step = step * T::lit(0.5);
        let cur = level_sum(step);
        error = (cur - prev).abs();
        prev = cur;
        if error <= tol * cur.abs() {
            break;
        }
    }
    Quadrature { value: prev, error }
}

/// Tanh-sinh rule on `[a, b]`. The integrand receives `(x, x - a)` so that
/// singular factors at the left end can be evaluated without cancellation.
pub(crate) fn tanh_sinh<T: Real, F: Fn(T, T) -> T>(f: F, a: T, b: T, tol: T) -> Quadrature<T> {
    let width = b - a;
    let half_pi = T::FRAC_PI_2();
    let t_max = T::lit(T_MAX);
    refine(
        |step| {
            let mut sum = T::zero();
            let n = (t_max / step).to_usize().unwrap_or(0) as isize;
            for j in -n..=n {
                let t = step * T::lit(j as f64);
                let y = half_pi * t.sinh();
                // x - a = width / (1 + e^{-2y}) keeps full precision near a.
                let e = (-(y + y)).exp();
                let dist = width / (T::one() + e);
                if dist <= T::zero() || dist >= width {
                    continue;
                }
                let w = width * half_pi * t.cosh() / (T::lit(2.0) * y.cosh() * y.cosh());
                let v = f(a + dist, dist);
                if v.is_finite() && w.is_finite() {
                    sum = sum + w * v;
                }
            }
            sum * step
        },
        tol,
    )
}

/// Exp-sinh rule on `[a, ∞)`.
pub(crate) fn exp_sinh<T: Real, F: Fn(T) -> T>(f: F, a: T, tol: T) -> Quadrature<T> {
    let half_pi = T::FRAC_PI_2();
    refine(
        |step| {
            let mut sum = T::zero();
            let lo = (T::lit(T_MIN_EXP_SINH) / step).to_isize().unwrap_or(0);
            let hi = (T::lit(T_MAX) / step).to_isize().unwrap_or(0);
            for j in lo..=hi {
                let t = step * T::lit(j as f64);
                let offset = (half_pi * t.sinh()).exp();
                if !offset.is_finite() || offset <= T::zero() {
                    continue;
                }
                let w = half_pi * t.cosh() * offset;
                let v = f(a + offset);
                if v.is_finite() && w.is_finite() {
                    sum = sum + w * v;
                }
            }
            sum * step
        },
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let q = tanh_sinh(|_x: f64, d: f64| d.powf(-0.5), 0.0, 1.0, 1e-14);
        assert!((q.value - 2.0).abs() < 1e-12, "{}", q.value);
    }

    #[test]
    fn integrates_half_line() {
        // ∫_0^∞ e^{-x} dx = 1 and ∫_1^∞ x^{-2} dx = 1
        let q = exp_sinh(|x: f64| (-x).exp(), 0.0, 1e-14);
        assert!((q.value - 1.0).abs() < 1e-12, "{}", q.value);
        let q = exp_sinh(|x: f64| 1.0 / (x * x), 1.0, 1e-14);
        assert!((q.value - 1.0).abs() < 1e-10, "{}", q.value);
    }
}
