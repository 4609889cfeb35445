//! Gamma function family (Lanczos approximation, g = 7, n = 9).

use crate::real::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos series A(x) for the shifted argument x = z - 1.
fn lanczos_sum<T: Real>(x: T) -> T {
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::from_usize_lossy(i));
    }
    acc
}

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.floor()
}

/// (n-1)! for small positive integers n, exact in f64 up to n = 23.
fn small_factorial<T: Real>(x: T) -> Option<T> {
    if x >= T::one() && x <= T::lit(23.0) && x == x.floor() {
        let n = x.to_usize()?;
        Some((1..n).fold(T::one(), |acc, k| acc * T::from_usize_lossy(k)))
    } else {
        None
    }
}

/// Γ(x). Returns NaN at the poles (non-positive integers).
pub(crate) fn gamma<T: Real>(x: T) -> T {
    if x.is_nan() || is_nonpositive_integer(x) {
        return T::nan();
    }
    if let Some(f) = small_factorial(x) {
        return f;
    }
    let half = T::lit(0.5);
    if x < half {
        // Reflection: Γ(x) Γ(1 - x) = π / sin(πx).
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    if x > T::lit(20.0) {
        // Upward recurrence from [10, 11): the rounding error of powf in the
        // Lanczos form grows with x, that of the product only like √n.
        let start = x - (x - T::lit(10.0)).floor();
        let mut factor = start;
        let mut prod = T::one();
        while factor < x - T::lit(0.5) {
            prod = prod * factor;
            factor = factor + T::one();
        }
        return prod * gamma(start);
    }
    let x1 = x - T::one();
    let t = x1 + T::lit(LANCZOS_G) + half;
    // t^(x - 1/2) is split in two halves so that intermediate powers stay finite.
    let half_pow = t.powf((x1 + half) * half);
    let sqrt_two_pi = (T::lit(2.0) * T::PI()).sqrt();
    sqrt_two_pi * (half_pow * (-t).exp()) * half_pow * lanczos_sum(x1)
}

/// ln |Γ(x)|.
pub(crate) fn ln_gamma<T: Real>(x: T) -> T {
    if x.is_nan() || is_nonpositive_integer(x) {
        return T::infinity();
    }
    let half = T::lit(0.5);
    if x < half {
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let x1 = x - T::one();
    let t = x1 + T::lit(LANCZOS_G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (x1 + half) * t.ln() - t + lanczos_sum(x1).ln()
}

/// 1/Γ(x), which is entire: exactly zero at the poles of Γ.
pub(crate) fn recip_gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::zero();
    }
    if x < T::lit(0.5) {
        let pi = T::PI();
        return (pi * x).sin() * gamma(T::one() - x) / pi;
    }
    if x > T::lit(170.0) {
        return (-ln_gamma(x)).exp();
    }
    T::one() / gamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_factorials_and_half_integers() {
        let mut fact = 1.0f64;
        for n in 1..=20u32 {
            let g = gamma(f64::from(n));
            assert!((g - fact).abs() / fact < 1e-14, "Γ({n}) = {g}, want {fact}");
            fact *= f64::from(n);
        }
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5f64) - sqrt_pi).abs() < 1e-14);
        assert!((gamma(-0.5f64) + 2.0 * sqrt_pi).abs() < 1e-13);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn matches_high_precision_values_on_positive_axis() {
        // (x, Γ(x), ln Γ(x)) from 30-digit arithmetic.
        let table: [(f64, f64, f64); 11] = [
            (0.013, 76.358567751324649, 4.33544024215105751),
            (0.37, 2.40355002007865328, 0.876946819484879302),
            (0.999, 1.00057820562935865, 0.000578038532891380238),
            (1.5, 0.886226925452758014, -0.120782237635245222),
            (2.718, 1.56711274176688277, 0.449234908307726738),
            (7.25, 1155.38101391998969, 7.05218545073853944),
            (15.183, 142381531928.26946, 25.6817761359986532),
            (33.3, 7.48757759652263233e+35, 82.603723581654943),
            (77.7, 3.93891963842931649e+112, 259.260436897597985),
            (120.01, 5.84771872090537288e+196, 453.072729849783275),
            (170.5, 5.56209241455999961e+305, 704.004427734204671),
        ];
        for (x, g, lg) in table {
            let got = gamma(x);
            assert!(((got - g) / g).abs() < 1e-13, "Γ({x}) = {got}, want {g}");
            assert!((ln_gamma(x) - lg).abs() < 1e-13 * lg.abs().max(1.0), "lnΓ({x})");
        }
    }

    #[test]
    fn loosely_agrees_with_statrs() {
        // statrs overflows slightly before 171.
        let mut x = 0.013f64;
        while x < 160.0 {
            let want = statrs::function::gamma::gamma(x);
            assert!(((gamma(x) - want) / want).abs() < 1e-12, "x = {x}");
            x += 0.37;
        }
    }

    #[test]
    fn reciprocal_vanishes_at_poles() {
        for n in 0..6 {
            assert_eq!(recip_gamma(-(n as f64)), 0.0);
        }
        assert!(gamma(-3.0f64).is_nan());
        assert!((recip_gamma(200.5f64) - 1.0 / statrs::function::gamma::gamma(200.5)).abs() < 1e-300);
    }

    #[test]
    fn works_in_single_precision() {
        assert!((gamma(5.0f32) - 24.0).abs() < 1e-4);
    }
}
