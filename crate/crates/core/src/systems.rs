//! Catalog of benchmark systems, equilibrium search and Jacobian spectra.
//!
//! | name    | equations                                                       |
//! |---------|-----------------------------------------------------------------|
//! | lorenz  | σ(y - x), x(ρ - z) - y, xy - βz                                 |
//! | duffing | D^α x + δ D^{β'} x + γ x + β x³ = F cos(ωt)                     |
//! | chen    | a(y - x), (c - a)x - xz + cy, xy - bz                           |
//! | rossler | -y - z, x + ay, b + z(x - c)                                    |
//! | chua    | a(y - h(x)), x - y + z, -by;  h(x) = m1 x + ½(m0 - m1)(|x+1| - |x-1|) |
//!
//! The Duffing oscillator uses the symbol β twice in its usual statement
//! (derivative order and cubic stiffness); here they are `order_beta` and
//! `cubic_coeff`. It is converted to a commensurate chain of order 0.1
//! whose analysis frame is (x, D^{β'} x).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::real::Real;
use crate::solvers::{multi_term_to_system, MultiTermSpec, SystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkName {
    Lorenz,
    Duffing,
    Chen,
    Rossler,
    Chua,
}

impl BenchmarkName {
    pub const ALL: [BenchmarkName; 5] =
        [Self::Lorenz, Self::Duffing, Self::Chen, Self::Rossler, Self::Chua];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Lorenz => "lorenz",
            Self::Duffing => "duffing",
            Self::Chen => "chen",
            Self::Rossler => "rossler",
            Self::Chua => "chua",
        }
    }

    pub fn default_params(self) -> &'static [(&'static str, f64)] {
        match self {
            Self::Lorenz => &[("sigma", 10.0), ("rho", 28.0), ("beta", 8.0 / 3.0)],
            Self::Duffing => &[
                ("delta", 0.2),
                ("gamma", 1.0),
                ("cubic_coeff", 5.0),
                ("forcing", 0.3),
                ("omega", 1.2),
                ("order_beta", 0.8),
            ],
            Self::Chen => &[("a", 35.0), ("b", 3.0), ("c", 28.0)],
            Self::Rossler => &[("a", 0.2), ("b", 0.2), ("c", 5.7)],
            Self::Chua => &[("a", 9.8), ("b", 14.87), ("m0", -1.27), ("m1", -0.68)],
        }
    }

    /// Default fractional order (the leading order α for Duffing).
    pub fn default_alpha(self) -> f64 {
        match self {
            Self::Lorenz => 0.995,
            Self::Duffing => 0.9,
            Self::Chen => 0.9,
            Self::Rossler => 0.95,
            Self::Chua => 0.98,
        }
    }

    /// Initial state of the physical variables (x(0) only for Duffing).
    pub fn default_initial_state(self) -> &'static [f64] {
        match self {
            Self::Lorenz => &[1.0, 1.0, 1.0],
            Self::Duffing => &[0.5],
            Self::Chen => &[-3.0, 2.0, 20.0],
            Self::Rossler => &[1.0, 1.0, 0.0],
            Self::Chua => &[0.1, 0.0, 0.0],
        }
    }
}

impl fmt::Display for BenchmarkName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchmarkName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_lowercase().as_str() {
            "lorenz" => Ok(Self::Lorenz),
            "duffing" => Ok(Self::Duffing),
            "chen" => Ok(Self::Chen),
            "rossler" | "rössler" => Ok(Self::Rossler),
            "chua" => Ok(Self::Chua),
            other => Err(Error::UnknownSystem(other.to_owned())),
        }
    }
}

/// A catalog system together with its parameter values and order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkId {
    pub name: BenchmarkName,
    pub params: BTreeMap<String, f64>,
    pub alpha: f64,
}

impl BenchmarkId {
    pub fn new(name: BenchmarkName) -> Self {
        let params = name.default_params().iter().map(|&(k, v)| (k.to_owned(), v)).collect();
        Self { name, params, alpha: name.default_alpha() }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(Self::new(name.parse()?))
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Result<Self> {
        match self.params.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(self)
            }
            None => Err(Error::Parameter(format!(
                "`{}` has no parameter `{key}` (known: {})",
                self.name,
                self.params.keys().cloned().collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn param(&self, key: &str) -> f64 {
        self.params[key]
    }

    /// Initial state of the simulated system (the full chain for Duffing).
    pub fn initial_state(&self) -> Vec<f64> {
        let base = self.name.default_initial_state();
        match self.name {
            BenchmarkName::Duffing => {
                let mut y = vec![0.0; duffing_chain_dim(self)];
                y[0] = base[0];
                y
            }
            _ => base.to_vec(),
        }
    }

    /// Catalog line: `name  dim  default-alpha  param=value ...`.
    pub fn describe(&self) -> String {
        let dim = match self.name {
            BenchmarkName::Duffing => duffing_chain_dim(self),
            _ => 3,
        };
        let params: Vec<String> = self
            .name
            .default_params()
            .iter()
            .map(|&(k, _)| format!("{k}={}", self.params[k]))
            .collect();
        format!("{}  {}  {}  {}", self.name, dim, self.alpha, params.join(" "))
    }

    fn validate(&self) -> Result<()> {
        if let Some((k, v)) = self.params.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Parameter(format!("{k} = {v} is not finite")));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::Parameter(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        let positive: &[&str] = match self.name {
            BenchmarkName::Lorenz => &["sigma", "beta"],
            BenchmarkName::Chen => &["a", "b"],
            BenchmarkName::Rossler => &["a"],
            BenchmarkName::Chua => &["a", "b"],
            BenchmarkName::Duffing => &["order_beta"],
        };
        for &k in positive {
            if !(self.params[k] > 0.0) {
                return Err(Error::Parameter(format!("{} requires {k} > 0, got {}", self.name, self.params[k])));
            }
        }
        if self.name == BenchmarkName::Duffing && self.params["order_beta"] >= self.alpha {
            return Err(Error::Parameter(format!(
                "duffing requires order_beta < alpha, got {} >= {}",
                self.params["order_beta"], self.alpha
            )));
        }
        Ok(())
    }

    /// Closed-form equilibria where they exist (all catalog systems but Duffing).
    pub fn closed_form_equilibria(&self) -> Option<Vec<Vec<f64>>> {
        let p = |k: &str| self.params[k];
        match self.name {
            BenchmarkName::Lorenz => {
                let (rho, beta) = (p("rho"), p("beta"));
                let mut eq = vec![vec![0.0, 0.0, 0.0]];
                if rho > 1.0 {
                    let r = (beta * (rho - 1.0)).sqrt();
                    eq.push(vec![r, r, rho - 1.0]);
                    eq.push(vec![-r, -r, rho - 1.0]);
                }
                Some(eq)
            }
            BenchmarkName::Chen => {
                let (a, b, c) = (p("a"), p("b"), p("c"));
                let mut eq = vec![vec![0.0, 0.0, 0.0]];
                let z = 2.0 * c - a;
                if z > 0.0 {
                    let r = (b * z).sqrt();
                    eq.push(vec![r, r, z]);
                    eq.push(vec![-r, -r, z]);
                }
                Some(eq)
            }
            BenchmarkName::Rossler => {
                // y = -z, x = a z, a z² - c z + b = 0
                let (a, b, c) = (p("a"), p("b"), p("c"));
                let disc = c * c - 4.0 * a * b;
                if disc < 0.0 {
                    return Some(vec![]);
                }
                Some(
                    [-1.0, 1.0]
                        .iter()
                        .map(|s| {
                            let z = (c + s * disc.sqrt()) / (2.0 * a);
                            vec![a * z, -z, z]
                        })
                        .collect(),
                )
            }
            BenchmarkName::Chua => {
                // y = 0, z = -x, h(x) = 0
                let (m0, m1) = (p("m0"), p("m1"));
                let mut eq = vec![vec![0.0, 0.0, 0.0]];
                if m1 != 0.0 {
                    let x = (m1 - m0) / m1;
                    if x.abs() >= 1.0 {
                        eq.push(vec![x, 0.0, -x]);
                        eq.push(vec![-x, 0.0, x]);
                    }
                }
                Some(eq)
            }
            BenchmarkName::Duffing => None,
        }
    }
}

fn duffing_chain_dim(id: &BenchmarkId) -> usize {
    duffing_spec::<f64>(id).layout().map(|l| l.dim).unwrap_or(0)
}

/// Chua's piecewise-linear characteristic.
pub fn chua_h(x: f64, m0: f64, m1: f64) -> f64 {
    m1 * x + 0.5 * (m0 - m1) * ((x + 1.0).abs() - (x - 1.0).abs())
}

fn duffing_spec<T: Real>(id: &BenchmarkId) -> MultiTermSpec<T> {
    let p = |k: &str| T::lit(id.params[k]);
    let (gamma, cubic, forcing, omega) = (p("gamma"), p("cubic_coeff"), p("forcing"), p("omega"));
    let three = T::lit(3.0);
    MultiTermSpec {
        name: "duffing".into(),
        orders: vec![T::lit(id.alpha), p("order_beta")],
        coefficients: vec![T::one(), p("delta")],
        nonlinearity: Arc::new(move |t: T, y: &[T]| {
            forcing * (omega * t).cos() - gamma * y[0] - cubic * y[0] * y[0] * y[0]
        }),
        gradient: Some(Arc::new(move |_t: T, y: &[T], g: &mut [T]| {
            g.fill(T::zero());
            g[0] = -gamma - three * cubic * y[0] * y[0];
        })),
        base_order: Some(T::lit(0.1)),
        time_dependent: true,
    }
}

/// Builds the catalog system with its analytic Jacobian.
pub fn make_system<T: Real>(id: &BenchmarkId) -> Result<SystemSpec<T>> {
    id.validate()?;
    let p = |k: &str| T::lit(id.params[k]);
    let alpha = T::lit(id.alpha);
    let system = match id.name {
        BenchmarkName::Lorenz => {
            let (sigma, rho, beta) = (p("sigma"), p("rho"), p("beta"));
            SystemSpec::commensurate("lorenz", 3, alpha, move |_t, x: &[T], o: &mut [T]| {
                o[0] = sigma * (x[1] - x[0]);
                o[1] = x[0] * (rho - x[2]) - x[1];
                o[2] = x[0] * x[1] - beta * x[2];
            })?
            .with_jacobian(move |_t, x: &[T], j: &mut [T]| {
                j.copy_from_slice(&[
                    -sigma, sigma, T::zero(),
                    rho - x[2], -T::one(), -x[0],
                    x[1], x[0], -beta,
                ]);
            })
        }
        BenchmarkName::Chen => {
            let (a, b, c) = (p("a"), p("b"), p("c"));
            SystemSpec::commensurate("chen", 3, alpha, move |_t, x: &[T], o: &mut [T]| {
                o[0] = a * (x[1] - x[0]);
                o[1] = (c - a) * x[0] - x[0] * x[2] + c * x[1];
                o[2] = x[0] * x[1] - b * x[2];
            })?
            .with_jacobian(move |_t, x: &[T], j: &mut [T]| {
                j.copy_from_slice(&[
                    -a, a, T::zero(),
                    c - a - x[2], c, -x[0],
                    x[1], x[0], -b,
                ]);
            })
        }
        BenchmarkName::Rossler => {
            let (a, b, c) = (p("a"), p("b"), p("c"));
            SystemSpec::commensurate("rossler", 3, alpha, move |_t, x: &[T], o: &mut [T]| {
                o[0] = -x[1] - x[2];
                o[1] = x[0] + a * x[1];
                o[2] = b + x[2] * (x[0] - c);
            })?
            .with_jacobian(move |_t, x: &[T], j: &mut [T]| {
                j.copy_from_slice(&[
                    T::zero(), -T::one(), -T::one(),
                    T::one(), a, T::zero(),
                    x[2], T::zero(), x[0] - c,
                ]);
            })
        }
        BenchmarkName::Chua => {
            let (a, b, m0, m1) = (p("a"), p("b"), p("m0"), p("m1"));
            let half = T::lit(0.5);
            let h = move |x: T| m1 * x + half * (m0 - m1) * ((x + T::one()).abs() - (x - T::one()).abs());
            // Right-sided slope at the breakpoints.
            let dh = move |x: T| if x >= -T::one() && x < T::one() { m0 } else { m1 };
            SystemSpec::commensurate("chua", 3, alpha, move |_t, x: &[T], o: &mut [T]| {
                o[0] = a * (x[1] - h(x[0]));
                o[1] = x[0] - x[1] + x[2];
                o[2] = -b * x[1];
            })?
            .with_jacobian(move |_t, x: &[T], j: &mut [T]| {
                j.copy_from_slice(&[
                    -a * dh(x[0]), a, T::zero(),
                    T::one(), -T::one(), T::one(),
                    T::zero(), -b, T::zero(),
                ]);
            })
            .with_kinks(vec![(0, -T::one()), (0, T::one())])
        }
        BenchmarkName::Duffing => {
            let spec = duffing_spec::<T>(id);
            let layout = spec.layout()?;
            let beta_slot = layout.term_index[1];
            multi_term_to_system(&spec)?.with_observables(vec![0, beta_slot])?
        }
    };
    Ok(system)
}

/// An equilibrium point with the spectrum of the Jacobian there.
#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium<T> {
    pub point: Vec<T>,
    pub eigenvalues: Vec<Complex<T>>,
    /// Euclidean norm of the field at `point`.
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSearch<T> {
    pub equilibria: Vec<Equilibrium<T>>,
    /// Guesses whose Newton iteration did not converge.
    pub dropped: usize,
}

/// Accepted residual for an equilibrium.
pub const EQUILIBRIUM_TOL: f64 = 1e-9;
const DEDUP_DIST: f64 = 1e-6;
const KINK_BAND: f64 = 1e-9;
const KINK_NUDGE: f64 = 1e-8;

/// Default starting points: a 3-point lattice {-20, 0, 20} per axis for
/// systems of dimension ≤ 3, otherwise the origin and ±10 along each axis.
pub fn default_guesses<T: Real>(dim: usize) -> Vec<Vec<T>> {
    let levels = [-20.0, 0.0, 20.0];
    if dim <= 3 {
        let total = 3usize.pow(dim as u32);
        (0..total)
            .map(|mut code| {
                (0..dim)
                    .map(|_| {
                        let v = levels[code % 3];
                        code /= 3;
                        T::lit(v)
                    })
                    .collect()
            })
            .collect()
    } else {
        let mut g = vec![vec![T::zero(); dim]];
        for i in 0..dim {
            for s in [-10.0, 10.0] {
                let mut v = vec![T::zero(); dim];
                v[i] = T::lit(s);
                g.push(v);
            }
        }
        g
    }
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

fn newton<T: Real>(system: &SystemSpec<T>, guess: &[T]) -> Option<Vec<T>> {
    let t = T::zero();
    let tol = T::lit(EQUILIBRIUM_TOL);
    let mut x = guess.to_vec();
    let mut f = system.field_at(t, &x);
    let mut res = norm(&f);
    for _ in 0..200 {
        if res < tol * T::lit(1e-3) {
            break;
        }
        let jac = system.jacobian_at(t, &x).ok()?;
        let neg_f: Vec<T> = f.iter().map(|&v| -v).collect();
        let step = linalg::solve(&jac, &neg_f).ok()?;
        let mut lambda = T::one();
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial: Vec<T> = x.iter().zip(&step).map(|(&a, &s)| a + lambda * s).collect();
            for &(i, c) in system.kinks() {
                if (trial[i] - c).abs() < T::lit(KINK_BAND) {
                    let dir = if step[i] >= T::zero() { T::one() } else { -T::one() };
                    trial[i] = c + dir * T::lit(KINK_NUDGE);
                }
            }
            let ft = system.field_at(t, &trial);
            let rt = norm(&ft);
            if rt.is_finite() && rt < res * (T::one() - T::lit(1e-4) * lambda) {
                x = trial;
                f = ft;
                res = rt;
                accepted = true;
                break;
            }
            lambda = lambda * T::lit(0.5);
        }
        if !accepted {
            break;
        }
    }
    (res < tol).then_some(x)
}

/// Damped Newton from each guess; de-duplicated converged equilibria with
/// their Jacobian eigenvalues. Time-dependent fields are frozen at t = 0.
pub fn find_equilibria<T: Real>(system: &SystemSpec<T>, guesses: &[Vec<T>]) -> Result<EquilibriumSearch<T>> {
    if guesses.is_empty() {
        return Err(Error::EmptyInput("no equilibrium guesses".into()));
    }
    if !system.has_jacobian() {
        return Err(Error::Config(format!("system `{}` has no Jacobian", system.name())));
    }
    let mut equilibria: Vec<Equilibrium<T>> = Vec::new();
    let mut dropped = 0;
    for guess in guesses {
        if guess.len() != system.dim() {
            return Err(Error::Config(format!(
                "guess has {} components, system has {}",
                guess.len(),
                system.dim()
            )));
        }
        let Some(point) = newton(system, guess) else {
            dropped += 1;
            continue;
        };
        let duplicate = equilibria.iter().any(|e| {
            let d: Vec<T> = e.point.iter().zip(&point).map(|(&a, &b)| a - b).collect();
            norm(&d) <= T::lit(DEDUP_DIST)
        });
        if duplicate {
            continue;
        }
        let residual = norm(&system.field_at(T::zero(), &point));
        let eigenvalues = jacobian_eigenvalues(system, &point)?;
        equilibria.push(Equilibrium { point, eigenvalues, residual });
    }
    Ok(EquilibriumSearch { equilibria, dropped })
}

/// Eigenvalues of the Jacobian at `point` (t = 0), by descending real part.
pub fn jacobian_eigenvalues<T: Real>(system: &SystemSpec<T>, point: &[T]) -> Result<Vec<Complex<T>>> {
    let jac = system.jacobian_at(T::zero(), point)?;
    linalg::eigenvalues(&jac, system.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorenz() -> SystemSpec<f64> {
        make_system(&BenchmarkId::new(BenchmarkName::Lorenz)).unwrap()
    }

    #[test]
    fn lorenz_field_by_substitution() {
        let f = lorenz().field_at(0.0, &[1.0, 1.0, 1.0]);
        assert_eq!(f[0], 0.0);
        assert_eq!(f[1], 26.0);
        assert!((f[2] + 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn chua_characteristic() {
        let id = BenchmarkId::new(BenchmarkName::Chua);
        let (m0, m1) = (id.param("m0"), id.param("m1"));
        assert_eq!(chua_h(0.0, m0, m1), 0.0);
        assert!((chua_h(2.0, m0, m1) - (-1.95)).abs() < 1e-14);
        assert!((chua_h(-2.0, m0, m1) - 1.95).abs() < 1e-14);
        assert!((chua_h(0.5, m0, m1) - 0.5 * m0).abs() < 1e-14);
        let sys = make_system::<f64>(&id).unwrap();
        let f = sys.field_at(0.0, &[2.0, 0.0, 0.0]);
        assert!((f[0] - 9.8 * 1.95).abs() < 1e-12);
    }

    #[test]
    fn rossler_field_at_origin() {
        let sys = make_system::<f64>(&BenchmarkId::new(BenchmarkName::Rossler)).unwrap();
        assert_eq!(sys.field_at(0.0, &[0.0, 0.0, 0.0]), vec![0.0, 0.0, 0.2]);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(BenchmarkId::parse("henon"), Err(Error::UnknownSystem(_))));
        let id = BenchmarkId::new(BenchmarkName::Lorenz);
        assert!(id.clone().with_param("gamma", 1.0).is_err());
        let zero_beta = id.clone().with_param("beta", 0.0).unwrap();
        assert!(matches!(make_system::<f64>(&zero_beta), Err(Error::Parameter(_))));
        assert!(make_system::<f64>(&id.clone().with_alpha(1.3)).is_err());
        let duff = BenchmarkId::new(BenchmarkName::Duffing).with_param("order_beta", 0.95).unwrap();
        assert!(make_system::<f64>(&duff).is_err());
    }

    #[test]
    fn duffing_is_a_nine_dimensional_chain() {
        let id = BenchmarkId::new(BenchmarkName::Duffing);
        let sys = make_system::<f64>(&id).unwrap();
        assert_eq!(sys.dim(), 9);
        assert!((sys.commensurate_order().unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(sys.observables(), Some(&[0, 8][..]));
        assert!(!sys.is_autonomous());
        assert_eq!(id.initial_state().len(), 9);
        // top equation: D^0.9 x = F cos(ωt) - γx - βx³ - δ D^0.8 x
        let mut y = vec![0.0; 9];
        y[0] = 0.5;
        y[8] = 0.1;
        let f = sys.field_at(0.0, &y);
        let want = 0.3 - 0.5 - 5.0 * 0.125 - 0.2 * 0.1;
        assert!((f[8] - want).abs() < 1e-14);
    }

    #[test]
    fn lorenz_equilibria() {
        let sys = lorenz();
        let found = find_equilibria(&sys, &default_guesses(3)).unwrap();
        assert_eq!(found.equilibria.len(), 3);
        let r = 72f64.sqrt();
        for want in [[0.0, 0.0, 0.0], [r, r, 27.0], [-r, -r, 27.0]] {
            assert!(
                found.equilibria.iter().any(|e| e.point.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-8)),
                "missing {want:?}"
            );
        }
        assert!(found.equilibria.iter().all(|e| e.residual < EQUILIBRIUM_TOL));
    }

    #[test]
    fn chen_equilibria() {
        let sys = make_system::<f64>(&BenchmarkId::new(BenchmarkName::Chen)).unwrap();
        let found = find_equilibria(&sys, &default_guesses(3)).unwrap();
        let r = 63f64.sqrt();
        assert_eq!(found.equilibria.len(), 3);
        for want in [[0.0, 0.0, 0.0], [r, r, 21.0], [-r, -r, 21.0]] {
            assert!(found.equilibria.iter().any(|e| e.point.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-8)));
        }
    }

    #[test]
    fn zero_field_fixes_every_guess() {
        let sys = SystemSpec::commensurate("zero", 2, 0.5, |_, _, o: &mut [f64]| o.fill(0.0))
            .unwrap()
            .with_jacobian(|_, _, j: &mut [f64]| j.fill(0.0));
        let found = find_equilibria(&sys, &[vec![3.0, 4.0]]).unwrap();
        assert_eq!(found.equilibria[0].point, vec![3.0, 4.0]);
    }

    #[test]
    fn diagonal_spectrum() {
        let sys = SystemSpec::commensurate("diag", 2, 1.0, |_, x: &[f64], o: &mut [f64]| {
            o[0] = -x[0];
            o[1] = -2.0 * x[1];
        })
        .unwrap()
        .with_jacobian(|_, _, j: &mut [f64]| j.copy_from_slice(&[-1.0, 0.0, 0.0, -2.0]));
        let e = jacobian_eigenvalues(&sys, &[0.0, 0.0]).unwrap();
        assert_eq!(e, vec![Complex::new(-1.0, 0.0), Complex::new(-2.0, 0.0)]);
    }

    #[test]
    fn closed_forms_are_zeros_of_the_field() {
        for name in BenchmarkName::ALL {
            let id = BenchmarkId::new(name);
            let sys = make_system::<f64>(&id).unwrap();
            for p in id.closed_form_equilibria().unwrap_or_default() {
                assert!(norm(&sys.field_at(0.0, &p)) < 1e-12, "{name}: {p:?}");
            }
        }
    }
}
