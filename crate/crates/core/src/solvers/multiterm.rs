//! Reduction of multi-term scalar equations
//!
//! ```text
//! Σ_i a_i D^{q_i} x(t) = g(t, x, D^γ x, D^{2γ} x, ...)
//! ```
//!
//! to a commensurate first-order system of order γ, where every q_i is an
//! integer multiple of γ. The state is the chain y_j = D^{jγ} x for
//! j = 0..m-1 with m γ = max q_i.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::real::Real;

use super::system::SystemSpec;

/// Scalar nonlinearity `g(t, chain)`.
pub type ScalarFn<T> = Arc<dyn Fn(T, &[T]) -> T + Send + Sync>;
/// Gradient of `g` with respect to the chain state.
pub type GradientFn<T> = Arc<dyn Fn(T, &[T], &mut [T]) + Send + Sync>;

#[derive(Clone)]
pub struct MultiTermSpec<T> {
    pub name: String,
    pub orders: Vec<T>,
    pub coefficients: Vec<T>,
    pub nonlinearity: ScalarFn<T>,
    pub gradient: Option<GradientFn<T>>,
    /// Chain granularity γ; found automatically when `None`.
    pub base_order: Option<T>,
    pub time_dependent: bool,
}

const MAX_DENOMINATOR: usize = 100;

fn is_integer<T: Real>(v: T) -> bool {
    (v - v.round()).abs() <= T::lit(1e-9).max(T::lit(64.0) * T::epsilon() * v.abs())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest γ = p/d with d ≤ 100 dividing every order.
pub fn commensurate_base<T: Real>(orders: &[T]) -> Result<T> {
    for d in 1..=MAX_DENOMINATOR {
        let df = T::from_usize_lossy(d);
        if orders.iter().all(|&q| is_integer(q * df)) {
            let g = orders
                .iter()
                .filter_map(|&q| (q * df).round().to_usize())
                .fold(0, gcd);
            if g == 0 {
                break;
            }
            return Ok(T::from_usize_lossy(g) / df);
        }
    }
    Err(Error::Incommensurate(format!(
        "orders {orders:?} have no common rational base with denominator <= {MAX_DENOMINATOR}"
    )))
}

/// Chain layout derived from a [`MultiTermSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChainLayout<T> {
    pub base_order: T,
    pub dim: usize,
    /// Chain index of each term's derivative, parallel to `orders`.
    pub term_index: Vec<usize>,
}

impl<T: Real> MultiTermSpec<T> {
    pub fn layout(&self) -> Result<ChainLayout<T>> {
        if self.orders.is_empty() || self.orders.len() != self.coefficients.len() {
            return Err(Error::Config("orders and coefficients must be non-empty and of equal length".into()));
        }
        if let Some(q) = self.orders.iter().find(|&&q| !(q >= T::zero()) || !q.is_finite()) {
            return Err(Error::Domain(format!("derivative orders must be non-negative, got {q}")));
        }
        let top = (0..self.orders.len())
            .max_by(|&i, &j| self.orders[i].partial_cmp(&self.orders[j]).unwrap())
            .unwrap();
        if !(self.orders[top] > T::zero()) {
            return Err(Error::Domain("the highest derivative order must be positive".into()));
        }
        if self.coefficients[top] == T::zero() {
            return Err(Error::Domain("the highest-order coefficient must be nonzero".into()));
        }
        let base = match self.base_order {
            Some(b) => b,
            None => commensurate_base(&self.orders)?,
        };
        if !(base > T::zero() && base <= T::one()) {
            return Err(Error::Incommensurate(format!("base order {base} must lie in (0, 1]")));
        }
        let mut term_index = Vec::with_capacity(self.orders.len());
        for &q in &self.orders {
            let r = q / base;
            if !is_integer(r) {
                return Err(Error::Incommensurate(format!("order {q} is not a multiple of {base}")));
            }
            term_index.push(r.round().to_usize().unwrap());
        }
        let dim = term_index[top];
        let tops = term_index.iter().filter(|&&j| j == dim).count();
        if tops > 1 {
            return Err(Error::Config("the highest order appears in more than one term".into()));
        }
        Ok(ChainLayout { base_order: base, dim, term_index })
    }

    /// Chain initial state from x(0), x'(0), ...: the k-th derivative sits at
    /// chain index k/γ when that is integral; all other entries start at zero.
    pub fn initial_state(&self, derivatives: &[T]) -> Result<Vec<T>> {
        let layout = self.layout()?;
        let mut y = vec![T::zero(); layout.dim];
        for (k, &v) in derivatives.iter().enumerate() {
            let r = T::from_usize_lossy(k) / layout.base_order;
            let idx = r.round().to_usize().unwrap_or(usize::MAX);
            if !is_integer(r) || idx >= layout.dim {
                if v != T::zero() {
                    return Err(Error::Config(format!("initial derivative of order {k} has no chain slot")));
                }
                continue;
            }
            y[idx] = v;
        }
        Ok(y)
    }
}

/// Converts a multi-term equation into a commensurate chain system.
pub fn multi_term_to_system<T: Real>(spec: &MultiTermSpec<T>) -> Result<SystemSpec<T>> {
    let layout = spec.layout()?;
    let m = layout.dim;
    let top = layout.term_index.iter().position(|&j| j == m).unwrap();
    let lead = spec.coefficients[top];
    let lower: Vec<(usize, T)> = layout
        .term_index
        .iter()
        .zip(&spec.coefficients)
        .enumerate()
        .filter(|&(i, _)| i != top)
        .map(|(_, (&j, &c))| (j, c))
        .collect();

    let g = spec.nonlinearity.clone();
    let lower_f = lower.clone();
    let field = move |t: T, y: &[T], out: &mut [T]| {
        out[..m - 1].copy_from_slice(&y[1..m]);
        let mut rhs = g(t, y);
        for &(j, c) in &lower_f {
            rhs = rhs - c * y[j];
        }
        out[m - 1] = rhs / lead;
    };
    let mut system = SystemSpec::commensurate(spec.name.clone(), m, layout.base_order, field)?;
    if let Some(grad) = spec.gradient.clone() {
        system = system.with_jacobian(move |t: T, y: &[T], jac: &mut [T]| {
            jac.fill(T::zero());
            for j in 0..m - 1 {
                jac[j * m + j + 1] = T::one();
            }
            let last = &mut jac[(m - 1) * m..];
            grad(t, y, last);
            for &(j, c) in &lower {
                last[j] = last[j] - c;
            }
            for v in last.iter_mut() {
                *v = *v / lead;
            }
        });
    }
    if spec.time_dependent {
        system = system.with_time_dependence();
    }
    Ok(system)
}
