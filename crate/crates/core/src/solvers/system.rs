use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::real::Real;

/// Vector field or Jacobian callback: `(t, x, out)`. Jacobians are written
/// row-major into an `n × n` buffer.
pub type VectorFn<T> = Arc<dyn Fn(T, &[T], &mut [T]) + Send + Sync>;

/// Additive perturbation `eps · g(t, x)`.
#[derive(Clone)]
pub struct Perturbation<T> {
    pub eps: T,
    field: VectorFn<T>,
    jacobian: Option<VectorFn<T>>,
}

/// A Caputo fractional system `D^{α_i} x_i = f_i(t, x) + eps · g_i(t, x)`.
#[derive(Clone)]
pub struct SystemSpec<T> {
    name: String,
    alpha: Vec<T>,
    field: VectorFn<T>,
    perturbation: Option<Perturbation<T>>,
    jacobian: Option<VectorFn<T>>,
    autonomous: bool,
    observables: Option<Vec<usize>>,
    kinks: Vec<(usize, T)>,
}

impl<T: Real> fmt::Debug for SystemSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SystemSpec")
            .field("name", &self.name)
            .field("alpha", &self.alpha)
            .field("perturbed", &self.perturbation.is_some())
            .field("jacobian", &self.jacobian.is_some())
            .field("autonomous", &self.autonomous)
            .field("observables", &self.observables)
            .finish()
    }
}

impl<T: Real> SystemSpec<T> {
    /// System with one order per component; the dimension is `alpha.len()`.
    pub fn new<F>(name: impl Into<String>, alpha: Vec<T>, field: F) -> Result<Self>
    where
        F: Fn(T, &[T], &mut [T]) + Send + Sync + 'static,
    {
        if alpha.is_empty() {
            return Err(Error::Config("system dimension must be positive".into()));
        }
        if let Some(a) = alpha.iter().find(|&&a| !(a > T::zero() && a <= T::one())) {
            return Err(Error::Domain(format!("fractional orders must lie in (0, 1], got {a}")));
        }
        Ok(Self {
            name: name.into(),
            alpha,
            field: Arc::new(field),
            perturbation: None,
            jacobian: None,
            autonomous: true,
            observables: None,
            kinks: Vec::new(),
        })
    }

    /// Commensurate system of order `alpha` in `dim` components.
    pub fn commensurate<F>(name: impl Into<String>, dim: usize, alpha: T, field: F) -> Result<Self>
    where
        F: Fn(T, &[T], &mut [T]) + Send + Sync + 'static,
    {
        Self::new(name, vec![alpha; dim], field)
    }

    pub fn with_jacobian<J>(mut self, jacobian: J) -> Self
    where
        J: Fn(T, &[T], &mut [T]) + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(jacobian));
        self
    }

    /// Adds `eps · g(t, x)`; `g_jacobian` keeps the system differentiable.
    pub fn with_perturbation<G>(mut self, eps: T, g: G, g_jacobian: Option<VectorFn<T>>) -> Self
    where
        G: Fn(T, &[T], &mut [T]) + Send + Sync + 'static,
    {
        self.perturbation = Some(Perturbation { eps, field: Arc::new(g), jacobian: g_jacobian });
        self.autonomous = false;
        self
    }

    /// Marks the field as explicitly time dependent.
    pub fn with_time_dependence(mut self) -> Self {
        self.autonomous = false;
        self
    }

    /// Restricts Lyapunov analysis to a subset of state components.
    pub fn with_observables(mut self, components: Vec<usize>) -> Result<Self> {
        if components.is_empty() || components.iter().any(|&c| c >= self.dim()) {
            return Err(Error::Config(format!(
                "observable components {components:?} out of range for dimension {}",
                self.dim()
            )));
        }
        self.observables = Some(components);
        Ok(self)
    }

    /// Declares hyperplanes `x[component] = value` where the field is not
    /// differentiable.
    pub fn with_kinks(mut self, kinks: Vec<(usize, T)>) -> Self {
        self.kinks = kinks;
        self
    }

    pub fn kinks(&self) -> &[(usize, T)] {
        &self.kinks
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    /// The common order, when all components share one.
    pub fn commensurate_order(&self) -> Option<T> {
        let a = self.alpha[0];
        self.alpha.iter().all(|&b| b == a).then_some(a)
    }

    pub fn is_autonomous(&self) -> bool {
        self.autonomous
    }

    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some()
            && self.perturbation.as_ref().is_none_or(|p| p.eps == T::zero() || p.jacobian.is_some())
    }

    pub fn observables(&self) -> Option<&[usize]> {
        self.observables.as_deref()
    }

    pub fn perturbation_eps(&self) -> T {
        self.perturbation.as_ref().map_or(T::zero(), |p| p.eps)
    }

    /// Evaluates the right-hand side into `out`.
    pub fn eval(&self, t: T, x: &[T], out: &mut [T]) {
        (self.field)(t, x, out);
        if let Some(p) = &self.perturbation {
            if p.eps != T::zero() {
                let mut g = vec![T::zero(); out.len()];
                (p.field)(t, x, &mut g);
                for (o, gi) in out.iter_mut().zip(g) {
                    *o = *o + p.eps * gi;
                }
            }
        }
    }

    pub fn field_at(&self, t: T, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim()];
        self.eval(t, x, &mut out);
        out
    }

    /// Writes the row-major Jacobian of the right-hand side into `out`.
    pub fn eval_jacobian(&self, t: T, x: &[T], out: &mut [T]) -> Result<()> {
        let jac = self
            .jacobian
            .as_ref()
            .ok_or_else(|| Error::Config(format!("system `{}` has no Jacobian", self.name)))?;
        jac(t, x, out);
        if let Some(p) = &self.perturbation {
            if p.eps != T::zero() {
                let gj = p.jacobian.as_ref().ok_or_else(|| {
                    Error::Config(format!("perturbation of `{}` has no Jacobian", self.name))
                })?;
                let mut g = vec![T::zero(); out.len()];
                gj(t, x, &mut g);
                for (o, gi) in out.iter_mut().zip(g) {
                    *o = *o + p.eps * gi;
                }
            }
        }
        Ok(())
    }

    pub fn jacobian_at(&self, t: T, x: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        let mut out = vec![T::zero(); n * n];
        self.eval_jacobian(t, x, &mut out)?;
        Ok(out)
    }
}
