//! Grünwald-Letnikov scheme for Caputo systems.
//!
//! With weights c_k = (-1)^k C(α, k), each step solves
//!
//! ```text
//! Σ_{k=0}^{K} c_k (x_{m-k} - x_0) = h^α f(t_{m-1}, x_{m-1})
//! ```
//!
//! for x_m, where K = m under full memory and K = min(m, L) under a window
//! of L steps. Subtracting x_0 turns the Riemann-Liouville difference
//! quotient into a Caputo one.
//!
//! The window keeps x_0 as the anchor. Moving the anchor to x_{m-L} would
//! keep equilibria exact but is unstable for small orders (spectral radius
//! above 1 for α = 0.1 on plain relaxation).

use crate::error::{Error, Result};
use crate::real::Real;

use super::config::{Scheme, SolverConfig, BLOW_UP};
use super::history::History;
use super::system::SystemSpec;
use super::trajectory::{Trajectory, TrajectoryMeta};

/// GL weights c_0..c_{count-1}: c_0 = 1, c_k = c_{k-1} (1 - (α + 1)/k).
pub fn gl_weights<T: Real>(alpha: T, count: usize) -> Result<Vec<T>> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::Domain(format!("GL order must lie in (0, 1], got {alpha}")));
    }
    if count == 0 {
        return Err(Error::Domain("weight count must be at least 1".into()));
    }
    Ok(weights_unchecked(alpha, count))
}

fn weights_unchecked<T: Real>(alpha: T, count: usize) -> Vec<T> {
    let mut w = Vec::with_capacity(count);
    w.push(T::one());
    for k in 1..count {
        let kf = T::from_usize_lossy(k);
        w.push(w[k - 1] * (T::one() - (alpha + T::one()) / kf));
    }
    w
}

struct WeightGroup<T> {
    order: T,
    weights: Vec<T>,
    /// prefix[k] = Σ_{j=1}^{k} c_j
    prefix: Vec<T>,
    components: Vec<usize>,
    h_alpha: T,
}

/// Per-order weight tables for a (possibly incommensurate) state vector.
pub(crate) struct GlKernel<T> {
    groups: Vec<WeightGroup<T>>,
    acc: Vec<T>,
}

impl<T: Real> GlKernel<T> {
    /// `reach` is the largest history lag used. Trailing zero weights (α = 1)
    /// shorten the effective memory.
    pub fn new(alpha: &[T], h: T, reach: usize) -> Self {
        let mut groups: Vec<WeightGroup<T>> = Vec::new();
        for (i, &a) in alpha.iter().enumerate() {
            if let Some(g) = groups.iter_mut().find(|g| g.order == a) {
                g.components.push(i);
                continue;
            }
            let mut weights = weights_unchecked(a, reach.max(1) + 1);
            while weights.len() > 2 && *weights.last().unwrap() == T::zero() {
                weights.pop();
            }
            let mut prefix = vec![T::zero(); weights.len()];
            for k in 1..weights.len() {
                prefix[k] = prefix[k - 1] + weights[k];
            }
            groups.push(WeightGroup { order: a, weights, prefix, components: vec![i], h_alpha: h.powf(a) });
        }
        Self { groups, acc: vec![T::zero(); alpha.len()] }
    }

    /// Longest lag any component needs.
    pub fn memory_len(&self) -> usize {
        self.groups.iter().map(|g| g.weights.len() - 1).max().unwrap_or(1)
    }

    /// Computes x_m from the history (most recent row = x_{m-1}), the
    /// Caputo anchor x_0 and the rate f(t_{m-1}, x_{m-1}).
    pub fn step(&mut self, history: &History<T>, anchor: &[T], rate: &[T], out: &mut [T]) {
        self.acc.fill(T::zero());
        let available = history.len();
        for g in &self.groups {
            let reach = available.min(g.weights.len() - 1);
            for k in 1..=reach {
                let row = history.back(k);
                let c = g.weights[k];
                for &i in &g.components {
                    self.acc[i] = self.acc[i] + c * row[i];
                }
            }
            let tail = g.prefix[reach];
            for &i in &g.components {
                out[i] = anchor[i] + g.h_alpha * rate[i] - (self.acc[i] - anchor[i] * tail);
            }
        }
    }
}

pub(crate) fn check_finite<T: Real>(x: &[T], step: usize, h: T) -> Result<()> {
    let limit = T::lit(BLOW_UP);
    if x.iter().any(|v| !v.is_finite() || v.abs() > limit) {
        return Err(Error::Divergence {
            step,
            time: (T::from_usize_lossy(step) * h).to_f64_lossy(),
            threshold: BLOW_UP,
        });
    }
    Ok(())
}

pub(crate) fn meta_for<T: Real>(system: &SystemSpec<T>, config: &SolverConfig<T>) -> TrajectoryMeta<T> {
    TrajectoryMeta {
        system: system.name().to_owned(),
        alpha: system.alpha().to_vec(),
        h: config.h,
        t_end: config.t_end,
        x0: config.x0.clone(),
        scheme: config.scheme,
        memory: config.memory,
        corrector_iters: config.corrector_iters,
    }
}

/// Integrates `system` with the explicit GL scheme.
pub fn solve_gl<T: Real>(system: &SystemSpec<T>, config: &SolverConfig<T>) -> Result<Trajectory<T>> {
    if config.scheme != Scheme::Gl {
        return Err(Error::Config(format!("solve_gl called with scheme {}", config.scheme)));
    }
    let n = system.dim();
    let steps = config.steps(n)?;
    let mut kernel = GlKernel::new(system.alpha(), config.h, config.reach(steps));
    let mut history = History::new(n, kernel.memory_len());
    let x0 = config.x0.clone();
    history.push(&x0);

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity((steps + 1) * n);
    times.push(T::zero());
    states.extend_from_slice(&x0);

    let mut rate = vec![T::zero(); n];
    let mut next = vec![T::zero(); n];
    for m in 1..=steps {
        let t_prev = T::from_usize_lossy(m - 1) * config.h;
        system.eval(t_prev, history.back(1), &mut rate);
        kernel.step(&history, &x0, &rate, &mut next);
        check_finite(&next, m, config.h)?;
        history.push(&next);
        times.push(T::from_usize_lossy(m) * config.h);
        states.extend_from_slice(&next);
    }
    Ok(Trajectory::new(times, states, meta_for(system, config)))
}
