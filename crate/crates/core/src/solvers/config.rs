use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Divergence threshold on any state component.
pub const BLOW_UP: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Grünwald-Letnikov finite-memory scheme.
    Gl,
    /// Fractional Adams-Bashforth-Moulton predictor-corrector.
    Abm,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Gl => "gl",
            Scheme::Abm => "abm",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Scheme::Gl),
            "abm" => Ok(Scheme::Abm),
            other => Err(Error::Config(format!("unknown scheme `{other}` (expected gl or abm)"))),
        }
    }
}

/// How much of the convolution history each step uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Memory {
    Full,
    /// Only the most recent `L` history terms (short-memory principle).
    Window(usize),
}

impl fmt::Display for Memory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Memory::Full => f.write_str("full"),
            Memory::Window(l) => write!(f, "{l}"),
        }
    }
}

impl FromStr for Memory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(Memory::Full);
        }
        s.parse::<usize>()
            .map(Memory::Window)
            .map_err(|_| Error::Config(format!("memory must be `full` or a step count, got `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub h: T,
    pub t_end: T,
    pub x0: Vec<T>,
    pub scheme: Scheme,
    pub memory: Memory,
    /// Corrector passes per ABM step (1 = PECE).
    pub corrector_iters: usize,
}

impl<T: Real> SolverConfig<T> {
    pub fn new(h: T, t_end: T, x0: Vec<T>) -> Self {
        Self { h, t_end, x0, scheme: Scheme::Gl, memory: Memory::Full, corrector_iters: 1 }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_memory(mut self, memory: Memory) -> Self {
        self.memory = memory;
        self
    }

    pub fn with_corrector_iters(mut self, iters: usize) -> Self {
        self.corrector_iters = iters;
        self
    }

    /// Checks the configuration against a system dimension and returns the step count N.
    pub fn steps(&self, dim: usize) -> Result<usize> {
        if !(self.h > T::zero()) || !self.h.is_finite() {
            return Err(Error::Config(format!("step size must be positive, got {}", self.h)));
        }
        if !(self.t_end > self.h) || !self.t_end.is_finite() {
            return Err(Error::Config(format!(
                "horizon {} must be finite and exceed the step size {}",
                self.t_end, self.h
            )));
        }
        if self.x0.len() != dim {
            return Err(Error::Config(format!(
                "initial state has {} components, system has {dim}",
                self.x0.len()
            )));
        }
        if self.x0.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("initial state must be finite".into()));
        }
        if self.memory == Memory::Window(0) {
            return Err(Error::Config("memory window must be at least 1 step".into()));
        }
        if self.corrector_iters == 0 {
            return Err(Error::Config("corrector_iters must be at least 1".into()));
        }
        let ratio = self.t_end / self.h;
        let n = ratio.round();
        let slack = T::lit(1e-6).max(T::lit(16.0) * T::epsilon() * ratio);
        if (ratio - n).abs() > slack {
            return Err(Error::Config(format!(
                "horizon {} is not an integer multiple of the step {}",
                self.t_end, self.h
            )));
        }
        n.to_usize().ok_or_else(|| Error::Config("step count overflow".into()))
    }

    /// Number of history terms a step may use, given N steps.
    pub fn reach(&self, steps: usize) -> usize {
        match self.memory {
            Memory::Full => steps,
            Memory::Window(l) => l.min(steps),
        }
    }
}
