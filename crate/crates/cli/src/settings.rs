use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use fracdyn::solvers::{Memory, Scheme, SolverConfig};
use fracdyn::systems::{BenchmarkId, BenchmarkName};
use serde::Deserialize;

use crate::args::{SolverArgs, SystemArgs};
use crate::error::{usage, CliResult};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub system: Option<String>,
    pub alpha: Option<f64>,
    pub x0: Option<Vec<f64>>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub solver: SolverDoc,
    #[serde(default)]
    pub lyapunov: LyapunovDoc,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverDoc {
    pub h: Option<f64>,
    pub t_end: Option<f64>,
    pub scheme: Option<String>,
    pub memory: Option<MemoryDoc>,
    pub corrector_iters: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MemoryDoc {
    Steps(usize),
    Name(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LyapunovDoc {
    pub renorm_every: Option<usize>,
    pub transient: Option<f64>,
    pub zero_tol: Option<f64>,
}

pub fn load_config(path: Option<&Path>) -> CliResult<ConfigDoc> {
    let Some(path) = path else {
        return Ok(ConfigDoc::default());
    };
    let text = fs::read_to_string(path).map_err(|e| usage(format!("--config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| usage(format!("--config {}: {e}", path.display())))
}

/// Command-specific fallbacks applied after flags and the config document.
#[derive(Debug, Clone, Copy)]
pub struct SolverDefaults {
    pub h: f64,
    pub t_end: f64,
    pub memory: Memory,
}

pub const SIMULATE_DEFAULTS: SolverDefaults = SolverDefaults { h: 0.005, t_end: 100.0, memory: Memory::Full };
pub const LYAPUNOV_DEFAULTS: SolverDefaults = SolverDefaults { h: 0.005, t_end: 500.0, memory: Memory::Window(1000) };

pub fn resolve_system(args: &SystemArgs, doc: &ConfigDoc) -> CliResult<BenchmarkId> {
    let name = args
        .system
        .as_deref()
        .or(doc.system.as_deref())
        .ok_or_else(|| usage("--system is required (or `system` in --config)"))?;
    let name: BenchmarkName = name.parse().map_err(|e| usage(format!("--system: {e}")))?;
    let mut id = BenchmarkId::new(name);
    for (k, v) in &doc.params {
        id = id.with_param(k, *v).map_err(|e| usage(format!("--config [params]: {e}")))?;
    }
    for p in &args.params {
        let (k, v) = p.split_once('=').ok_or_else(|| usage(format!("--param `{p}` must be NAME=VALUE")))?;
        let v: f64 = v.trim().parse().map_err(|_| usage(format!("--param `{p}`: `{v}` is not a number")))?;
        id = id.with_param(k.trim(), v).map_err(|e| usage(format!("--param: {e}")))?;
    }
    if let Some(a) = args.alpha.or(doc.alpha) {
        id = id.with_alpha(a);
    }
    Ok(id)
}

fn resolve_x0(id: &BenchmarkId, given: Option<&Vec<f64>>) -> CliResult<Vec<f64>> {
    let mut x0 = id.initial_state();
    if let Some(v) = given {
        let physical = id.name.default_initial_state().len();
        if v.len() == x0.len() {
            x0 = v.clone();
        } else if v.len() == physical {
            x0[..physical].copy_from_slice(v);
        } else {
            return Err(usage(format!(
                "--x0 has {} values; {} takes {} (or {physical})",
                v.len(),
                id.name,
                x0.len()
            )));
        }
    }
    Ok(x0)
}

pub fn resolve_solver(
    id: &BenchmarkId,
    sys_args: &SystemArgs,
    args: &SolverArgs,
    doc: &ConfigDoc,
    defaults: SolverDefaults,
) -> CliResult<SolverConfig<f64>> {
    let x0 = resolve_x0(id, sys_args.x0.as_ref().or(doc.x0.as_ref()))?;
    let h = args.h.or(doc.solver.h).unwrap_or(defaults.h);
    let t_end = args.t_end.or(doc.solver.t_end).unwrap_or(defaults.t_end);
    let mut cfg = SolverConfig::new(h, t_end, x0);
    if let Some(s) = args.scheme.as_deref().or(doc.solver.scheme.as_deref()) {
        cfg = cfg.with_scheme(s.parse::<Scheme>().map_err(|e| usage(format!("--scheme: {e}")))?);
    }
    let memory = match (&args.memory, &doc.solver.memory) {
        (Some(m), _) => m.parse::<Memory>().map_err(|e| usage(format!("--memory: {e}")))?,
        (None, Some(MemoryDoc::Steps(l))) => Memory::Window(*l),
        (None, Some(MemoryDoc::Name(m))) => m.parse::<Memory>().map_err(|e| usage(format!("--config memory: {e}")))?,
        (None, None) => defaults.memory,
    };
    cfg = cfg.with_memory(memory);
    if let Some(k) = args.corrector_iters.or(doc.solver.corrector_iters) {
        cfg = cfg.with_corrector_iters(k);
    }
    Ok(cfg)
}
