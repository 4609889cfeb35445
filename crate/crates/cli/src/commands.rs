use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use fracdyn::chaos::{
    dimension_instability_check, lyapunov_spectrum, stability_report, AnalysisReport, LyapunovOptions, LyapunovResult,
    StabilityReport, ZERO_TOL,
};
use fracdyn::geometry::{box_dimension, default_ladder, BoxCountResult};
use fracdyn::mlf::MlParams;
use fracdyn::solvers::{format_value, solve, CsvTable, SolverConfig, SystemSpec, Trajectory};
use fracdyn::systems::{default_guesses, make_system, BenchmarkId, BenchmarkName};
use num_complex::Complex;
use serde::Serialize;

use crate::args::{DimensionArgs, Format, LyapunovArgs, MlfArgs, SimulateArgs, StabilityArgs};
use crate::error::{usage, CliResult};
use crate::output::{atomic_write, json_string};
use crate::settings::{load_config, resolve_solver, resolve_system, LYAPUNOV_DEFAULTS, SIMULATE_DEFAULTS};

#[derive(Serialize)]
struct TrajectoryJson<'a> {
    schema_version: u32,
    system: &'a str,
    alpha: &'a [f64],
    h: f64,
    t_end: f64,
    x0: &'a [f64],
    scheme: String,
    memory: String,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

pub fn trajectory_json(tr: &Trajectory<f64>) -> String {
    let meta = tr.meta();
    let mut header = vec!["t".to_owned()];
    header.extend((1..=tr.dim()).map(|i| format!("x{i}")));
    let rows = (0..tr.len())
        .map(|i| {
            let mut r = vec![tr.times()[i]];
            r.extend_from_slice(tr.state(i));
            r
        })
        .collect();
    json_string(&TrajectoryJson {
        schema_version: fracdyn::chaos::SCHEMA_VERSION,
        system: &meta.system,
        alpha: &meta.alpha,
        h: meta.h,
        t_end: meta.t_end,
        x0: &meta.x0,
        scheme: meta.scheme.to_string(),
        memory: meta.memory.to_string(),
        header,
        rows,
    })
}

pub fn simulate(args: &SimulateArgs) -> CliResult<String> {
    let doc = load_config(args.system.config.as_deref())?;
    let id = resolve_system(&args.system, &doc)?;
    let cfg = resolve_solver(&id, &args.system, &args.solver, &doc, SIMULATE_DEFAULTS)?;
    let sys = make_system::<f64>(&id)?;
    let tr = solve(&sys, &cfg)?;
    let body = match args.format {
        Format::Csv => tr.to_csv_string(),
        Format::Json => trajectory_json(&tr),
    };
    atomic_write(&args.out, body.as_bytes())?;
    Ok(format!(
        "simulate {} alpha={} scheme={} memory={} h={} t_end={}: {} rows -> {}",
        id.name,
        id.alpha,
        cfg.scheme,
        cfg.memory,
        cfg.h,
        cfg.t_end,
        tr.len(),
        args.out.display()
    ))
}

/// Phase-space dimension the exponents describe.
pub fn analysed_dim(sys: &SystemSpec<f64>) -> usize {
    sys.observables().map_or(sys.dim(), <[usize]>::len)
}

pub fn stability_for(sys: &SystemSpec<f64>) -> fracdyn::Result<StabilityReport<f64>> {
    stability_report(sys, &default_guesses(sys.dim()))
}

pub fn lyapunov_csv(res: &LyapunovResult<f64>) -> String {
    let m = res.exponents.len();
    let mut out = String::from("t");
    for i in 1..=m {
        out.push_str(&format!(",l{i}"));
    }
    out.push('\n');
    for s in &res.history {
        out.push_str(&format_value(s.time));
        for v in &s.estimates {
            out.push(',');
            out.push_str(&format_value(*v));
        }
        out.push('\n');
    }
    out
}

pub fn lyapunov(args: &LyapunovArgs) -> CliResult<String> {
    let doc = load_config(args.system.config.as_deref())?;
    let id = resolve_system(&args.system, &doc)?;
    let cfg = resolve_solver(&id, &args.system, &args.solver, &doc, LYAPUNOV_DEFAULTS)?;
    let zero_tol = args.zero_tol.or(doc.lyapunov.zero_tol).unwrap_or(ZERO_TOL);
    let mut opts = LyapunovOptions::<f64> {
        transient: args.transient.or(doc.lyapunov.transient),
        ..Default::default()
    };
    if let Some(k) = args.renorm_every.or(doc.lyapunov.renorm_every) {
        opts.renorm_every = k;
    }
    let sys = make_system::<f64>(&id)?;
    let res = lyapunov_spectrum(&sys, &cfg, &opts)?;
    let body = match args.format {
        Format::Json => {
            let stability = stability_for(&sys)?;
            AnalysisReport::build(&sys, Some(&res), Some(&stability), zero_tol, None, analysed_dim(&sys)).to_json()
        }
        Format::Csv => lyapunov_csv(&res),
    };
    atomic_write(&args.out, body.as_bytes())?;
    let class = fracdyn::chaos::classify_attractor(&res.exponents, zero_tol);
    Ok(format!(
        "lyapunov {} alpha={} memory={}: exponents [{}] d_ky={:.4} {}{} -> {}",
        id.name,
        id.alpha,
        cfg.memory,
        res.exponents.iter().map(|l| format!("{l:.4}")).collect::<Vec<_>>().join(", "),
        res.d_ky,
        class,
        if res.converged { "" } else { " (not converged)" },
        args.out.display()
    ))
}

#[derive(Serialize)]
pub struct DimensionReport {
    pub schema_version: u32,
    pub input: String,
    pub columns: Vec<usize>,
    pub transient: f64,
    pub points: usize,
    pub scales: Vec<f64>,
    pub counts: Vec<usize>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub window: [usize; 2],
    pub saturated: Vec<bool>,
    pub warnings: Vec<String>,
    pub dimension_instability: bool,
}

impl DimensionReport {
    pub fn new(input: &str, columns: Vec<usize>, transient: f64, points: usize, r: &BoxCountResult<f64>) -> Self {
        Self {
            schema_version: fracdyn::chaos::SCHEMA_VERSION,
            input: input.to_owned(),
            dimension_instability: dimension_instability_check(r.slope, columns.len()),
            columns,
            transient,
            points,
            scales: r.scales.clone(),
            counts: r.counts.clone(),
            slope: r.slope,
            intercept: r.intercept,
            r2: r.r2,
            window: [r.window.0, r.window.1],
            saturated: r.saturated.clone(),
            warnings: r.warnings.clone(),
        }
    }
}

pub fn box_dimension_of(
    points: &[Vec<f64>],
    eps_max: Option<f64>,
    eps_min: Option<f64>,
    levels: Option<usize>,
) -> fracdyn::Result<BoxCountResult<f64>> {
    let (hi, lo, n) = default_ladder(points)?;
    box_dimension(points, eps_max.unwrap_or(hi), eps_min.unwrap_or(lo), levels.unwrap_or(n))
}

pub fn read_table(path: &Path) -> CliResult<CsvTable<f64>> {
    let file = File::open(path).map_err(|e| usage(format!("--input {}: {e}", path.display())))?;
    Ok(CsvTable::read(BufReader::new(file))?)
}

pub fn dimension(args: &DimensionArgs) -> CliResult<String> {
    let table = read_table(&args.input)?;
    let columns = args.columns.clone().unwrap_or_else(|| (2..=table.header.len()).collect());
    if columns.is_empty() {
        return Err(usage("--columns: the input has no state columns"));
    }
    let points = table.points(&columns, args.transient).map_err(|e| usage(format!("--columns/--transient: {e}")))?;
    let res = box_dimension_of(&points, args.eps_max, args.eps_min, args.levels)?;
    let report = DimensionReport::new(&args.input.display().to_string(), columns, args.transient, points.len(), &res);
    let body = match args.format {
        Format::Json => json_string(&report),
        Format::Csv => {
            let mut s = String::from("eps,count\n");
            for (e, n) in res.scales.iter().zip(&res.counts) {
                s.push_str(&format!("{},{n}\n", format_value(*e)));
            }
            s
        }
    };
    if let Some(plot) = &args.plot {
        atomic_write(plot, res.plot_data().as_bytes())?;
    }
    let summary = format!(
        "dimension {}: D_f={:.4} r2={:.4} window={}..{} over {} points",
        args.input.display(),
        res.slope,
        res.r2,
        res.window.0,
        res.window.1,
        points.len()
    );
    match &args.out {
        Some(out) => {
            atomic_write(out, body.as_bytes())?;
            Ok(format!("{summary} -> {}", out.display()))
        }
        None => {
            print!("{body}");
            Ok(summary)
        }
    }
}

pub fn stability(args: &StabilityArgs) -> CliResult<String> {
    let doc = load_config(args.system.config.as_deref())?;
    let id = resolve_system(&args.system, &doc)?;
    let sys = make_system::<f64>(&id)?;
    let rep = stability_for(&sys)?;
    let report = AnalysisReport::build(&sys, None, Some(&rep), ZERO_TOL, args.dimension, analysed_dim(&sys));
    atomic_write(&args.out, report.to_json().as_bytes())?;
    let stable = rep.equilibria.iter().filter(|v| v.sector.classification == fracdyn::chaos::Stability::Stable).count();
    Ok(format!(
        "stability {} alpha={}: {} equilibria, {} stable, spectral chaos {} -> {}",
        id.name,
        id.alpha,
        rep.equilibria.len(),
        stable,
        if rep.equilibria.iter().any(|v| v.spectral.flag) { "yes" } else { "no" },
        args.out.display()
    ))
}

pub fn mlf(args: &MlfArgs) -> CliResult<String> {
    let p = MlParams::new(args.alpha, args.beta)?;
    Ok(match args.z_im {
        None => format_value(p.eval(args.z)?),
        Some(im) => {
            let v = p.eval_complex(Complex::new(args.z, im))?;
            format!("{} {}", format_value(v.re), format_value(v.im))
        }
    })
}

pub fn list_systems() -> String {
    BenchmarkName::ALL.iter().map(|&n| BenchmarkId::new(n).describe()).collect::<Vec<_>>().join("\n")
}

pub fn config_summary(cfg: &SolverConfig<f64>) -> String {
    format!("h={} t_end={} scheme={} memory={}", cfg.h, cfg.t_end, cfg.scheme, cfg.memory)
}
