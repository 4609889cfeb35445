//! Worked-example bundles: trajectory, Lyapunov, dimension and stability
//! reports plus a claim-by-claim comparison with the stated results.

use std::fmt;
use std::fs;
use std::path::Path;

use fracdyn::chaos::{classify_attractor, AnalysisReport, AttractorClass, LyapunovOptions, LyapunovResult, ZERO_TOL};
use fracdyn::solvers::{solve, Memory, SolverConfig, Trajectory};
use fracdyn::systems::{make_system, BenchmarkId, BenchmarkName};
use fracdyn::BoxCountResult64;
use serde::Serialize;

use crate::args::ReproduceArgs;
use crate::commands::{analysed_dim, box_dimension_of, config_summary, stability_for, DimensionReport};
use crate::error::{usage, CliResult};
use crate::output::{atomic_write, json_string};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    SoftPass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::SoftPass => "soft-pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub claim: String,
    pub stated: String,
    pub measured: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
struct Settings {
    example: u8,
    system: String,
    alpha: f64,
    params: std::collections::BTreeMap<String, f64>,
    x0: Vec<f64>,
    h: f64,
    t_end: f64,
    scheme: String,
    memory: String,
    renorm_every: usize,
    transient_fraction: f64,
    zero_tol: f64,
    dimension_columns: Vec<usize>,
}

/// Documented settings per example: (system, alpha, h, t_end, memory window).
/// Chen's contracting exponent weakens as the window grows, so it runs with
/// a shorter window; Rossler only leaves its limit cycle close to alpha = 1.
fn plan(example: u8) -> (BenchmarkName, f64, f64, f64, usize) {
    match example {
        1 => (BenchmarkName::Lorenz, 0.995, 0.005, 300.0, 1000),
        2 => (BenchmarkName::Duffing, 0.9, 0.005, 2000.0, 1000),
        3 => (BenchmarkName::Chen, 0.9, 0.005, 300.0, 200),
        4 => (BenchmarkName::Rossler, 0.99, 0.01, 1000.0, 1000),
        _ => (BenchmarkName::Chua, 0.98, 0.005, 300.0, 1000),
    }
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value - target).abs() <= rel * target.abs()
}

fn claim(claim: &str, stated: &str, measured: String, verdict: Verdict) -> Claim {
    Claim { claim: claim.into(), stated: stated.into(), measured, verdict }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn sign_pattern_claims(l: &LyapunovResult<f64>, zero_tol: f64, box_dim: Option<f64>) -> Vec<Claim> {
    let e = &l.exponents;
    let class = classify_attractor(e, zero_tol);
    let mut out = vec![
        claim("λ1 > 0", "λ1 > 0", format!("{:.4}", e[0]), pass_if(e[0] > zero_tol)),
        claim("λ2 = 0", "λ2 = 0", format!("{:.4}", e[1]), pass_if(e[1].abs() < 0.02)),
        claim("λ3 < 0", "λ3 < 0", format!("{:.4}", e[2]), pass_if(e[2] < -zero_tol)),
        claim("strange attractor", "strange", class.to_string(), pass_if(class == AttractorClass::Strange)),
        claim(
            "D_KY = 2 + (λ1 + λ2)/|λ3| is non-integer",
            "non-integer",
            format!("{:.4}", l.d_ky),
            pass_if(l.d_ky > 2.0 && l.d_ky < 3.0 && l.d_ky.fract() > 1e-3),
        ),
    ];
    if let Some(d) = box_dim {
        let off = (d - d.round()).abs();
        out.push(claim(
            "fractal geometry (box-counting)",
            "non-integer",
            format!("{d:.4}"),
            if off > 0.05 { Verdict::Pass } else { Verdict::SoftPass },
        ));
    }
    out
}

fn duffing_claims(l: &LyapunovResult<f64>) -> Vec<Claim> {
    let e = &l.exponents;
    let value = |name: &str, stated: f64, got: f64| {
        let verdict = if within(got, stated, 0.10) {
            Verdict::Pass
        } else if got.signum() == stated.signum() {
            Verdict::SoftPass
        } else {
            Verdict::Fail
        };
        claim(name, &format!("{stated}"), format!("{got:.4}"), verdict)
    };
    let dky = l.d_ky;
    vec![
        claim("λ1 > 0 (chaos)", "λ1 > 0", format!("{:.4}", e[0]), pass_if(e[0] > 0.0)),
        value("λ1", 0.143, e[0]),
        value("λ2", -0.245, e[1]),
        claim("D_KY in (1, 2)", "non-integer in (1, 2)", format!("{dky:.4}"), pass_if(dky > 1.0 && dky < 2.0)),
        claim(
            "D_KY ≈ 1.584",
            "1.584",
            format!("{dky:.4}"),
            if (dky - 1.584).abs() <= 0.05 {
                Verdict::Pass
            } else if (dky - 1.584).abs() <= 0.15 {
                Verdict::SoftPass
            } else {
                Verdict::Fail
            },
        ),
    ]
}

fn failed_claims(example: u8, reason: &str) -> Vec<Claim> {
    let names: &[&str] = if example == 2 {
        &["λ1 > 0 (chaos)", "λ1", "λ2", "D_KY in (1, 2)", "D_KY ≈ 1.584"]
    } else {
        &["λ1 > 0", "λ2 = 0", "λ3 < 0", "strange attractor", "D_KY = 2 + (λ1 + λ2)/|λ3| is non-integer"]
    };
    names.iter().map(|n| claim(n, "see example", reason.to_owned(), Verdict::Fail)).collect()
}

fn comparison_markdown(example: u8, id: &BenchmarkId, cfg: &SolverConfig<f64>, claims: &[Claim]) -> String {
    let mut s = format!(
        "# Example {example}: {} (alpha = {})\n\nSettings: {}\n\n| claim | stated | measured | verdict |\n|---|---|---|---|\n",
        id.name,
        id.alpha,
        config_summary(cfg)
    );
    for c in claims {
        let cell = |v: &str| v.replace('|', "\\|");
        s.push_str(&format!("| {} | {} | {} | {} |\n", cell(&c.claim), cell(&c.stated), cell(&c.measured), c.verdict));
    }
    s
}

pub fn reproduce(args: &ReproduceArgs) -> CliResult<String> {
    let example = args.example;
    let (name, alpha, h, default_t_end, window) = plan(example);
    let t_end = args.t_end.unwrap_or(default_t_end);
    let id = BenchmarkId::new(name).with_alpha(alpha);
    let sys = make_system::<f64>(&id)?;
    let cfg = SolverConfig::new(h, t_end, id.initial_state()).with_memory(Memory::Window(window));
    cfg.steps(sys.dim()).map_err(|e| usage(format!("--t-end: {e}")))?;
    let opts = LyapunovOptions::<f64>::default();
    let dim = analysed_dim(&sys);
    let columns: Vec<usize> = match sys.observables() {
        Some(obs) => obs.iter().map(|&i| i + 2).collect(),
        None => (2..=sys.dim() + 1).collect(),
    };

    let dir = &args.out_dir;
    fs::create_dir_all(dir)?;

    let (traj, lyap) = rayon::join(
        || -> fracdyn::Result<(Trajectory<f64>, Option<BoxCountResult64>, usize)> {
            let tr = solve(&sys, &cfg)?;
            let skip = (0.2 * tr.len() as f64).floor() as usize;
            let points: Vec<Vec<f64>> =
                (skip..tr.len()).map(|i| columns.iter().map(|&c| tr.state(i)[c - 2]).collect()).collect();
            let n = points.len();
            Ok((tr, box_dimension_of(&points, None, None, None).ok(), n))
        },
        || lyapunov_spectrum_checked(&sys, &cfg, &opts),
    );
    let stability = stability_for(&sys)?;

    let mut notes = Vec::new();
    let mut box_dim = None;
    match &traj {
        Ok((tr, bc, n)) => {
            write(dir, "trajectory.csv", &tr.to_csv_string())?;
            if let Some(bc) = bc {
                let report = DimensionReport::new("trajectory.csv", columns.clone(), 0.2, *n, bc);
                write(dir, "dimension.json", &json_string(&report))?;
                write(dir, "dimension_plot.txt", &bc.plot_data())?;
                box_dim = Some(bc.slope);
            } else {
                notes.push("box-counting fit failed".to_owned());
            }
        }
        Err(e) => notes.push(format!("trajectory: {e}")),
    }
    let claims = match &lyap {
        Ok(l) => {
            let report = AnalysisReport::build(&sys, Some(l), Some(&stability), ZERO_TOL, None, dim);
            write(dir, "lyapunov.json", &report.to_json())?;
            if example == 2 {
                duffing_claims(l)
            } else {
                sign_pattern_claims(l, ZERO_TOL, box_dim)
            }
        }
        Err(e) => {
            notes.push(format!("lyapunov: {e}"));
            failed_claims(example, &e.to_string())
        }
    };
    let stab_report = AnalysisReport::build(&sys, None, Some(&stability), ZERO_TOL, box_dim, dim);
    write(dir, "stability.json", &stab_report.to_json())?;

    let settings = Settings {
        example,
        system: id.name.to_string(),
        alpha: id.alpha,
        params: id.params.clone(),
        x0: cfg.x0.clone(),
        h: cfg.h,
        t_end: cfg.t_end,
        scheme: cfg.scheme.to_string(),
        memory: cfg.memory.to_string(),
        renorm_every: opts.renorm_every,
        transient_fraction: 0.2,
        zero_tol: ZERO_TOL,
        dimension_columns: columns,
    };
    write(dir, "settings.json", &json_string(&settings))?;
    let mut md = comparison_markdown(example, &id, &cfg, &claims);
    for n in &notes {
        md.push_str(&format!("\nNote: {n}\n"));
    }
    write(dir, "comparison.md", &md)?;
    write(dir, "comparison.json", &json_string(&claims))?;

    let count = |v: Verdict| claims.iter().filter(|c| c.verdict == v).count();
    Ok(format!(
        "reproduce {example} ({}): {} pass, {} soft-pass, {} fail -> {}",
        id.name,
        count(Verdict::Pass),
        count(Verdict::SoftPass),
        count(Verdict::Fail),
        dir.display()
    ))
}

fn lyapunov_spectrum_checked(
    sys: &fracdyn::SystemSpec64,
    cfg: &SolverConfig<f64>,
    opts: &LyapunovOptions<f64>,
) -> fracdyn::Result<LyapunovResult<f64>> {
    fracdyn::chaos::lyapunov_spectrum(sys, cfg, opts)
}

fn write(dir: &Path, name: &str, body: &str) -> CliResult<()> {
    atomic_write(&dir.join(name), body.as_bytes())
}
