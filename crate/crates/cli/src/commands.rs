use std::fmt::Write as _;
use std::path::Path;

use levytail::fractal::{box_dimension, trace_dimension_from_h};
use levytail::scaling::{alpha_from_hurst, fit_hurst, scaling_curve};
use levytail::stable::{
    check_semistability, check_stability_on, tail_table, DEFAULT_Z_GRID, TABLE_XS,
};
use levytail::synth::{fbm, gaussian_noise, gaussian_walk, stable_sample};
use levytail::{
    BoxGridConfig, FbmSpec, InversionConfig, Seed, SemiStableSpec, StableParams, TimeSeries,
    WindowPlan,
};
use serde_json::{json, Value};

use crate::args::{
    BoxdimArgs, CheckArgs, GenArgs, GenKind, HurstArgs, InputArgs, SimulateArgs, StableArgs,
    TableArgs,
};
use crate::error::CliError;
use crate::input::{read_series, write_series, MIN_SAMPLES};

/// What a subcommand produced, before it is wrapped into a report.
pub struct Outcome {
    pub results: Value,
    pub warnings: Vec<String>,
    /// Human-readable summary printed when the report goes to a file.
    pub summary: String,
    /// False when a requested check did not pass.
    pub passed: bool,
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize to JSON")
}

pub fn stable_params(a: &StableArgs) -> Result<StableParams, CliError> {
    let alpha = a
        .alpha
        .ok_or_else(|| CliError::Param("--alpha is required".into()))?;
    let gamma = a.gamma.unwrap_or(if alpha == 2.0 { 0.5 } else { 1.0 });
    Ok(StableParams::new(alpha, a.beta, gamma, a.sigma)?)
}

/// Generated series plus a description of the generator for the report.
struct Generated {
    series: TimeSeries,
    description: Value,
    warnings: Vec<String>,
}

fn generate(kind: GenKind, g: &GenArgs) -> Result<Generated, CliError> {
    let seed = Seed(g.seed);
    let mut warnings = Vec::new();
    let (series, description) = match kind {
        GenKind::Noise => (
            gaussian_noise(g.n, seed)?,
            json!({"generator": "noise", "n": g.n, "seed": g.seed}),
        ),
        GenKind::Walk => (
            gaussian_walk(g.n, seed)?,
            json!({"generator": "walk", "n": g.n, "seed": g.seed}),
        ),
        GenKind::Fbm => {
            let sample = fbm(FbmSpec::new(g.n, g.h)?, seed)?;
            if sample.clipped > 0 {
                warnings.push(format!(
                    "{} negative circulant eigenvalues were clipped; covariance is approximate",
                    sample.clipped
                ));
            }
            (
                sample.series,
                json!({"generator": "fbm", "n": g.n, "h": g.h, "seed": g.seed,
                       "clipped_eigenvalues": sample.clipped}),
            )
        }
        GenKind::Stable => {
            let p = stable_params(&g.stable)?;
            (
                stable_sample(&p, g.n, seed)?,
                json!({"generator": "stable", "n": g.n, "seed": g.seed, "params": to_json(&p)}),
            )
        }
    };
    Ok(Generated {
        series,
        description,
        warnings,
    })
}

/// The series to analyse, and a JSON description of where it came from.
fn load(input: &InputArgs) -> Result<(TimeSeries, Value, Vec<String>), CliError> {
    if let Some(path) = &input.input {
        let series = read_series(path)?;
        log::info!("read {} samples from {}", series.len(), path.display());
        return Ok((
            series,
            json!({"path": path.display().to_string()}),
            Vec::new(),
        ));
    }
    let kind = input
        .gen
        .ok_or_else(|| CliError::Param("one of --input or --gen is required".into()))?;
    let g = generate(kind, &input.gen_args)?;
    if g.series.len() < MIN_SAMPLES {
        return Err(CliError::Data(format!(
            "series has {} samples, at least {MIN_SAMPLES} are required",
            g.series.len()
        )));
    }
    Ok((g.series, g.description, g.warnings))
}

fn write_points(path: &Path, header: [&str; 2], points: &[(f64, f64)]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for (x, y) in points {
        w.write_record([x.to_string(), y.to_string()]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn hurst(args: &HurstArgs) -> Result<Outcome, CliError> {
    let (series, source, mut warnings) = load(&args.input)?;
    let plan = match &args.windows {
        Some(w) => {
            let plan = WindowPlan::new(w.clone())?;
            plan.check_fits(series.len())?;
            plan
        }
        None => WindowPlan::default_for(series.len())?,
    };
    let curve = scaling_curve(&series, &plan)?;
    if !curve.excluded_windows.is_empty() {
        warnings.push(format!(
            "windows {:?} have zero mean range and were left out of the fit",
            curve.excluded_windows
        ));
    }
    let est = fit_hurst(&curve.points)?;
    let alpha = alpha_from_hurst(est.h).map_err(|e| CliError::Data(e.to_string()))?;
    if alpha.clamped {
        warnings.push(format!(
            "1/H = {:.4} exceeds 2; alpha clamped to 2",
            alpha.raw
        ));
    }
    let trace_dimension = match trace_dimension_from_h(est.h) {
        Ok(d) => Some(d),
        Err(_) => {
            warnings.push(format!(
                "H = {:.4} is outside (0, 1); no trace dimension",
                est.h
            ));
            None
        }
    };
    let log_points = est.log_points();
    if let Some(path) = &args.plot_points {
        write_points(path, ["log_dt", "log_mean_range"], &log_points)?;
    }
    let summary = format!(
        "H = {:.4} (95% CI {:.4} .. {:.4}), r^2 = {:.4}, alpha = {:.4}{}\n",
        est.h,
        est.ci95_low,
        est.ci95_high,
        est.r_squared,
        alpha.alpha,
        if alpha.clamped { " (clamped)" } else { "" }
    );
    let log_points: Vec<[f64; 2]> = log_points.iter().map(|&(x, y)| [x, y]).collect();
    Ok(Outcome {
        results: json!({
            "source": source,
            "estimate": to_json(&est),
            "alpha": to_json(&alpha),
            "trace_dimension": trace_dimension,
            "log_points": log_points,
        }),
        warnings,
        summary,
        passed: true,
    })
}

pub fn boxdim(args: &BoxdimArgs) -> Result<Outcome, CliError> {
    let (series, source, mut warnings) = load(&args.input)?;
    let grid = match &args.deltas {
        Some(d) => BoxGridConfig::new(d.clone())?,
        None => BoxGridConfig::default_for(series.len())?,
    };
    let est = box_dimension(&series, &grid)?;
    if est.degenerate {
        warnings.push("series is constant; dimension reported as 1 without a fit".into());
    }
    let implied_h = 2.0 - est.dimension;
    let points: Vec<(f64, f64)> = est
        .counts
        .iter()
        .map(|c| ((1.0 / c.delta).ln(), (c.count as f64).ln()))
        .collect();
    if let Some(path) = &args.plot_points {
        write_points(path, ["log_inv_delta", "log_count"], &points)?;
    }
    let summary = format!(
        "D_B = {:.4}, r^2 = {:.4}, implied H = {:.4}\n",
        est.dimension, est.r_squared, implied_h
    );
    Ok(Outcome {
        results: json!({
            "source": source,
            "estimate": to_json(&est),
            "implied_h": implied_h,
        }),
        warnings,
        summary,
        passed: true,
    })
}

/// Six significant digits in scientific notation.
fn sci(v: f64) -> String {
    format!("{v:.5E}")
}

pub fn table(args: &TableArgs) -> Result<Outcome, CliError> {
    let p = stable_params(&args.stable)?;
    let xs = args.xs.clone().unwrap_or_else(|| TABLE_XS.to_vec());
    if xs.is_empty() {
        return Err(CliError::Param("--xs must list at least one point".into()));
    }
    let rows = tail_table(&p, &xs, &InversionConfig::with_tolerance(args.tol))?;
    let mut warnings = Vec::new();
    let mut summary = format!(
        "{:>8}  {:>14}  {:>14}  {:>18}\n",
        "x", "P[Normal]", "P[Levy]", "Ratio Levy/Normal"
    );
    for r in &rows {
        if r.ratio.is_none() {
            warnings.push(format!(
                "P[Normal] underflows at x = {}; ratio reported as null (infinite)",
                r.x
            ));
        }
        let ratio = r.ratio.map_or_else(|| "inf".to_string(), sci);
        let _ = writeln!(
            summary,
            "{:>8}  {:>14}  {:>14}  {:>18}",
            r.x,
            sci(r.p_normal),
            sci(r.p_stable),
            ratio
        );
    }
    Ok(Outcome {
        results: json!({"params": to_json(&p), "rows": to_json(&rows)}),
        warnings,
        summary,
        passed: true,
    })
}

pub fn simulate(args: &SimulateArgs, output: Option<&Path>) -> Result<Outcome, CliError> {
    let path = output.ok_or_else(|| {
        CliError::Param("simulate needs --output for the generated series".into())
    })?;
    let g = generate(args.gen, &args.gen_args)?;
    write_series(path, &g.series)?;
    log::info!("wrote {} samples to {}", g.series.len(), path.display());
    let summary = format!("wrote {} samples to {}\n", g.series.len(), path.display());
    Ok(Outcome {
        results: json!({
            "path": path.display().to_string(),
            "seed": args.gen_args.seed,
            "series": g.description,
        }),
        warnings: g.warnings,
        summary,
        passed: true,
    })
}

pub fn check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let zs = args.zs.clone().unwrap_or_else(|| DEFAULT_Z_GRID.to_vec());
    let mut results = serde_json::Map::new();
    let mut summary = String::new();
    let mut warnings = Vec::new();
    let mut passed = true;
    let mut ran = false;

    // with --semi-b, --alpha is the lattice exponent; the stable check then runs
    // only when scaling factors are given explicitly
    if args.stable.alpha.is_some() && (args.semi_b.is_none() || args.a_factor.is_some()) {
        let p = stable_params(&args.stable)?;
        let factors = args.a_factor.clone().unwrap_or_else(|| vec![2.0]);
        let mut reports = Vec::new();
        for a in factors {
            let r = check_stability_on(&p, a, &zs, args.tol)?;
            let _ = writeln!(
                summary,
                "stability a = {a}: b = {}, c = {}, max error {:.3e}: {}",
                r.b_used,
                r.c_used,
                r.max_modulus_error,
                if r.passed { "pass" } else { "FAIL" }
            );
            passed &= r.passed;
            reports.push(r);
        }
        results.insert("params".into(), to_json(&p));
        results.insert("stability".into(), to_json(&reports));
        ran = true;
    }

    if let Some(b) = args.semi_b {
        let alpha = args
            .stable
            .alpha
            .ok_or_else(|| CliError::Param("the semi-stable check needs --alpha".into()))?;
        let z_max = zs.iter().fold(0.0f64, |m, z| m.max(z.abs())) * b;
        let spec = match args.terms {
            Some(t) => SemiStableSpec::new(b, alpha, args.x0, t)?,
            None => {
                SemiStableSpec::with_auto_truncation(b, alpha, args.x0, z_max, args.tol * 1e-2)?
            }
        };
        let bound = spec.remainder_bound(z_max);
        if !(bound <= args.tol) {
            warnings.push(format!(
                "truncation at {} terms leaves a remainder bound of {bound:.3e}",
                spec.truncation
            ));
        }
        let r = check_semistability(&spec, &zs, args.tol)?;
        let _ = writeln!(
            summary,
            "semi-stability b = {b}, a = b^alpha = {}: translation {}, max error {:.3e}: {}",
            r.a,
            r.c_used,
            r.max_modulus_error,
            if r.passed { "pass" } else { "FAIL" }
        );
        passed &= r.passed;
        results.insert("semistable_spec".into(), to_json(&spec));
        results.insert("semistability".into(), to_json(&r));
        ran = true;
    }

    if !ran {
        return Err(CliError::Param(
            "check needs --alpha (stability) and/or --semi-b (semi-stability)".into(),
        ));
    }
    results.insert("z_grid".into(), to_json(&zs));
    results.insert("passed".into(), Value::Bool(passed));
    Ok(Outcome {
        results: Value::Object(results),
        warnings,
        summary,
        passed,
    })
}
