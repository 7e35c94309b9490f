//! Command-line front end: single evaluations, sweeps, projections,
//! proximal-point solving, and regeneration of the reference figure
//! datasets as CSV/JSON.
//!
//! Exit codes: 0 ok, 1 usage/parse, 2 infeasible, 3 non-convergence,
//! 4 internal. CSV output is deterministic: fixed 12-significant-digit
//! decimal formatting, "." separator, "\n" line endings; non-finite values
//! appear as "inf"/"-inf"/"nan". JSON mirrors the library field names and
//! replaces non-finite values with null plus a reason.

use crate::asymptotics::{self, SweepRecord};
use crate::envelope::{left_gradient, right_gradient, Side};
use crate::error::{Error, Result};
use crate::legendre::LegendreKernel;
use crate::objective::{ConvexObjective, ScalarObjective};
use crate::projector::{self, ProjectionSpec};
use crate::prox::{self, ProxOutcome};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Envelope,
    Prox,
    Project,
    Sweep,
    Solve,
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub kernel: String,
    pub theta: String,
    pub side: Side,
    pub gammas: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub set: Option<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Envelope,
            kernel: "energy".into(),
            theta: "abs:0.5".into(),
            side: Side::Left,
            gammas: vec![],
            points: vec![],
            set: None,
            format: Format::Csv,
            out: None,
            tol: prox::DEFAULT_TOL,
            max_iter: 500,
        }
    }
}

const USAGE: &str = "usage: bregman <envelope|prox|project|sweep|solve|figures> [flags]
  --kernel energy|bs|fd      kernel (default energy)
  --theta GRAMMAR            objective: abs:<c> | ind:<a>,<b> | quad:<a>,<c>;
                             comma-separated list for one piece per coordinate
  --side left|right          envelope/prox side (default left)
  --gamma G                  single positive gamma
  --gammas lo:hi:logsteps=N  log-spaced gamma grid
  --point p1,p2,...          evaluation point (multi-coordinate)
  --grid lo:hi:step          1-D point grid
  --set box:<lo>,<hi>;... | hyp:a1,a2,...=b
  --format csv|json          output format (default csv)
  --out PATH                 output file (figures: output directory)
  --tol T                    tolerance override (default 1e-10)
  --max-iter N               iteration cap for solve (default 500)";

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::InvalidParameter(format!("cannot parse {what} `{s}`")))
}

/// Objective grammar: `abs:<c>`, `ind:<a>,<b>`, `quad:<a>,<c>`, combined
/// into per-coordinate lists by commas ("abs:0.5,quad:1,0" is a 2-D
/// objective: |t−½| on the first coordinate, ½(t)² on the second).
pub fn parse_theta(s: &str) -> Result<ConvexObjective> {
    let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
    for token in s.split(',') {
        let token = token.trim();
        if let Some(rest) = token
            .strip_prefix("abs:")
            .map(|r| ("abs", r))
            .or_else(|| token.strip_prefix("ind:").map(|r| ("ind", r)))
            .or_else(|| token.strip_prefix("quad:").map(|r| ("quad", r)))
        {
            let (family, first) = rest;
            groups.push((family.to_string(), vec![parse_f64(first, "objective parameter")?]));
        } else if let Some(last) = groups.last_mut() {
            last.1.push(parse_f64(token, "objective parameter")?);
        } else {
            return Err(Error::InvalidParameter(format!(
                "objective must start with abs:/ind:/quad:, got `{s}`"
            )));
        }
    }
    if groups.is_empty() {
        return Err(Error::InvalidParameter("empty objective".into()));
    }
    let mut pieces = Vec::with_capacity(groups.len());
    for (family, params) in groups {
        let piece = match (family.as_str(), params.as_slice()) {
            ("abs", [c]) => ScalarObjective::abs_deviation(*c),
            ("ind", [a, b]) => ScalarObjective::indicator_interval(*a, *b)?,
            ("quad", [a, c]) => ScalarObjective::quadratic(*a, *c)?,
            (f, p) => {
                return Err(Error::InvalidParameter(format!(
                    "objective `{f}` takes {} parameters, got {}",
                    if f == "abs" { 1 } else { 2 },
                    p.len()
                )))
            }
        };
        pieces.push(piece);
    }
    ConvexObjective::new(s.to_string(), pieces)
}

/// `lo:hi:logsteps=N` → N log-spaced values from lo to hi inclusive.
pub fn parse_gamma_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 || !parts[2].starts_with("logsteps=") {
        return Err(Error::InvalidParameter(format!(
            "gamma grid must be lo:hi:logsteps=N, got `{s}`"
        )));
    }
    let lo = parse_f64(parts[0], "gamma grid lower end")?;
    let hi = parse_f64(parts[1], "gamma grid upper end")?;
    let n: usize = parts[2]["logsteps=".len()..]
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad logsteps in `{s}`")))?;
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(Error::InvalidParameter(
            "gamma grid needs 0 < lo < hi and at least 2 steps".into(),
        ));
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect())
}

/// `lo:hi:step` → ascending 1-D grid, endpoints inclusive up to rounding.
pub fn parse_point_grid(s: &str) -> Result<Vec<Vec<f64>>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidParameter(format!(
            "point grid must be lo:hi:step, got `{s}`"
        )));
    }
    let lo = parse_f64(parts[0], "grid lower end")?;
    let hi = parse_f64(parts[1], "grid upper end")?;
    let step = parse_f64(parts[2], "grid step")?;
    if !(step > 0.0 && hi >= lo) {
        return Err(Error::InvalidParameter("grid needs hi >= lo and step > 0".into()));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| vec![lo + step * i as f64]).collect())
}

pub fn parse_set(s: &str) -> Result<ProjectionSpec> {
    if let Some(body) = s.strip_prefix("box:") {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for pair in body.split(';') {
            let ends: Vec<&str> = pair.split(',').collect();
            if ends.len() != 2 {
                return Err(Error::InvalidSet(format!("box coordinate `{pair}` needs lo,hi")));
            }
            lower.push(parse_f64(ends[0], "box lower bound")?);
            upper.push(parse_f64(ends[1], "box upper bound")?);
        }
        ProjectionSpec::interval_box(lower, upper)
    } else if let Some(body) = s.strip_prefix("hyp:") {
        let halves: Vec<&str> = body.split('=').collect();
        if halves.len() != 2 {
            return Err(Error::InvalidSet(format!("hyperplane `{s}` needs a1,a2,...=b")));
        }
        let normal = halves[0]
            .split(',')
            .map(|t| parse_f64(t, "hyperplane coefficient"))
            .collect::<Result<Vec<f64>>>()?;
        let offset = parse_f64(halves[1], "hyperplane offset")?;
        ProjectionSpec::hyperplane(normal, offset)
    } else {
        Err(Error::InvalidSet(format!("set must be box:... or hyp:..., got `{s}`")))
    }
}

pub fn parse_args(args: &[String]) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut it = args.iter();
    let cmd = it
        .next()
        .ok_or_else(|| Error::InvalidParameter("missing command".into()))?;
    cfg.command = match cmd.as_str() {
        "envelope" => Command::Envelope,
        "prox" => Command::Prox,
        "project" => Command::Project,
        "sweep" => Command::Sweep,
        "solve" => Command::Solve,
        "figures" => Command::Figures,
        other => {
            return Err(Error::InvalidParameter(format!("unknown command `{other}`")));
        }
    };
    let mut gamma_single: Option<f64> = None;
    let mut gamma_grid: Option<Vec<f64>> = None;
    let mut point_single: Option<Vec<f64>> = None;
    let mut point_grid: Option<Vec<Vec<f64>>> = None;
    while let Some(flag) = it.next() {
        let mut value = || {
            it.next()
                .ok_or_else(|| Error::InvalidParameter(format!("flag {flag} needs a value")))
        };
        match flag.as_str() {
            "--kernel" => cfg.kernel = value()?.clone(),
            "--theta" => cfg.theta = value()?.clone(),
            "--side" => cfg.side = value()?.parse()?,
            "--gamma" => gamma_single = Some(parse_f64(value()?, "gamma")?),
            "--gammas" => gamma_grid = Some(parse_gamma_grid(value()?)?),
            "--point" => {
                point_single = Some(
                    value()?
                        .split(',')
                        .map(|t| parse_f64(t, "point coordinate"))
                        .collect::<Result<Vec<f64>>>()?,
                )
            }
            "--grid" => point_grid = Some(parse_point_grid(value()?)?),
            "--set" => cfg.set = Some(value()?.clone()),
            "--format" => {
                cfg.format = match value()?.as_str() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "format must be csv or json, got `{other}`"
                        )))
                    }
                }
            }
            "--out" => cfg.out = Some(PathBuf::from(value()?)),
            "--tol" => cfg.tol = parse_f64(value()?, "tolerance")?,
            "--max-iter" => {
                cfg.max_iter = value()?
                    .parse()
                    .map_err(|_| Error::InvalidParameter("bad --max-iter".into()))?
            }
            other => {
                return Err(Error::InvalidParameter(format!("unknown flag `{other}`")));
            }
        }
    }
    if gamma_single.is_some() && gamma_grid.is_some() {
        return Err(Error::InvalidParameter("--gamma and --gammas are exclusive".into()));
    }
    if point_single.is_some() && point_grid.is_some() {
        return Err(Error::InvalidParameter("--point and --grid are exclusive".into()));
    }
    cfg.gammas = gamma_grid
        .or_else(|| gamma_single.map(|g| vec![g]))
        .unwrap_or_default();
    cfg.points = point_grid
        .or_else(|| point_single.map(|p| vec![p]))
        .unwrap_or_default();
    if cfg.gammas.iter().any(|&g| g.is_nan() || g <= 0.0) {
        return Err(Error::InvalidParameter("gamma values must be positive".into()));
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    Ok(cfg)
}

/// Fixed 12-significant-digit plain decimal; non-finite values spelled
/// "inf"/"-inf"/"nan".
pub fn format_sig(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:e}");
    let exp: i32 = sci.split('e').nth(1).unwrap().parse().unwrap();
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn kernel_from(cfg: &RunConfig) -> Result<LegendreKernel> {
    LegendreKernel::from_name(&cfg.kernel).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "unknown kernel `{}` (expected energy|bs|fd)",
            cfg.kernel
        ))
    })
}

// ---------------------------------------------------------------------
// row assembly

struct EvalRow {
    point: Vec<f64>,
    gamma: f64,
    side: Side,
    value: f64,
    prox: Option<Vec<f64>>,
    gradient: Option<Vec<f64>>,
    branch: &'static str,
    residual: f64,
    iterations: u32,
    reason: String,
}

#[derive(Serialize)]
struct JsonEvalRow {
    point: Vec<f64>,
    gamma: f64,
    side: &'static str,
    value: Option<f64>,
    prox_point: Option<Vec<f64>>,
    gradient: Option<Vec<f64>>,
    branch: &'static str,
    residual: Option<f64>,
    iterations: u32,
    reason: Option<String>,
}

fn finite_or_none(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn join_coords(v: Option<&[f64]>, dim: usize) -> String {
    match v {
        Some(xs) => xs.iter().map(|&x| format_sig(x)).collect::<Vec<_>>().join(","),
        None => vec!["nan"; dim].join(","),
    }
}

fn eval_rows_to_csv(rows: &[EvalRow], dim: usize) -> String {
    let mut s = String::new();
    let coord_header = |stem: &str| {
        (0..dim)
            .map(|j| format!("{stem}{j}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    let _ = writeln!(
        s,
        "{},gamma,side,value,{},{},branch,residual,iterations,reason",
        coord_header("point"),
        coord_header("prox"),
        coord_header("grad"),
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            join_coords(Some(&r.point), dim),
            format_sig(r.gamma),
            r.side.as_str(),
            format_sig(r.value),
            join_coords(r.prox.as_deref(), dim),
            join_coords(r.gradient.as_deref(), dim),
            r.branch,
            format_sig(r.residual),
            r.iterations,
            r.reason,
        );
    }
    s
}

fn eval_rows_to_json(rows: &[EvalRow]) -> String {
    let out: Vec<JsonEvalRow> = rows
        .iter()
        .map(|r| JsonEvalRow {
            point: r.point.clone(),
            gamma: r.gamma,
            side: r.side.as_str(),
            value: finite_or_none(r.value),
            prox_point: r.prox.clone(),
            gradient: r.gradient.clone(),
            branch: r.branch,
            residual: finite_or_none(r.residual),
            iterations: r.iterations,
            reason: if r.reason.is_empty() {
                if r.value.is_finite() {
                    None
                } else {
                    Some(format_sig(r.value))
                }
            } else {
                Some(r.reason.clone())
            },
        })
        .collect();
    serde_json::to_string_pretty(&out).expect("serialization cannot fail") + "\n"
}

fn eval_row(
    k: &LegendreKernel,
    th: &ConvexObjective,
    gamma: f64,
    point: &[f64],
    side: Side,
    tol: f64,
) -> EvalRow {
    let in_scope = match side {
        Side::Left => k.in_interior(point),
        Side::Right => k.in_domain(point),
    };
    if !in_scope {
        return EvalRow {
            point: point.to_vec(),
            gamma,
            side,
            value: f64::INFINITY,
            prox: None,
            gradient: None,
            branch: "none",
            residual: f64::NAN,
            iterations: 0,
            reason: match side {
                Side::Left => "point outside int dom f".into(),
                Side::Right => "point outside dom f".into(),
            },
        };
    }
    let solved: Result<ProxOutcome> = match side {
        Side::Left => prox::left_prox(k, th, gamma, point, tol),
        Side::Right => prox::right_prox(k, th, gamma, point, tol),
    };
    match solved {
        Ok(out) => {
            let gradient = if k.in_interior(point) {
                match side {
                    Side::Left => left_gradient(k, gamma, point, &out.point).ok(),
                    Side::Right => right_gradient(k, gamma, point, &out.point).ok(),
                }
            } else {
                None
            };
            EvalRow {
                point: point.to_vec(),
                gamma,
                side,
                value: out.envelope_value,
                prox: Some(out.point.clone()),
                gradient,
                branch: out.branch.as_str(),
                residual: out.residual,
                iterations: out.iterations,
                reason: String::new(),
            }
        }
        Err(e) => EvalRow {
            point: point.to_vec(),
            gamma,
            side,
            value: f64::NAN,
            prox: None,
            gradient: None,
            branch: "none",
            residual: f64::NAN,
            iterations: 0,
            reason: e.to_string(),
        },
    }
}

// ---------------------------------------------------------------------
// commands

fn write_output(cfg: &RunConfig, content: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_eval(cfg: &RunConfig) -> Result<()> {
    let k = kernel_from(cfg)?;
    let th = parse_theta(&cfg.theta)?;
    if cfg.points.is_empty() {
        return Err(Error::InvalidParameter("--point or --grid required".into()));
    }
    let gammas = if cfg.gammas.is_empty() {
        vec![1.0]
    } else {
        cfg.gammas.clone()
    };
    let dim = cfg.points[0].len();
    let mut rows = Vec::with_capacity(cfg.points.len() * gammas.len());
    for p in &cfg.points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.len(),
            });
        }
        for &g in &gammas {
            rows.push(eval_row(&k, &th, g, p, cfg.side, cfg.tol));
        }
    }
    let content = match cfg.format {
        Format::Csv => eval_rows_to_csv(&rows, dim),
        Format::Json => eval_rows_to_json(&rows),
    };
    write_output(cfg, &content)
}

fn cmd_project(cfg: &RunConfig) -> Result<()> {
    let k = kernel_from(cfg)?;
    let set = parse_set(
        cfg.set
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("--set required for project".into()))?,
    )?;
    let point = cfg
        .points
        .first()
        .ok_or_else(|| Error::InvalidParameter("--point required for project".into()))?;
    let p = match cfg.side {
        Side::Left => projector::left_project(&k, &set, point, cfg.tol)?,
        Side::Right => projector::right_project(&k, &set, point, cfg.tol)?,
    };
    let content = match cfg.format {
        Format::Csv => format!(
            "{}\n",
            p.iter().map(|&x| format_sig(x)).collect::<Vec<_>>().join(",")
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct P {
                point: Vec<f64>,
            }
            serde_json::to_string_pretty(&P { point: p }).unwrap() + "\n"
        }
    };
    write_output(cfg, &content)
}

fn sweep_to_csv(records: &[SweepRecord], report: &asymptotics::LimitReport) -> String {
    let dim = records[0].base_point.len();
    let mut s = String::new();
    let coord_header = |stem: &str| {
        (0..dim)
            .map(|j| format!("{stem}{j}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    let _ = writeln!(
        s,
        "gamma,side,{},{},theta_at_prox,bregman_term,scaled_term,envelope",
        coord_header("point"),
        coord_header("prox"),
    );
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            format_sig(r.gamma),
            r.side,
            join_coords(Some(&r.base_point), dim),
            join_coords(Some(&r.prox_point), dim),
            format_sig(r.theta_at_prox),
            format_sig(r.bregman_term),
            format_sig(r.scaled_term),
            format_sig(r.envelope),
        );
    }
    for c in &report.checks {
        let _ = writeln!(
            s,
            "# {}: {} gap={} trend={}",
            c.name,
            if c.passed { "pass" } else { "fail" },
            format_sig(c.gap),
            if c.trend_ok { "ok" } else { "violated" },
        );
    }
    s
}

fn cmd_sweep(cfg: &RunConfig) -> Result<()> {
    let k = kernel_from(cfg)?;
    let th = parse_theta(&cfg.theta)?;
    let point = cfg
        .points
        .first()
        .ok_or_else(|| Error::InvalidParameter("--point required for sweep".into()))?;
    let gammas = if cfg.gammas.is_empty() {
        asymptotics::default_gamma_grid()
    } else {
        cfg.gammas.clone()
    };
    let records = asymptotics::gamma_sweep(&k, &th, point, cfg.side, &gammas)?;
    let report = asymptotics::limit_report(&th, &records, asymptotics::DEFAULT_LIMIT_TOL)?;
    let content = match cfg.format {
        Format::Csv => sweep_to_csv(&records, &report),
        Format::Json => {
            #[derive(Serialize)]
            struct SweepDoc<'a> {
                records: &'a [SweepRecord],
                report: &'a asymptotics::LimitReport,
            }
            serde_json::to_string_pretty(&SweepDoc {
                records: &records,
                report: &report,
            })
            .unwrap()
                + "\n"
        }
    };
    write_output(cfg, &content)
}

fn cmd_solve(cfg: &RunConfig) -> Result<()> {
    let k = kernel_from(cfg)?;
    let th = parse_theta(&cfg.theta)?;
    let x0 = cfg
        .points
        .first()
        .ok_or_else(|| Error::InvalidParameter("--point required for solve".into()))?;
    let gamma = *cfg.gammas.first().unwrap_or(&1.0);
    let out = prox::proximal_point_solve(&k, &th, gamma, x0, cfg.max_iter, cfg.tol)?;
    if out.certificate.is_unknown() {
        eprintln!("warning: coercivity not certified; uniqueness is best-effort");
    }
    let dim = x0.len();
    let content = match cfg.format {
        Format::Csv => {
            let mut s = String::new();
            let coords = (0..dim)
                .map(|j| format!("point{j}"))
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(s, "iter,{coords},step");
            let mut prev: Option<&Vec<f64>> = None;
            for (i, x) in out.trajectory.iter().enumerate() {
                let step = prev
                    .map(|p| {
                        x.iter()
                            .zip(p)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0f64, f64::max)
                    })
                    .unwrap_or(f64::NAN);
                let _ = writeln!(s, "{},{},{}", i, join_coords(Some(x), dim), format_sig(step));
                prev = Some(x);
            }
            let _ = writeln!(s, "# converged: {}", out.converged);
            let _ = writeln!(
                s,
                "# fixed_point_residual: {}",
                format_sig(out.fixed_point_residual)
            );
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct SolveDoc {
                trajectory: Vec<Vec<f64>>,
                final_point: Vec<f64>,
                iterations: usize,
                converged: bool,
                fixed_point_residual: f64,
            }
            serde_json::to_string_pretty(&SolveDoc {
                trajectory: out.trajectory.clone(),
                final_point: out.final_point.clone(),
                iterations: out.iterations,
                converged: out.converged,
                fixed_point_residual: out.fixed_point_residual,
            })
            .unwrap()
                + "\n"
        }
    };
    write_output(cfg, &content)?;
    if !out.converged {
        return Err(Error::NonConvergence(out.iterations));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// figures

const FIGURE_GAMMAS: [f64; 5] = [2.0, 1.0, 0.5, 0.25, 0.1];

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

#[derive(Serialize)]
struct CurveRow {
    point: f64,
    gamma: f64,
    value: Option<f64>,
}

fn curve_file(rows: &[(f64, f64, f64)], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("point,gamma,value\n");
            for &(p, g, v) in rows {
                let _ = writeln!(s, "{},{},{}", format_sig(p), format_sig(g), format_sig(v));
            }
            s
        }
        Format::Json => {
            let rows: Vec<CurveRow> = rows
                .iter()
                .map(|&(p, g, v)| CurveRow {
                    point: p,
                    gamma: g,
                    value: finite_or_none(v),
                })
                .collect();
            serde_json::to_string_pretty(&rows).unwrap() + "\n"
        }
    }
}

/// Regenerate every figure dataset into `dir`, one file per figure panel.
/// Returns the written paths. Output is deterministic byte-for-byte.
pub fn write_figures(dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Internal(format!("cannot create {}: {e}", dir.display())))?;
    let th = crate::objective::objective_abs_deviation(0.5);
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut written = Vec::new();
    let mut emit = |name: &str, content: String| -> Result<()> {
        let path = dir.join(format!("{name}.{ext}"));
        std::fs::write(&path, content)
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
        written.push(path);
        Ok(())
    };

    // Bregman term and scaled term of the left prox across gamma
    // (energy kernel, base point 2).
    let k = LegendreKernel::from_name("energy").unwrap();
    let gammas: Vec<f64> = (0..101)
        .map(|i| 10f64.powf(-4.0 + 8.0 * i as f64 / 100.0))
        .collect();
    let records = asymptotics::gamma_sweep(&k, &th, &[2.0], Side::Left, &gammas)?;
    let breg: Vec<(f64, f64, f64)> = records
        .iter()
        .map(|r| (r.gamma, r.gamma, r.bregman_term))
        .collect();
    let scaled: Vec<(f64, f64, f64)> = records
        .iter()
        .map(|r| (r.gamma, r.gamma, r.scaled_term))
        .collect();
    emit(
        "fig1_bregman_term",
        match format {
            Format::Csv => {
                let mut s = String::from("gamma,value\n");
                for &(g, _, v) in &breg {
                    let _ = writeln!(s, "{},{}", format_sig(g), format_sig(v));
                }
                s
            }
            Format::Json => curve_file(&breg, format),
        },
    )?;
    emit(
        "fig1_scaled_term",
        match format {
            Format::Csv => {
                let mut s = String::from("gamma,value\n");
                for &(g, _, v) in &scaled {
                    let _ = writeln!(s, "{},{}", format_sig(g), format_sig(v));
                }
                s
            }
            Format::Json => curve_file(&scaled, format),
        },
    )?;

    // envelope and prox curves per kernel and side
    let panels: [(&str, &str, Side, f64, f64); 5] = [
        ("fig2", "energy", Side::Left, -2.0, 3.0),
        ("fig3", "bs", Side::Left, 0.01, 3.0),
        ("fig4", "bs", Side::Right, 0.0, 3.0),
        ("fig5", "fd", Side::Left, 0.01, 0.99),
        ("fig6", "fd", Side::Right, 0.0, 1.0),
    ];
    for (fig, kernel, side, lo, hi) in panels {
        let k = LegendreKernel::from_name(kernel).unwrap();
        let pts = grid(lo, hi, 0.01);
        let mut env_rows: Vec<(f64, f64, f64)> = Vec::new();
        let mut prox_rows: Vec<(f64, f64, f64)> = Vec::new();
        // θ itself as the γ→0 reference curve, tagged gamma = 0
        for &p in &pts {
            env_rows.push((p, 0.0, (p - 0.5).abs()));
        }
        for &g in &FIGURE_GAMMAS {
            for &p in &pts {
                let row = eval_row(&k, &th, g, &[p], side, prox::DEFAULT_TOL);
                env_rows.push((p, g, row.value));
                prox_rows.push((p, g, row.prox.map_or(f64::NAN, |v| v[0])));
            }
        }
        emit(&format!("{fig}_envelope"), curve_file(&env_rows, format))?;
        emit(&format!("{fig}_prox"), curve_file(&prox_rows, format))?;
    }
    Ok(written)
}

fn cmd_figures(cfg: &RunConfig) -> Result<()> {
    let dir = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("figures"));
    let written = write_figures(&dir, cfg.format)?;
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::InvalidSet(_) | Error::DimensionMismatch { .. } => 1,
        Error::InfeasibleSet | Error::InfeasibleBracket => 2,
        Error::NonConvergence(_) | Error::SolverFailure(_) | Error::UnboundedConjugate(_) => 3,
        _ => 4,
    }
}

/// Run with explicit arguments (command first, no binary name); returns the
/// process exit code.
pub fn run(args: &[String]) -> i32 {
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("{USAGE}");
            return 1;
        }
    };
    let result = match cfg.command {
        Command::Envelope | Command::Prox => cmd_eval(&cfg),
        Command::Project => cmd_project(&cfg),
        Command::Sweep => cmd_sweep(&cfg),
        Command::Solve => cmd_solve(&cfg),
        Command::Figures => cmd_figures(&cfg),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    run(&args)
}
