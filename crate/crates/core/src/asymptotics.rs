//! γ-sweep harness: tracks prox, envelope and Bregman-term behaviour across
//! a γ grid and quantifies the small-γ / large-γ limits and the
//! monotonicity statements as numerical diagnostics.

use crate::bregman::scalar_distance;
use crate::envelope::Side;
use crate::error::{Error, Result};
use crate::legendre::LegendreKernel;
use crate::objective::ConvexObjective;
use crate::prox::{left_prox, right_prox, DEFAULT_TOL};
use serde::Serialize;

/// Slack allowed on the monotonicity comparisons between adjacent samples.
pub const MONOTONE_SLACK: f64 = 1e-10;
/// Default tolerance for the "limit achieved" checks on the default grid.
pub const DEFAULT_LIMIT_TOL: f64 = 1e-4;

/// One γ sample of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub gamma: f64,
    pub side: String,
    pub base_point: Vec<f64>,
    pub prox_point: Vec<f64>,
    pub theta_at_prox: f64,
    /// D_f(prox, base) on the left, D_f(base, prox) on the right.
    pub bregman_term: f64,
    /// (1/γ)·bregman_term.
    pub scaled_term: f64,
    pub envelope: f64,
}

/// 25 log-spaced γ values in [1e−6, 1e6].
pub fn default_gamma_grid() -> Vec<f64> {
    (0..25)
        .map(|i| 10f64.powf(-6.0 + 12.0 * i as f64 / 24.0))
        .collect()
}

/// One record per γ, via the prox and the envelope identity. `gammas` must
/// be sorted ascending and positive.
pub fn gamma_sweep(
    k: &LegendreKernel,
    th: &ConvexObjective,
    point: &[f64],
    side: Side,
    gammas: &[f64],
) -> Result<Vec<SweepRecord>> {
    if gammas.is_empty() {
        return Err(Error::InvalidParameter("empty gamma grid".into()));
    }
    if gammas.iter().any(|g| !g.is_finite()) {
        return Err(Error::InvalidParameter("gamma grid must be finite".into()));
    }
    for w in gammas.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidParameter(
                "gamma grid must be strictly ascending".into(),
            ));
        }
    }
    if gammas[0] <= 0.0 {
        return Err(Error::InvalidParameter("gamma values must be positive".into()));
    }
    let mut records = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let out = match side {
            Side::Left => left_prox(k, th, gamma, point, DEFAULT_TOL),
            Side::Right => right_prox(k, th, gamma, point, DEFAULT_TOL),
        }
        .map_err(|e| Error::SolverFailure(format!("sweep failed at gamma={gamma}: {e}")))?;
        let theta_at_prox = th.value(&out.point)?;
        let bregman_term = match side {
            Side::Left => pairwise_distance(k, &out.point, point),
            Side::Right => pairwise_distance(k, point, &out.point),
        };
        let scaled_term = bregman_term / gamma;
        records.push(SweepRecord {
            gamma,
            side: side.as_str().to_string(),
            base_point: point.to_vec(),
            prox_point: out.point,
            theta_at_prox,
            bregman_term,
            scaled_term,
            envelope: theta_at_prox + scaled_term,
        });
    }
    Ok(records)
}

// Boundary-tolerant distance used for the sweep records (a right prox can
// sit on the closed domain boundary when the base point does).
fn pairwise_distance(k: &LegendreKernel, x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let d = if k.interior_scalar(yi) {
            scalar_distance(k, xi, yi)
        } else if xi == yi {
            0.0
        } else {
            f64::INFINITY
        };
        s += d;
    }
    s.max(0.0)
}

/// One named diagnostic of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct LimitCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Achieved gap (worst monotonicity violation, or distance to the
    /// limit at the extreme γ).
    pub gap: f64,
    /// For limit checks: gaps shrank over the last three samples toward
    /// the extreme.
    pub trend_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub checks: Vec<LimitCheck>,
}

impl LimitReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&LimitCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn monotone_check(name: &'static str, values: &[f64], nonincreasing: bool) -> LimitCheck {
    let mut worst = 0.0f64;
    for w in values.windows(2) {
        let violation = if nonincreasing {
            w[1] - w[0]
        } else {
            w[0] - w[1]
        };
        worst = worst.max(violation);
    }
    LimitCheck {
        name,
        passed: worst <= MONOTONE_SLACK,
        gap: worst,
        trend_ok: true,
    }
}

// gaps listed from the extreme inward; pass = small at the extreme and
// shrinking over the last three samples.
fn limit_check(name: &'static str, gaps: &[f64], tol: f64) -> LimitCheck {
    let gap = gaps[0];
    let trend_ok = if gaps.len() >= 3 {
        gaps[0] <= gaps[1] + MONOTONE_SLACK && gaps[1] <= gaps[2] + MONOTONE_SLACK
    } else {
        true
    };
    LimitCheck {
        name,
        passed: gap <= tol && trend_ok,
        gap,
        trend_ok,
    }
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Diagnostics over a single-(point, side) sweep: envelope and θ(prox)
/// nonincreasing in γ, the Bregman term nondecreasing, envelope → θ(base)
/// and prox → base as γ↓0, envelope → inf θ and prox → the projection of
/// the base onto argmin θ as γ↑∞, and the scaled term → 0 as γ↓0.
///
/// The scaled term (1/γ)·D_f is deliberately NOT asserted monotone; it
/// generally is not.
pub fn limit_report(th: &ConvexObjective, records: &[SweepRecord], tol: f64) -> Result<LimitReport> {
    if records.len() < 2 {
        return Err(Error::InvalidParameter(
            "limit report needs at least two sweep records".into(),
        ));
    }
    let base = &records[0].base_point;
    if records
        .iter()
        .any(|r| r.base_point != *base || r.side != records[0].side)
    {
        return Err(Error::InvalidParameter(
            "limit report needs records from a single (point, side) sweep".into(),
        ));
    }
    let dim = base.len();
    let theta_base = th.value(base)?;

    let mut checks = Vec::new();
    let envelopes: Vec<f64> = records.iter().map(|r| r.envelope).collect();
    let thetas: Vec<f64> = records.iter().map(|r| r.theta_at_prox).collect();
    let bregs: Vec<f64> = records.iter().map(|r| r.bregman_term).collect();
    checks.push(monotone_check("envelope_nonincreasing", &envelopes, true));
    checks.push(monotone_check("theta_prox_nonincreasing", &thetas, true));
    checks.push(monotone_check("bregman_term_nondecreasing", &bregs, false));

    // γ ↓ 0 limits (records sorted ascending: first = smallest γ)
    let env_gaps: Vec<f64> = records
        .iter()
        .take(3)
        .map(|r| (r.envelope - theta_base).abs())
        .collect();
    checks.push(limit_check("envelope_to_theta_small_gamma", &env_gaps, tol));
    let prox_gaps: Vec<f64> = records
        .iter()
        .take(3)
        .map(|r| sup_distance(&r.prox_point, base))
        .collect();
    checks.push(limit_check("prox_to_base_small_gamma", &prox_gaps, tol));
    let scaled_gaps: Vec<f64> = records.iter().take(3).map(|r| r.scaled_term.abs()).collect();
    checks.push(limit_check("scaled_term_to_zero_small_gamma", &scaled_gaps, tol));

    // γ ↑ ∞ limits
    if let Some(inf) = th.known_inf(dim) {
        let gaps: Vec<f64> = records
            .iter()
            .rev()
            .take(3)
            .map(|r| (r.envelope - inf).abs())
            .collect();
        checks.push(limit_check("envelope_to_inf_large_gamma", &gaps, tol));
    }
    if let Some(argmin) = th.known_argmin(dim) {
        // singleton argmin: the Bregman projection of any base point onto
        // it is the argmin itself
        let gaps: Vec<f64> = records
            .iter()
            .rev()
            .take(3)
            .map(|r| sup_distance(&r.prox_point, &argmin))
            .collect();
        checks.push(limit_check("prox_to_argmin_projection_large_gamma", &gaps, tol));
    }
    Ok(LimitReport { checks })
}
