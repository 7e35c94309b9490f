//! Independent brute-force verification: 1-D minimization by pre-scan plus
//! golden-section search, numeric Fenchel conjugates, and grid argmin scans.
//!
//! This module must not call the prox or envelope modules; it is the ground
//! truth they are tested against. Golden section was chosen precisely
//! because the main solvers bisect derivatives, so the two paths share no
//! logic.

use crate::error::{Error, Result};

const GOLDEN_RATIO_CONJ: f64 = 0.618_033_988_749_895; // (√5 − 1)/2
pub const DEFAULT_ARG_TOL: f64 = 1e-11;
const DEFAULT_PRESCAN: usize = 1024;

/// Outcome of a 1-D oracle minimization.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub argmin: f64,
    pub min_value: f64,
    /// Bracket the search ran on after the pre-scan shrink.
    pub bracket: (f64, f64),
    /// Golden-section iterations performed.
    pub refinement_depth: u32,
}

/// Minimize a unimodal (convex) objective on `bracket` to argument
/// tolerance `tol`, with the default 1024-point pre-scan.
pub fn minimize_1d(
    objective: impl Fn(f64) -> f64,
    bracket: (f64, f64),
    tol: f64,
) -> Result<OracleResult> {
    minimize_1d_with(objective, bracket, tol, DEFAULT_PRESCAN)
}

/// As `minimize_1d` with an explicit pre-scan density (used by the
/// self-consistency tests).
pub fn minimize_1d_with(
    objective: impl Fn(f64) -> f64,
    bracket: (f64, f64),
    tol: f64,
    prescan: usize,
) -> Result<OracleResult> {
    let (a, b) = bracket;
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidParameter(format!(
            "bracket must be a finite interval, got ({a}, {b})"
        )));
    }

    // Pre-scan: locate the basin and exclude +∞ regions. For a convex
    // objective the best grid point ±1 cell always brackets the minimum.
    let n = prescan.max(2);
    let step = (b - a) / n as f64;
    let mut best_i = usize::MAX;
    let mut best_v = f64::INFINITY;
    for i in 0..=n {
        let t = if i == n { b } else { a + step * i as f64 };
        let v = objective(t);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    if best_i == usize::MAX {
        return Err(Error::InfeasibleBracket);
    }
    let mut lo = a + step * best_i.saturating_sub(1) as f64;
    let mut hi = (a + step * (best_i + 1) as f64).min(b);
    if lo < a {
        lo = a;
    }

    // Golden section on [lo, hi].
    let shrunk = (lo, hi);
    let mut x1 = hi - GOLDEN_RATIO_CONJ * (hi - lo);
    let mut x2 = lo + GOLDEN_RATIO_CONJ * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    let mut depth = 0u32;
    while hi - lo > tol * x1.abs().max(1.0) && depth < 400 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN_RATIO_CONJ * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN_RATIO_CONJ * (hi - lo);
            f2 = objective(x2);
        }
        depth += 1;
    }
    let mut m = 0.5 * (lo + hi);
    let mut fm = objective(m);
    if f1 < fm {
        m = x1;
        fm = f1;
    }
    if f2 < fm {
        m = x2;
        fm = f2;
    }

    // Parabolic polish. Near a smooth minimum the objective is flat to
    // machine precision over a width ~sqrt(eps·|φ|/φ''), which golden
    // section cannot resolve below ~1e-8; a vertex fit through points h
    // apart recovers the argmin. At a kink the fit is wrong, so a
    // slope-jump guard skips it (golden is already exact there).
    let h = 1e-5 * m.abs().max(1.0);
    let (fa, fb) = (objective(m - h), objective(m + h));
    if fa.is_finite() && fb.is_finite() {
        let sl = (fm - fa) / h;
        let sr = (fb - fm) / h;
        let jump = sr - sl;
        let scale = 1.0 + sl.abs() + sr.abs();
        if jump > 0.0 && jump <= 0.2 * scale {
            let s = (fa - fb) / (2.0 * (fb - 2.0 * fm + fa));
            if s.is_finite() && s.abs() <= 1.0 {
                let cand = (m + s * h).clamp(a, b);
                let fc = objective(cand);
                // on the plateau fc and fm agree only to rounding; accept
                // the vertex unless it is genuinely worse
                if fc <= fm + 1e-12 * (1.0 + fm.abs()) {
                    m = cand;
                    fm = fc;
                }
            }
        }
    }

    Ok(OracleResult {
        argmin: m,
        min_value: fm,
        bracket: shrunk,
        refinement_depth: depth,
    })
}

/// g*(y*) = sup_x ⟨x, y*⟩ − g(x), computed by minimizing x ↦ g(x) − x·y*.
/// The bracket expands (up to 60 doublings) while the maximizer sits on an
/// edge; if it still does, the conjugate is reported unbounded.
pub fn numeric_conjugate(
    g: impl Fn(f64) -> f64,
    ystar: f64,
    bracket: (f64, f64),
    tol: f64,
) -> Result<f64> {
    let neg = |x: f64| g(x) - x * ystar;
    let (mut lo, mut hi) = bracket;
    for _ in 0..60 {
        let r = minimize_1d(neg, (lo, hi), tol)?;
        let cell = (hi - lo) / DEFAULT_PRESCAN as f64;
        let at_lo = r.argmin - lo <= 2.0 * cell;
        let at_hi = hi - r.argmin <= 2.0 * cell;
        if !at_lo && !at_hi {
            return Ok(-r.min_value);
        }
        let width = hi - lo;
        if at_lo {
            lo -= width;
        }
        if at_hi {
            hi += width;
        }
    }
    Err(Error::UnboundedConjugate(ystar))
}

/// Argmin over a regular grid on a box; ties break to the lowest index.
/// Test support only.
pub fn grid_argmin(
    objective: impl Fn(&[f64]) -> f64,
    bounds: &[(f64, f64)],
    resolution: f64,
) -> Vec<f64> {
    assert!(!bounds.is_empty() && resolution > 0.0);
    let counts: Vec<usize> = bounds
        .iter()
        .map(|&(lo, hi)| ((hi - lo) / resolution).round() as usize)
        .collect();
    let mut idx = vec![0usize; bounds.len()];
    let mut best = f64::INFINITY;
    let mut best_pt: Vec<f64> = bounds.iter().map(|&(lo, _)| lo).collect();
    let mut pt = vec![0.0; bounds.len()];
    loop {
        for (j, &(lo, _)) in bounds.iter().enumerate() {
            pt[j] = lo + idx[j] as f64 * resolution;
        }
        let v = objective(&pt);
        if v < best {
            best = v;
            best_pt.copy_from_slice(&pt);
        }
        // odometer increment
        let mut j = bounds.len();
        loop {
            if j == 0 {
                return best_pt;
            }
            j -= 1;
            if idx[j] < counts[j] {
                idx[j] += 1;
                break;
            }
            idx[j] = 0;
        }
    }
}
