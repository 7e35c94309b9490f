//! Left and right Bregman–Moreau envelopes, their gradients, the scaling
//! law and the Fenchel-conjugate identities.
//!
//! Envelope values always go through the prox and the identity
//! env = θ(prox) + (1/γ)·D-term; the grid infimum lives in the oracle
//! module and serves as the independent check.

use crate::error::{Error, Result};
use crate::legendre::{kernel_energy, LegendreKernel};
use crate::objective::{ConvexObjective, ObjectiveFamily, ScalarObjective};
use crate::oracle;
use crate::prox::{left_prox, right_prox, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::InvalidParameter(format!(
                "side must be `left` or `right`, got `{other}`"
            ))),
        }
    }
}

/// One envelope evaluation.
#[derive(Debug, Clone)]
pub struct EnvelopeSample {
    pub point: Vec<f64>,
    pub gamma: f64,
    pub side: Side,
    pub value: f64,
    pub gradient: Option<Vec<f64>>,
    pub prox_point: Option<Vec<f64>>,
}

/// ∇benv_γθ(y) = (1/γ) ∇²f(y) (y − bprox(y)), coordinate-wise.
pub fn left_gradient(
    k: &LegendreKernel,
    gamma: f64,
    y: &[f64],
    prox_point: &[f64],
) -> Result<Vec<f64>> {
    y.iter()
        .zip(prox_point)
        .map(|(&yi, &pi)| Ok(k.hess(yi)? * (yi - pi) / gamma))
        .collect()
}

/// ∇fenv_γθ(x) = (1/γ)(∇f(x) − ∇f(fprox(x))), coordinate-wise.
pub fn right_gradient(
    k: &LegendreKernel,
    gamma: f64,
    x: &[f64],
    prox_point: &[f64],
) -> Result<Vec<f64>> {
    x.iter()
        .zip(prox_point)
        .map(|(&xi, &pi)| Ok((k.grad(xi)? - k.grad(pi)?) / gamma))
        .collect()
}

/// Left envelope at y. Outside U the value is +∞ (the envelope's domain is
/// exactly U), reported as a sample rather than an error.
pub fn left_envelope(
    k: &LegendreKernel,
    th: &ConvexObjective,
    gamma: f64,
    y: &[f64],
    want_gradient: bool,
) -> Result<EnvelopeSample> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be a positive finite scalar, got {gamma}"
        )));
    }
    if !k.in_interior(y) {
        return Ok(EnvelopeSample {
            point: y.to_vec(),
            gamma,
            side: Side::Left,
            value: f64::INFINITY,
            gradient: None,
            prox_point: None,
        });
    }
    let out = left_prox(k, th, gamma, y, DEFAULT_TOL)?;
    let gradient = if want_gradient {
        Some(left_gradient(k, gamma, y, &out.point)?)
    } else {
        None
    };
    Ok(EnvelopeSample {
        point: y.to_vec(),
        gamma,
        side: Side::Left,
        value: out.envelope_value,
        gradient,
        prox_point: Some(out.point),
    })
}

/// Right envelope at x; finite on all of dom f, +∞ outside. The gradient
/// additionally needs x ∈ U.
pub fn right_envelope(
    k: &LegendreKernel,
    th: &ConvexObjective,
    gamma: f64,
    x: &[f64],
    want_gradient: bool,
) -> Result<EnvelopeSample> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be a positive finite scalar, got {gamma}"
        )));
    }
    if !k.in_domain(x) {
        return Ok(EnvelopeSample {
            point: x.to_vec(),
            gamma,
            side: Side::Right,
            value: f64::INFINITY,
            gradient: None,
            prox_point: None,
        });
    }
    let out = right_prox(k, th, gamma, x, DEFAULT_TOL)?;
    let gradient = if want_gradient && k.in_interior(x) {
        Some(right_gradient(k, gamma, x, &out.point)?)
    } else {
        None
    };
    Ok(EnvelopeSample {
        point: x.to_vec(),
        gamma,
        side: Side::Right,
        value: out.envelope_value,
        gradient,
        prox_point: Some(out.point),
    })
}

/// Dispatch on side.
pub fn envelope(
    k: &LegendreKernel,
    th: &ConvexObjective,
    gamma: f64,
    point: &[f64],
    side: Side,
    want_gradient: bool,
) -> Result<EnvelopeSample> {
    match side {
        Side::Left => left_envelope(k, th, gamma, point, want_gradient),
        Side::Right => right_envelope(k, th, gamma, point, want_gradient),
    }
}

/// θ scaled by a positive factor, preserving structure where possible.
pub(crate) fn scale_objective(th: &ConvexObjective, factor: f64) -> Result<ConvexObjective> {
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "scaling factor must be positive, got {factor}"
        )));
    }
    let pieces = th
        .pieces()
        .iter()
        .map(|p| scale_piece(p, factor))
        .collect::<Result<Vec<_>>>()?;
    ConvexObjective::new(format!("{}*{factor}", th.name()), pieces)
}

fn scale_piece(p: &ScalarObjective, factor: f64) -> Result<ScalarObjective> {
    match p.family() {
        // indicators are invariant under positive scaling
        ObjectiveFamily::IndicatorInterval { lower, upper } => {
            ScalarObjective::indicator_interval(lower, upper)
        }
        ObjectiveFamily::Quadratic { curvature, center } => {
            ScalarObjective::quadratic(factor * curvature, center)
        }
        _ => Ok(crate::objective::scaled_custom(p, factor)),
    }
}

/// Evaluates both sides of the scaling law env_μ(γθ) = γ·env_{γμ}(θ) with
/// two independent solves and returns the pair.
pub fn scaling_law_check(
    k: &LegendreKernel,
    th: &ConvexObjective,
    gamma: f64,
    mu: f64,
    point: &[f64],
    side: Side,
) -> Result<(f64, f64)> {
    let scaled = scale_objective(th, gamma)?;
    let lhs = envelope(k, &scaled, mu, point, side, false)?.value;
    let rhs = gamma * envelope(k, th, gamma * mu, point, side, false)?.value;
    Ok((lhs, rhs))
}

// Conjugate-evaluation bracket for one coordinate, wide enough to contain
// the supremum; `numeric_conjugate` expands it further on demand.
fn conjugate_bracket(k: &LegendreKernel, center: f64, gamma: f64) -> (f64, f64) {
    let (dlo, dhi) = k.domain();
    let w = gamma + 10.0 * (1.0 + center.abs());
    let lo = if dlo.is_finite() { dlo } else { center - w };
    let hi = if dhi.is_finite() { dhi } else { center + w };
    (lo, hi)
}

/// Gap of the Fenchel-conjugate identity, per side:
///
/// left, at y* ∈ U*:  |γ·benv_γθ(∇f*(y*)) − (f*(y*) − (γθ + f)*(y*))|
/// right, at x ∈ U:   |γ·fenv_γθ(x) − (f(x) − ((γθ ∘ ∇f*) + f*)*(x))|
///
/// Conjugates are evaluated numerically by the oracle, coordinate-wise.
pub fn conjugate_identity_gap(
    k: &LegendreKernel,
    th: &ConvexObjective,
    gamma: f64,
    point: &[f64],
    side: Side,
) -> Result<f64> {
    th.check_dim(point.len())?;
    match side {
        Side::Left => {
            let y: Vec<f64> = point.iter().map(|&s| k.conj_grad(s)).collect();
            if !k.in_interior(&y) {
                return Err(Error::NotInInterior);
            }
            let lhs = gamma * left_envelope(k, th, gamma, &y, false)?.value;
            let mut rhs = 0.0;
            for (j, &ystar) in point.iter().enumerate() {
                let piece = th.piece(j).clone();
                let g = |t: f64| gamma * piece.value(t) + k.value(t);
                let bracket = conjugate_bracket(k, k.conj_grad(ystar), gamma);
                let conj = oracle::numeric_conjugate(g, ystar, bracket, oracle::DEFAULT_ARG_TOL)?;
                rhs += k.conj(ystar) - conj;
            }
            Ok((lhs - rhs).abs())
        }
        Side::Right => {
            if !k.in_interior(point) {
                return Err(Error::NotInInterior);
            }
            let lhs = gamma * right_envelope(k, th, gamma, point, false)?.value;
            let mut rhs = 0.0;
            for (j, &x) in point.iter().enumerate() {
                let piece = th.piece(j).clone();
                let h = |s: f64| gamma * piece.value(k.conj_grad(s)) + k.conj(s);
                // the supremum sits near ∇f(x); expand from there
                let c = k.grad(x)?;
                let w = gamma + 10.0 * (1.0 + c.abs());
                let conj =
                    oracle::numeric_conjugate(h, x, (c - w, c + w), oracle::DEFAULT_ARG_TOL)?;
                rhs += k.value(x) - conj;
            }
            Ok((lhs - rhs).abs())
        }
    }
}

/// The classical Moreau envelope: the left (= right) envelope under the
/// energy kernel.
pub fn classical_envelope(th: &ConvexObjective, gamma: f64, y: &[f64]) -> Result<f64> {
    Ok(left_envelope(&kernel_energy(), th, gamma, y, false)?.value)
}
