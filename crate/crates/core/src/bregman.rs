//! Bregman distances D_f, the four-point identity and coercivity
//! certificates.
//!
//! D_f(x, y) = f(x) − f(y) − ⟨∇f(y), x − y⟩ for y ∈ U, +∞ otherwise.
//! The value is genuinely extended-real: +∞ is a first-class outcome, not
//! an overflow artifact.

use crate::error::{Error, Result};
use crate::legendre::{KernelKind, LegendreKernel};
use crate::objective::ConvexObjective;

/// One evaluated Bregman distance together with its arguments.
#[derive(Debug, Clone)]
pub struct BregmanEval {
    pub value: f64,
    pub left_point: Vec<f64>,
    pub right_point: Vec<f64>,
    pub kernel: String,
}

// a·ln(1 + num/den), with the 0·ln(0) = 0 convention when a = 0
fn entropy_term(a: f64, num: f64, den: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * (num / den).ln_1p()
    }
}

/// Scalar D_f for one coordinate; +∞ if y ∉ U or x ∉ dom f.
///
/// Built-in kernels evaluate their pairwise closed forms (½(x−y)² for the
/// energy, the Kullback–Leibler and Fermi–Dirac expressions through
/// `ln_1p`), which stay accurate where the generic
/// f(x) − f(y) − f'(y)(x−y) would cancel catastrophically — for x near y
/// the distance is of order (x−y)² while f itself can be enormous.
pub fn scalar_distance(k: &LegendreKernel, x: f64, y: f64) -> f64 {
    if !k.interior_scalar(y) || !k.domain_scalar(x) {
        return f64::INFINITY;
    }
    let delta = x - y;
    match k.kind() {
        KernelKind::Energy => 0.5 * delta * delta,
        // x ln(x/y) − x + y
        KernelKind::BoltzmannShannon => entropy_term(x, delta, y) - delta,
        // x ln(x/y) + (1−x) ln((1−x)/(1−y))
        KernelKind::FermiDirac => {
            entropy_term(x, delta, y) + entropy_term(1.0 - x, -delta, 1.0 - y)
        }
        KernelKind::Custom => {
            k.value_extended(x) - k.value_extended(y) - k.grad_unchecked(y) * delta
        }
    }
}

/// D_f(x, y) = Σ_j f(ξ_j) − f(η_j) − f'(η_j)(ξ_j − η_j); +∞ as soon as any
/// coordinate of y leaves U or any coordinate of x leaves dom f.
pub fn bregman_distance(k: &LegendreKernel, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let mut total = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let d = scalar_distance(k, xi, yi);
        if d == f64::INFINITY {
            return Ok(f64::INFINITY);
        }
        total += d;
    }
    // rounding can push a tiny distance below zero
    Ok(total.max(0.0))
}

pub fn bregman_eval(k: &LegendreKernel, x: &[f64], y: &[f64]) -> Result<BregmanEval> {
    Ok(BregmanEval {
        value: bregman_distance(k, x, y)?,
        left_point: x.to_vec(),
        right_point: y.to_vec(),
        kernel: k.name().to_string(),
    })
}

/// D_f(x1,y2) + D_f(x2,y1) − D_f(x1,y1) − D_f(x2,y2), which equals
/// ⟨∇f(y1) − ∇f(y2), x1 − x2⟩ whenever all four distances are finite.
pub fn four_point_gap(
    k: &LegendreKernel,
    x1: &[f64],
    x2: &[f64],
    y1: &[f64],
    y2: &[f64],
) -> Result<f64> {
    let a = bregman_distance(k, x1, y2)?;
    let b = bregman_distance(k, x2, y1)?;
    let c = bregman_distance(k, x1, y1)?;
    let d = bregman_distance(k, x2, y2)?;
    Ok(a + b - c - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoercivitySide {
    Left,
    Right,
}

/// Which structural condition makes θ + (1/γ)D_f(·, y) (left) or
/// θ + (1/γ)D_f(x, ·) (right) coercive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoercivityCondition {
    /// (a) U ∩ dom θ is bounded.
    BoundedIntersection,
    /// (b) inf θ(U) > −∞, certified from objective metadata.
    ObjectiveBoundedBelow,
    /// (c) f is supercoercive (left side only).
    KernelSupercoercive,
    /// (d) D_f(x, ·) is supercoercive for all x ∈ U (right side only).
    DistanceSupercoercive,
    /// Nothing certified; solving stays best-effort.
    Unknown,
}

#[derive(Debug, Clone, Copy)]
pub struct CoercivityCertificate {
    pub side: CoercivitySide,
    pub condition: CoercivityCondition,
}

impl CoercivityCertificate {
    pub fn is_unknown(&self) -> bool {
        self.condition == CoercivityCondition::Unknown
    }
}

fn intersection_nonempty(k: &LegendreKernel, th: &ConvexObjective) -> bool {
    let (ilo, ihi) = k.interior();
    th.pieces().iter().all(|p| {
        let (dlo, dhi) = p.domain();
        // open interval (ilo, ihi) must meet [dlo, dhi]
        dhi > ilo && dlo < ihi
    })
}

fn intersection_bounded(k: &LegendreKernel, th: &ConvexObjective) -> bool {
    let (ilo, ihi) = k.interior();
    th.pieces().iter().all(|p| {
        let (dlo, dhi) = p.domain();
        ilo.max(dlo).is_finite() && ihi.min(dhi).is_finite()
    })
}

/// Decide which coercivity condition holds for the pair (f, θ). Checked in
/// the order (a), (c)/(d), (b). `Unknown` downgrades uniqueness guarantees
/// to best-effort; it does not forbid solving.
pub fn coercivity_certificate(
    k: &LegendreKernel,
    th: &ConvexObjective,
    side: CoercivitySide,
) -> Result<CoercivityCertificate> {
    if !intersection_nonempty(k, th) {
        return Err(Error::InfeasibleSet);
    }
    let condition = if intersection_bounded(k, th) {
        CoercivityCondition::BoundedIntersection
    } else if side == CoercivitySide::Left && k.is_supercoercive() {
        CoercivityCondition::KernelSupercoercive
    } else if side == CoercivitySide::Right && k.is_second_slot_supercoercive() {
        CoercivityCondition::DistanceSupercoercive
    } else if th
        .pieces()
        .iter()
        .all(|p| p.known_inf().is_some_and(|v| v > f64::NEG_INFINITY))
    {
        CoercivityCondition::ObjectiveBoundedBelow
    } else {
        CoercivityCondition::Unknown
    };
    Ok(CoercivityCertificate { side, condition })
}
