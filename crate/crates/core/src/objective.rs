//! Proper lsc convex objectives θ, represented per coordinate by a value
//! evaluator and a subgradient-interval evaluator [g_lo, g_hi]. That is all
//! the prox characterization 0 ∈ γ∂θ(x) + ∇f(x) − ∇f(y) needs.
//!
//! ±∞ interval endpoints encode normal cones of indicator functions. A
//! multi-coordinate objective is a sum of per-coordinate pieces; a single
//! piece broadcasts over every coordinate.

use crate::error::{Error, Result};
use std::sync::Arc;

type ValueFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type IntervalFn = Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>;

/// Structural family of a scalar piece; closed-form prox dispatch keys on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObjectiveFamily {
    /// θ(t) = |t − c|
    AbsDeviation { center: f64 },
    /// θ(t) = 0 on [a, b], +∞ outside
    IndicatorInterval { lower: f64, upper: f64 },
    /// θ(t) = ½ a (t − c)², a ≥ 0
    Quadratic { curvature: f64, center: f64 },
    Custom,
}

/// One coordinate of an objective.
#[derive(Clone)]
pub struct ScalarObjective {
    pub(crate) family: ObjectiveFamily,
    value: ValueFn,
    subgrad: IntervalFn,
    dom_lower: f64,
    dom_upper: f64,
    /// Non-smooth points; must include finite endpoints of dom θ.
    kinks: Vec<f64>,
    /// θ'' on smooth segments, when known (enables Newton acceleration).
    curvature: Option<f64>,
    known_argmin: Option<f64>,
    known_inf: Option<f64>,
}

impl ScalarObjective {
    pub fn family(&self) -> ObjectiveFamily {
        self.family
    }

    pub fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    /// Subgradient interval [g_lo, g_hi] at t; endpoints may be ±∞.
    /// Only meaningful on dom θ.
    pub fn subgrad(&self, t: f64) -> (f64, f64) {
        (self.subgrad)(t)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.dom_lower, self.dom_upper)
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn smooth_curvature(&self) -> Option<f64> {
        self.curvature
    }

    pub fn known_argmin(&self) -> Option<f64> {
        self.known_argmin
    }

    pub fn known_inf(&self) -> Option<f64> {
        self.known_inf
    }

    pub fn abs_deviation(c: f64) -> Self {
        ScalarObjective {
            family: ObjectiveFamily::AbsDeviation { center: c },
            value: Arc::new(move |t| (t - c).abs()),
            subgrad: Arc::new(move |t| {
                if t < c {
                    (-1.0, -1.0)
                } else if t > c {
                    (1.0, 1.0)
                } else {
                    (-1.0, 1.0)
                }
            }),
            dom_lower: f64::NEG_INFINITY,
            dom_upper: f64::INFINITY,
            kinks: vec![c],
            curvature: Some(0.0),
            known_argmin: Some(c),
            known_inf: Some(0.0),
        }
    }

    pub fn indicator_interval(a: f64, b: f64) -> Result<Self> {
        if a.is_nan() || b.is_nan() || a > b {
            return Err(Error::InvalidSet(format!("empty interval [{a}, {b}]")));
        }
        let mut kinks = vec![a];
        if b > a {
            kinks.push(b);
        }
        Ok(ScalarObjective {
            family: ObjectiveFamily::IndicatorInterval { lower: a, upper: b },
            value: Arc::new(move |t| if t >= a && t <= b { 0.0 } else { f64::INFINITY }),
            subgrad: Arc::new(move |t| {
                if t < a || t > b {
                    (f64::NAN, f64::NAN)
                } else {
                    let lo = if t == a { f64::NEG_INFINITY } else { 0.0 };
                    let hi = if t == b { f64::INFINITY } else { 0.0 };
                    (lo, hi)
                }
            }),
            dom_lower: a,
            dom_upper: b,
            kinks,
            curvature: Some(0.0),
            known_argmin: None,
            known_inf: Some(0.0),
        })
    }

    pub fn quadratic(a: f64, c: f64) -> Result<Self> {
        if a < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "quadratic curvature must be nonnegative, got {a}"
            )));
        }
        Ok(ScalarObjective {
            family: ObjectiveFamily::Quadratic {
                curvature: a,
                center: c,
            },
            value: Arc::new(move |t| 0.5 * a * (t - c) * (t - c)),
            subgrad: Arc::new(move |t| {
                let g = a * (t - c);
                (g, g)
            }),
            dom_lower: f64::NEG_INFINITY,
            dom_upper: f64::INFINITY,
            kinks: vec![],
            curvature: Some(a),
            known_argmin: if a > 0.0 { Some(c) } else { None },
            known_inf: Some(0.0),
        })
    }
}

/// A separable convex objective: one scalar piece per coordinate, or a
/// single piece broadcast over all coordinates. Immutable and thread-safe.
#[derive(Clone)]
pub struct ConvexObjective {
    name: String,
    pieces: Vec<ScalarObjective>,
}

impl std::fmt::Debug for ConvexObjective {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "ConvexObjective({}, {} pieces)", self.name, self.pieces.len())
    }
}

impl ConvexObjective {
    pub fn new(name: impl Into<String>, pieces: Vec<ScalarObjective>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidParameter("objective needs at least one piece".into()));
        }
        Ok(ConvexObjective {
            name: name.into(),
            pieces,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pieces(&self) -> &[ScalarObjective] {
        &self.pieces
    }

    /// The piece acting on coordinate j (broadcast when a single piece).
    pub fn piece(&self, j: usize) -> &ScalarObjective {
        if self.pieces.len() == 1 {
            &self.pieces[0]
        } else {
            &self.pieces[j]
        }
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.pieces.len() == 1 || self.pieces.len() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.pieces.len(),
                right: dim,
            })
        }
    }

    /// θ(x) = Σ_j θ_j(ξ_j), extended-real.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        let mut s = 0.0;
        for (j, &t) in x.iter().enumerate() {
            let v = self.piece(j).value(t);
            if v == f64::INFINITY {
                return Ok(f64::INFINITY);
            }
            s += v;
        }
        Ok(s)
    }

    /// Subgradient interval of the piece acting on coordinate j.
    pub fn subgrad_interval(&self, j: usize, t: f64) -> (f64, f64) {
        self.piece(j).subgrad(t)
    }

    /// Coordinate-wise minimizer when every piece has one.
    pub fn known_argmin(&self, dim: usize) -> Option<Vec<f64>> {
        (0..dim)
            .map(|j| self.piece(j).known_argmin())
            .collect::<Option<Vec<f64>>>()
    }

    /// Certified infimum over the whole space, when every piece knows one.
    pub fn known_inf(&self, dim: usize) -> Option<f64> {
        let mut s = 0.0;
        for j in 0..dim {
            s += self.piece(j).known_inf()?;
        }
        Some(s)
    }
}

/// A piece equal to `factor`·p, losing any closed-form family tag. Kinks,
/// domain and argmin are unchanged; value, subgradient interval, curvature
/// and infimum scale.
pub(crate) fn scaled_custom(p: &ScalarObjective, factor: f64) -> ScalarObjective {
    let v = p.value.clone();
    let s = p.subgrad.clone();
    ScalarObjective {
        family: ObjectiveFamily::Custom,
        value: Arc::new(move |t| factor * v(t)),
        subgrad: Arc::new(move |t| {
            let (lo, hi) = s(t);
            (factor * lo, factor * hi)
        }),
        dom_lower: p.dom_lower,
        dom_upper: p.dom_upper,
        kinks: p.kinks.clone(),
        curvature: p.curvature.map(|c| factor * c),
        known_argmin: p.known_argmin,
        known_inf: p.known_inf.map(|v| factor * v),
    }
}

/// θ(t) = |t − c| per coordinate.
pub fn objective_abs_deviation(c: f64) -> ConvexObjective {
    ConvexObjective {
        name: format!("abs:{c}"),
        pieces: vec![ScalarObjective::abs_deviation(c)],
    }
}

/// Indicator of [a, b] per coordinate; a ≤ b required.
pub fn objective_indicator_interval(a: f64, b: f64) -> Result<ConvexObjective> {
    Ok(ConvexObjective {
        name: format!("ind:{a},{b}"),
        pieces: vec![ScalarObjective::indicator_interval(a, b)?],
    })
}

/// θ(t) = ½ a (t − c)² per coordinate; a ≥ 0 required.
pub fn objective_quadratic(a: f64, c: f64) -> Result<ConvexObjective> {
    Ok(ConvexObjective {
        name: format!("quad:{a},{c}"),
        pieces: vec![ScalarObjective::quadratic(a, c)?],
    })
}
