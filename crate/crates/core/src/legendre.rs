//! Legendre kernels: the convex functions f whose Bregman distances drive
//! everything else.
//!
//! A kernel is a coordinate-separable Legendre function, described by its
//! scalar value f, derivative f', curvature f'', Fenchel conjugate f* and
//! conjugate derivative (f*)'. On the interior U of dom f the gradient is a
//! homeomorphism onto U* with inverse (f*)', which the solvers rely on.
//!
//! Three built-ins are provided: the energy ½t², the Boltzmann–Shannon
//! entropy t ln t − t on [0, ∞) and the Fermi–Dirac entropy
//! t ln t + (1−t) ln(1−t) on [0, 1]. Multi-dimensional behaviour is always
//! coordinate-wise.

use crate::error::{Error, Result};
use std::sync::Arc;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Which built-in (if any) a kernel is; closed-form dispatch keys on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Energy,
    BoltzmannShannon,
    FermiDirac,
    Custom,
}

/// A coordinate-separable Legendre kernel.
///
/// Immutable after construction; all evaluators are pure, so kernels can be
/// shared freely across threads.
#[derive(Clone)]
pub struct LegendreKernel {
    name: String,
    kind: KernelKind,
    dom_lower: f64,
    dom_upper: f64,
    int_lower: f64,
    int_upper: f64,
    supercoercive: bool,
    /// Whether D_f(x, ·) is supercoercive for every x in U.
    second_slot_supercoercive: bool,
    /// Built-ins satisfy the standing assumptions (C² on U, jointly convex
    /// D_f, strict convexity and coercivity of D_f(x, ·)); user kernels only
    /// declare them.
    assumptions_verified: bool,
    f: ScalarFn,
    f1: ScalarFn,
    f2: ScalarFn,
    fstar: ScalarFn,
    fstar1: ScalarFn,
}

impl std::fmt::Debug for LegendreKernel {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("LegendreKernel")
            .field("name", &self.name)
            .field("dom", &(self.dom_lower, self.dom_upper))
            .field("interior", &(self.int_lower, self.int_upper))
            .finish()
    }
}

/// Numerically stable 1/(1+e^{-t}).
pub(crate) fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// Numerically stable ln(1+e^s).
pub(crate) fn softplus(s: f64) -> f64 {
    if s > 0.0 {
        s + (-s).exp().ln_1p()
    } else {
        s.exp().ln_1p()
    }
}

/// f(x) = ½‖x‖² per coordinate; U = ℝ, f* = f.
pub fn kernel_energy() -> LegendreKernel {
    LegendreKernel {
        name: "energy".into(),
        kind: KernelKind::Energy,
        dom_lower: f64::NEG_INFINITY,
        dom_upper: f64::INFINITY,
        int_lower: f64::NEG_INFINITY,
        int_upper: f64::INFINITY,
        supercoercive: true,
        second_slot_supercoercive: true,
        assumptions_verified: true,
        f: Arc::new(|t| 0.5 * t * t),
        f1: Arc::new(|t| t),
        f2: Arc::new(|_| 1.0),
        fstar: Arc::new(|s| 0.5 * s * s),
        fstar1: Arc::new(|s| s),
    }
}

/// f(x) = Σ ξ ln ξ − ξ on x ≥ 0 (with 0·ln 0 = 0); D_f is the
/// Kullback–Leibler divergence. U = (0, ∞), f*(s) = eˢ.
pub fn kernel_boltzmann_shannon() -> LegendreKernel {
    LegendreKernel {
        name: "bs".into(),
        kind: KernelKind::BoltzmannShannon,
        dom_lower: 0.0,
        dom_upper: f64::INFINITY,
        int_lower: 0.0,
        int_upper: f64::INFINITY,
        supercoercive: true,
        second_slot_supercoercive: false,
        assumptions_verified: true,
        f: Arc::new(|t| if t == 0.0 { 0.0 } else { t * t.ln() - t }),
        f1: Arc::new(|t| t.ln()),
        f2: Arc::new(|t| 1.0 / t),
        fstar: Arc::new(|s| s.exp()),
        fstar1: Arc::new(|s| s.exp()),
    }
}

/// f(x) = Σ ξ ln ξ + (1−ξ) ln(1−ξ) on 0 ≤ x ≤ 1. U = (0, 1),
/// f*(s) = ln(1+eˢ), (f*)' is the logistic sigmoid. Bounded domain, hence
/// not supercoercive.
pub fn kernel_fermi_dirac() -> LegendreKernel {
    LegendreKernel {
        name: "fd".into(),
        kind: KernelKind::FermiDirac,
        dom_lower: 0.0,
        dom_upper: 1.0,
        int_lower: 0.0,
        int_upper: 1.0,
        supercoercive: false,
        second_slot_supercoercive: false,
        assumptions_verified: true,
        f: Arc::new(|t| {
            if t == 0.0 || t == 1.0 {
                0.0
            } else {
                t * t.ln() + (1.0 - t) * (1.0 - t).ln()
            }
        }),
        f1: Arc::new(|t| (t / (1.0 - t)).ln()),
        f2: Arc::new(|t| 1.0 / (t * (1.0 - t))),
        fstar: Arc::new(softplus),
        fstar1: Arc::new(sigmoid),
    }
}

/// Scalar evaluators for a user-supplied kernel.
pub struct KernelFunctions {
    pub value: ScalarFn,
    pub grad: ScalarFn,
    pub hess: ScalarFn,
    pub conj: ScalarFn,
    pub conj_grad: ScalarFn,
}

impl LegendreKernel {
    /// Look up a built-in by its CLI name.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "energy" => Some(kernel_energy()),
            "bs" => Some(kernel_boltzmann_shannon()),
            "fd" => Some(kernel_fermi_dirac()),
            _ => None,
        }
    }

    /// A user-defined kernel. The standing assumptions are declared by the
    /// caller, not verified; `assumptions_verified` reports false.
    ///
    /// `dom` are the closed domain endpoints, `interior` the open interval
    /// U on which grad/hess must be finite. `value` must return the finite
    /// limit at finite domain boundary points. Kinks and finite endpoints of
    /// dom f must coincide with `dom`.
    pub fn custom(
        name: impl Into<String>,
        dom: (f64, f64),
        interior: (f64, f64),
        supercoercive: bool,
        fns: KernelFunctions,
    ) -> Self {
        LegendreKernel {
            name: name.into(),
            kind: KernelKind::Custom,
            dom_lower: dom.0,
            dom_upper: dom.1,
            int_lower: interior.0,
            int_upper: interior.1,
            supercoercive,
            second_slot_supercoercive: false,
            assumptions_verified: false,
            f: fns.value,
            f1: fns.grad,
            f2: fns.hess,
            fstar: fns.conj,
            fstar1: fns.conj_grad,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// Closed domain endpoints of dom f (may be ±∞).
    pub fn domain(&self) -> (f64, f64) {
        (self.dom_lower, self.dom_upper)
    }

    /// Open endpoints of U = int dom f.
    pub fn interior(&self) -> (f64, f64) {
        (self.int_lower, self.int_upper)
    }

    pub fn is_supercoercive(&self) -> bool {
        self.supercoercive
    }

    pub fn is_second_slot_supercoercive(&self) -> bool {
        self.second_slot_supercoercive
    }

    pub fn assumptions_verified(&self) -> bool {
        self.assumptions_verified
    }

    pub fn domain_scalar(&self, t: f64) -> bool {
        t >= self.dom_lower && t <= self.dom_upper
    }

    pub fn interior_scalar(&self, t: f64) -> bool {
        t > self.int_lower && t < self.int_upper
    }

    /// True iff every coordinate lies strictly inside U.
    pub fn in_interior(&self, x: &[f64]) -> bool {
        x.iter().all(|&t| self.interior_scalar(t))
    }

    /// True iff every coordinate lies in the closed domain of f.
    pub fn in_domain(&self, x: &[f64]) -> bool {
        x.iter().all(|&t| self.domain_scalar(t))
    }

    /// Extended-real evaluation: +∞ outside dom f, the finite limit value at
    /// finite boundary points, f(t) inside.
    pub fn value(&self, t: f64) -> f64 {
        if self.domain_scalar(t) {
            (self.f)(t)
        } else {
            f64::INFINITY
        }
    }

    /// Checked evaluation; errors outside the closed domain.
    pub fn try_value(&self, t: f64) -> Result<f64> {
        if self.domain_scalar(t) {
            Ok((self.f)(t))
        } else {
            Err(Error::Domain {
                kernel: self.name.clone(),
                point: t,
                what: "dom f",
            })
        }
    }

    /// f'(t); defined only on the open interior U.
    pub fn grad(&self, t: f64) -> Result<f64> {
        if self.interior_scalar(t) {
            Ok((self.f1)(t))
        } else {
            Err(Error::Domain {
                kernel: self.name.clone(),
                point: t,
                what: "int dom f",
            })
        }
    }

    /// f''(t); defined only on U.
    pub fn hess(&self, t: f64) -> Result<f64> {
        if self.interior_scalar(t) {
            Ok((self.f2)(t))
        } else {
            Err(Error::Domain {
                kernel: self.name.clone(),
                point: t,
                what: "int dom f",
            })
        }
    }

    /// f*(s).
    pub fn conj(&self, s: f64) -> f64 {
        (self.fstar)(s)
    }

    /// (f*)'(s) = (∇f)⁻¹(s).
    pub fn conj_grad(&self, s: f64) -> f64 {
        (self.fstar1)(s)
    }

    // Unchecked evaluators for solver hot paths; the caller guarantees t ∈ U.
    #[inline]
    pub(crate) fn grad_unchecked(&self, t: f64) -> f64 {
        debug_assert!(self.interior_scalar(t), "grad_unchecked outside U: {t}");
        (self.f1)(t)
    }

    #[inline]
    pub(crate) fn hess_unchecked(&self, t: f64) -> f64 {
        debug_assert!(self.interior_scalar(t), "hess_unchecked outside U: {t}");
        (self.f2)(t)
    }

    #[inline]
    pub(crate) fn value_extended(&self, t: f64) -> f64 {
        self.value(t)
    }

    /// Nudge t strictly inside U, with a relative margin; used to clamp
    /// solver brackets on bounded domains.
    pub(crate) fn clamp_into_interior(&self, t: f64, rel_eps: f64) -> f64 {
        let lo = self.int_lower;
        let hi = self.int_upper;
        let span = if hi.is_finite() && lo.is_finite() {
            hi - lo
        } else {
            1.0
        };
        let eps = rel_eps * span.max(1.0);
        let mut v = t;
        if lo.is_finite() && v <= lo {
            v = lo + eps;
        }
        if hi.is_finite() && v >= hi {
            v = hi - eps;
        }
        v
    }
}

/// True iff every coordinate of `x` lies strictly inside U.
pub fn kernel_in_interior(k: &LegendreKernel, x: &[f64]) -> bool {
    k.in_interior(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_basics() {
        let k = kernel_energy();
        assert_eq!(k.grad(3.0).unwrap(), 3.0);
        assert_eq!(k.conj(2.0), 2.0);
        assert_eq!(k.hess(-5.0).unwrap(), 1.0);
        assert!(k.is_supercoercive());
    }

    #[test]
    fn boltzmann_shannon_basics() {
        let k = kernel_boltzmann_shannon();
        assert!((k.value(1.0) + 1.0).abs() < 1e-15);
        // 0·ln 0 = 0 exactly, no epsilon shift
        assert_eq!(k.value(0.0), 0.0);
        assert_eq!(k.try_value(0.0).unwrap(), 0.0);
        let t = 0.1;
        let back = k.conj_grad(k.grad(t).unwrap());
        assert!((back - t).abs() < 1e-15);
        assert!(k.try_value(-0.5).is_err());
        assert!(k.grad(0.0).is_err());
        assert!(k.hess(0.0).is_err());
        assert_eq!(k.value(-1.0), f64::INFINITY);
    }

    #[test]
    fn fermi_dirac_basics() {
        let k = kernel_fermi_dirac();
        assert!((k.value(0.5) - 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(k.grad(0.5).unwrap(), 0.0);
        assert_eq!(k.hess(0.5).unwrap(), 4.0);
        assert_eq!(k.value(0.0), 0.0);
        assert_eq!(k.value(1.0), 0.0);
        assert!(k.try_value(1.5).is_err());
        assert!(k.grad(1.0).is_err());
        assert!(!k.is_supercoercive());
    }

    #[test]
    fn interior_predicate() {
        let energy = kernel_energy();
        assert!(kernel_in_interior(&energy, &[5.0, -5.0]));
        let fd = kernel_fermi_dirac();
        assert!(!kernel_in_interior(&fd, &[0.0]));
        let bs = kernel_boltzmann_shannon();
        assert!(kernel_in_interior(&bs, &[0.1, 2.0]));
        assert!(!kernel_in_interior(&bs, &[0.1, 0.0]));
    }

    fn sample_grid(k: &LegendreKernel) -> Vec<f64> {
        match k.kind() {
            KernelKind::Energy => (-50..=50).map(|i| i as f64 * 2.0).collect(),
            KernelKind::BoltzmannShannon => (0..=90)
                .map(|i| 10f64.powf(-6.0 + 9.0 * i as f64 / 90.0))
                .collect(),
            _ => (1..=999).map(|i| i as f64 / 1000.0).collect(),
        }
    }

    #[test]
    fn gradient_roundtrip_on_grid() {
        for k in [
            kernel_energy(),
            kernel_boltzmann_shannon(),
            kernel_fermi_dirac(),
        ] {
            for t in sample_grid(&k) {
                let s = k.grad(t).unwrap();
                let back = k.conj_grad(s);
                assert!(
                    (back - t).abs() <= 1e-12 * t.abs().max(1.0),
                    "{} roundtrip at {t}: {back}",
                    k.name()
                );
                assert!(k.hess(t).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn fenchel_equality_on_grid() {
        for k in [
            kernel_energy(),
            kernel_boltzmann_shannon(),
            kernel_fermi_dirac(),
        ] {
            for t in sample_grid(&k) {
                // keep BS magnitudes moderate so the absolute tolerance is meaningful
                if k.kind() == KernelKind::BoltzmannShannon && t > 1e3 {
                    continue;
                }
                let s = k.grad(t).unwrap();
                let lhs = k.conj(s);
                let rhs = t * s - k.value(t);
                assert!(
                    (lhs - rhs).abs() <= 1e-10,
                    "{} Fenchel equality at {t}: {lhs} vs {rhs}",
                    k.name()
                );
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let h = 1e-5;
        for k in [
            kernel_energy(),
            kernel_boltzmann_shannon(),
            kernel_fermi_dirac(),
        ] {
            let grid: Vec<f64> = match k.kind() {
                KernelKind::Energy => (-20..=20).map(|i| i as f64 * 0.5).collect(),
                KernelKind::BoltzmannShannon => {
                    (1..=100).map(|i| 0.01 + i as f64 * 0.99).collect()
                }
                _ => (1..=97).map(|i| 0.01 + i as f64 * 0.01).collect(),
            };
            for t in grid {
                let fd = (k.value(t + h) - k.value(t - h)) / (2.0 * h);
                let g = k.grad(t).unwrap();
                assert!(
                    (g - fd).abs() <= 1e-6,
                    "{} grad vs fd at {t}: {g} vs {fd}",
                    k.name()
                );
            }
        }
    }

    #[test]
    fn custom_kernel_is_unverified() {
        // scaled energy ¼t²
        let k = LegendreKernel::custom(
            "half-energy",
            (f64::NEG_INFINITY, f64::INFINITY),
            (f64::NEG_INFINITY, f64::INFINITY),
            true,
            KernelFunctions {
                value: Arc::new(|t| 0.25 * t * t),
                grad: Arc::new(|t| 0.5 * t),
                hess: Arc::new(|_| 0.5),
                conj: Arc::new(|s| s * s),
                conj_grad: Arc::new(|s| 2.0 * s),
            },
        );
        assert!(!k.assumptions_verified());
        assert_eq!(k.kind(), KernelKind::Custom);
        let s = k.grad(1.5).unwrap();
        assert!((k.conj_grad(s) - 1.5).abs() < 1e-14);
    }
}
