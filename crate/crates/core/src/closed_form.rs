//! Closed-form Bregman proximity operators and envelopes for the
//! absolute-deviation objective θ(t) = |t − c| under the three built-in
//! kernels.
//!
//! Prox formulas are generalized in the kink location c; the envelope
//! formulas are for the reference case c = ½. Branch conditions are tested
//! in gradient space and exponentials are evaluated through expm1/ln_1p
//! style forms, so extreme γ cannot overflow a branch that is actually
//! taken.

use crate::legendre::{sigmoid, KernelKind};

/// a·ln(b) with the convention 0·ln(0) = 0.
fn xlog(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * b.ln()
    }
}

fn logit(t: f64) -> f64 {
    (t / (1.0 - t)).ln()
}

/// Left prox of γ|· − c| at y, when a closed form exists for the kernel.
/// Requires y in U and c in U; callers enforce both.
pub fn left_prox_formula(kind: KernelKind, c: f64, gamma: f64, y: f64) -> Option<f64> {
    match kind {
        KernelKind::Energy => Some(if y < c - gamma {
            y + gamma
        } else if y > c + gamma {
            y - gamma
        } else {
            c
        }),
        KernelKind::BoltzmannShannon => {
            let (ly, lc) = (y.ln(), c.ln());
            Some(if ly + gamma < lc {
                (ly + gamma).exp()
            } else if ly - gamma > lc {
                (ly - gamma).exp()
            } else {
                c
            })
        }
        KernelKind::FermiDirac => {
            let (ly, lc) = (logit(y), logit(c));
            Some(if ly + gamma < lc {
                sigmoid(ly + gamma)
            } else if ly - gamma > lc {
                sigmoid(ly - gamma)
            } else {
                c
            })
        }
        KernelKind::Custom => None,
    }
}

/// Right prox of γ|· − c| at x, when a closed form exists. x may sit on the
/// closed domain boundary; the returned point is then the boundary limit.
pub fn right_prox_formula(kind: KernelKind, c: f64, gamma: f64, x: f64) -> Option<f64> {
    match kind {
        KernelKind::Energy => left_prox_formula(KernelKind::Energy, c, gamma, x),
        KernelKind::BoltzmannShannon => Some(if gamma < 1.0 && x < c * (1.0 - gamma) {
            x / (1.0 - gamma)
        } else if x > c * (1.0 + gamma) {
            x / (1.0 + gamma)
        } else {
            c
        }),
        KernelKind::FermiDirac => {
            let spread = gamma * c * (1.0 - c);
            Some(if x < c - spread {
                // positive root of γy² + (1−γ)y − x = 0
                let s = ((gamma - 1.0) * (gamma - 1.0) + 4.0 * gamma * x).sqrt();
                if gamma <= 1.0 {
                    // at x = 0 the rational form is 0/0 when γ = 1; the
                    // root itself collapses to the domain boundary
                    if x == 0.0 {
                        0.0
                    } else {
                        2.0 * x / (s + 1.0 - gamma)
                    }
                } else {
                    (gamma - 1.0 + s) / (2.0 * gamma)
                }
            } else if x > c + spread {
                // smaller root of γy² − (1+γ)y + x = 0
                let s = ((gamma + 1.0) * (gamma + 1.0) - 4.0 * gamma * x).sqrt();
                2.0 * x / (gamma + 1.0 + s)
            } else {
                c
            })
        }
        KernelKind::Custom => None,
    }
}

/// Left Bregman–Moreau envelope of θ = |· − ½| at y, piecewise closed form.
///
/// The energy branch for y > ½ + γ evaluates y − (1+γ)/2: the value the
/// prox identity θ(prox) + (1/γ)D_f(prox, y) produces (and a brute-force
/// minimization confirms).
pub fn left_envelope_formula(kind: KernelKind, gamma: f64, y: f64) -> Option<f64> {
    match kind {
        KernelKind::Energy => Some(if y < 0.5 - gamma {
            -y + (1.0 - gamma) / 2.0
        } else if y > 0.5 + gamma {
            y - (1.0 + gamma) / 2.0
        } else {
            (4.0 * y * y - 4.0 * y + 1.0) / (8.0 * gamma)
        }),
        KernelKind::BoltzmannShannon => {
            let ly = y.ln();
            let l2 = 0.5f64.ln();
            Some(if ly < l2 - gamma {
                // y(1 − e^γ)/γ + ½
                0.5 - y * gamma.exp_m1() / gamma
            } else if ly > l2 + gamma {
                // y(1 − e^{−γ})/γ − ½
                -y * (-gamma).exp_m1() / gamma - 0.5
            } else {
                (2.0 * y - y.ln() - 1.0 - 2.0f64.ln()) / (2.0 * gamma)
            })
        }
        KernelKind::FermiDirac => {
            let ly = logit(y);
            Some(if ly < -gamma {
                // −(2 ln(y e^γ − y + 1) − γ)/(2γ)
                let ln_a = (y * gamma.exp_m1()).ln_1p();
                -(2.0 * ln_a - gamma) / (2.0 * gamma)
            } else if ly > gamma {
                let ln_a = (y * (-gamma).exp_m1()).ln_1p();
                -(2.0 * ln_a + gamma) / (2.0 * gamma)
            } else {
                -(2.0 * 2.0f64.ln() + (1.0 - y).ln() + y.ln()) / (2.0 * gamma)
            })
        }
        KernelKind::Custom => None,
    }
}

/// Right Bregman–Moreau envelope of θ = |· − ½| at x, piecewise closed form.
///
/// The Fermi–Dirac branch for x > (2+γ)/4 carries a factor 2 on its log
/// term, mirroring the x < (2−γ)/4 branch: the log term equals exactly
/// D_f(x, fprox(x)), and the envelope is θ(fprox) + (1/γ)D_f, i.e.
/// (1 − s)/(2γ) + D/γ = (2D + 1 − s)/(2γ).
pub fn right_envelope_formula(kind: KernelKind, gamma: f64, x: f64) -> Option<f64> {
    match kind {
        KernelKind::Energy => left_envelope_formula(KernelKind::Energy, gamma, x),
        KernelKind::BoltzmannShannon => {
            Some(if gamma < 1.0 && x < (1.0 - gamma) / 2.0 {
                // ln(1−γ)/γ · x + ½
                (-gamma).ln_1p() / gamma * x + 0.5
            } else if x > (1.0 + gamma) / 2.0 {
                gamma.ln_1p() / gamma * x - 0.5
            } else {
                // (x ln(2x) − x + ½)/γ, with 0·ln 0 = 0
                (xlog(x, 2.0 * x) - x + 0.5) / gamma
            })
        }
        KernelKind::FermiDirac => {
            if x < (2.0 - gamma) / 4.0 {
                let s = ((gamma - 1.0) * (gamma - 1.0) + 4.0 * gamma * x).sqrt();
                // γ − 1 + s without cancellation when γ < 1
                let gm1s = if gamma <= 1.0 {
                    4.0 * gamma * x / (s + 1.0 - gamma)
                } else {
                    gamma - 1.0 + s
                };
                // γ + 1 − s without cancellation: (γ+1)² − s² = 4γ(1−x)
                let gp1ms = 4.0 * gamma * (1.0 - x) / (gamma + 1.0 + s);
                // ln of the branch ratio = D_f(x, fprox(x))
                let d = (2.0 * gamma).ln() + xlog(x, x) + xlog(1.0 - x, 1.0 - x)
                    - xlog(x, gm1s)
                    - xlog(1.0 - x, gp1ms);
                Some((2.0 * d + 1.0 - s) / (2.0 * gamma))
            } else if x > (2.0 + gamma) / 4.0 {
                let s = ((gamma + 1.0) * (gamma + 1.0) - 4.0 * gamma * x).sqrt();
                let gp1ms = 4.0 * gamma * x / (gamma + 1.0 + s);
                // γ − 1 + s without cancellation as x → 1 with γ < 1
                let gm1ps = if gamma < 1.0 {
                    4.0 * gamma * (1.0 - x) / (s + 1.0 - gamma)
                } else {
                    gamma - 1.0 + s
                };
                let d = (2.0 * gamma).ln() + xlog(x, x) + xlog(1.0 - x, 1.0 - x)
                    - xlog(x, gp1ms)
                    - xlog(1.0 - x, gm1ps);
                Some((2.0 * d + 1.0 - s) / (2.0 * gamma))
            } else {
                Some((xlog(x, x) + xlog(1.0 - x, 1.0 - x) + 2.0f64.ln()) / gamma)
            }
        }
        KernelKind::Custom => None,
    }
}
