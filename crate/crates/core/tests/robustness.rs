//! Stress scan: every kernel × side × objective family over twelve decades
//! of γ and points pushed close to the domain boundaries. Solves must
//! either succeed with a finite, in-domain answer or fail with a clean
//! error — never NaN, never a panic.

use bregman_moreau::envelope::{envelope, Side};
use bregman_moreau::legendre::{
    kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac, KernelKind, LegendreKernel,
};
use bregman_moreau::objective::{
    objective_abs_deviation, objective_indicator_interval, objective_quadratic, ConvexObjective,
};
use bregman_moreau::prox::{left_prox, right_prox, DEFAULT_TOL};

fn kernels() -> [LegendreKernel; 3] {
    [
        kernel_energy(),
        kernel_boltzmann_shannon(),
        kernel_fermi_dirac(),
    ]
}

fn objectives(kind: KernelKind) -> Vec<ConvexObjective> {
    let c = match kind {
        KernelKind::Energy => -0.7,
        _ => 0.3,
    };
    let (a, b) = match kind {
        KernelKind::Energy => (-1.0, 2.0),
        KernelKind::BoltzmannShannon => (0.4, 2.0),
        _ => (0.4, 0.8),
    };
    vec![
        objective_abs_deviation(c),
        objective_indicator_interval(a, b).unwrap(),
        objective_quadratic(3.0, c).unwrap(),
        objective_quadratic(0.0, 0.0).unwrap(),
    ]
}

fn probe_points(k: &LegendreKernel) -> Vec<f64> {
    match k.kind() {
        KernelKind::Energy => vec![-1e6, -3.0, -0.7, 0.0, 0.5, 2.0, 1e6],
        KernelKind::BoltzmannShannon => vec![1e-12, 1e-6, 0.01, 0.3, 1.0, 3.0, 1e6],
        _ => vec![1e-12, 1e-6, 0.01, 0.3, 0.5, 0.99, 1.0 - 1e-12],
    }
}

#[test]
fn solves_stay_finite_across_twelve_gamma_decades() {
    let gammas = [1e-8, 1e-3, 1.0, 1e3, 1e8];
    let mut solves = 0usize;
    for k in kernels() {
        for th in objectives(k.kind()) {
            for &gamma in &gammas {
                for &pt in &probe_points(&k) {
                    for side in [Side::Left, Side::Right] {
                        let out = match side {
                            Side::Left => left_prox(&k, &th, gamma, &[pt], DEFAULT_TOL),
                            Side::Right => right_prox(&k, &th, gamma, &[pt], DEFAULT_TOL),
                        };
                        // every point of this grid is a feasible problem
                        let out = out.unwrap_or_else(|e| {
                            panic!(
                                "{} {:?} {} γ={gamma} pt={pt}: {e}",
                                k.name(),
                                side,
                                th.name()
                            )
                        });
                        solves += 1;
                        let p = out.point[0];
                        assert!(
                            p.is_finite() && k.in_domain(&out.point),
                            "{} {:?} {} γ={gamma} pt={pt}: prox {p} escapes",
                            k.name(),
                            side,
                            th.name()
                        );
                        assert!(
                            out.envelope_value.is_finite() && out.envelope_value >= -1e-9,
                            "{} {:?} {} γ={gamma} pt={pt}: envelope {}",
                            k.name(),
                            side,
                            th.name(),
                            out.envelope_value
                        );
                        // the envelope never exceeds θ at the base point
                        let theta_pt = th.value(&[pt]).unwrap();
                        if theta_pt.is_finite() {
                            assert!(
                                out.envelope_value <= theta_pt + 1e-9,
                                "{} {:?} {} γ={gamma} pt={pt}: env {} > θ {}",
                                k.name(),
                                side,
                                th.name(),
                                out.envelope_value,
                                theta_pt
                            );
                        }
                    }
                }
            }
        }
    }
    // kernels × objectives × gammas × points × sides
    assert_eq!(solves, 3 * 4 * 5 * 7 * 2);
}

#[test]
fn envelope_api_never_yields_nan() {
    for k in kernels() {
        let th = objective_abs_deviation(0.4);
        for &gamma in &[1e-6, 1.0, 1e6] {
            for &pt in &probe_points(&k) {
                for side in [Side::Left, Side::Right] {
                    let s = envelope(&k, &th, gamma, &[pt], side, true).unwrap();
                    assert!(!s.value.is_nan(), "{} {:?} γ={gamma} pt={pt}", k.name(), side);
                    if let Some(g) = &s.gradient {
                        assert!(!g[0].is_nan(), "{} {:?} gradient NaN", k.name(), side);
                    }
                }
            }
        }
    }
}
