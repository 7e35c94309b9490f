//! Property tests over randomized inputs: the structural invariants that
//! must hold for every admissible argument, not just frozen examples.

use bregman_moreau::bregman::scalar_distance;
use bregman_moreau::envelope::{left_envelope, right_envelope};
use bregman_moreau::legendre::{
    kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac, LegendreKernel,
};
use bregman_moreau::objective::objective_abs_deviation;
use bregman_moreau::projector::{left_project, orthogonal_project, right_project, ProjectionSpec};
use bregman_moreau::prox::{left_prox, right_prox, DEFAULT_TOL};
use proptest::prelude::*;

fn all_kernels() -> Vec<(LegendreKernel, f64, f64)> {
    vec![
        (kernel_energy(), -4.0, 4.0),
        (kernel_boltzmann_shannon(), 0.01, 4.0),
        (kernel_fermi_dirac(), 0.01, 0.99),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gradient_roundtrip(idx in 0usize..3, u in 0.0f64..1.0) {
        let (k, lo, hi) = all_kernels().swap_remove(idx);
        let t = lo + (hi - lo) * u;
        let back = k.conj_grad(k.grad(t).unwrap());
        prop_assert!((back - t).abs() <= 1e-12 * t.abs().max(1.0));
    }

    #[test]
    fn bregman_distance_nonnegative(idx in 0usize..3, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (k, lo, hi) = all_kernels().swap_remove(idx);
        let x = lo + (hi - lo) * a;
        let y = lo + (hi - lo) * b;
        let d = scalar_distance(&k, x, y);
        prop_assert!(d >= 0.0);
        if d <= 1e-14 {
            prop_assert!((x - y).abs() <= 1e-6);
        }
    }

    #[test]
    fn envelope_sandwich(idx in 0usize..3, u in 0.0f64..1.0, lg in -3.0f64..3.0) {
        let (k, lo, hi) = all_kernels().swap_remove(idx);
        let y = lo + (hi - lo) * u;
        let gamma = 10f64.powf(lg);
        let th = objective_abs_deviation(0.5);
        let theta_y = (y - 0.5f64).abs();
        let l = left_envelope(&k, &th, gamma, &[y], false).unwrap().value;
        prop_assert!(l >= -1e-12 && l <= theta_y + 1e-12, "left {l} vs θ {theta_y}");
        let r = right_envelope(&k, &th, gamma, &[y], false).unwrap().value;
        prop_assert!(r >= -1e-12 && r <= theta_y + 1e-12, "right {r} vs θ {theta_y}");
    }

    #[test]
    fn prox_residual_within_tolerance(idx in 0usize..3, u in 0.0f64..1.0, lg in -2.0f64..2.0) {
        let (k, lo, hi) = all_kernels().swap_remove(idx);
        let y = lo + (hi - lo) * u;
        let gamma = 10f64.powf(lg);
        let th = objective_abs_deviation(0.5);
        let out = left_prox(&k, &th, gamma, &[y], DEFAULT_TOL).unwrap();
        prop_assert!(k.in_interior(&out.point));
        prop_assert!(out.residual <= 10.0 * DEFAULT_TOL);
        let out = right_prox(&k, &th, gamma, &[y], DEFAULT_TOL).unwrap();
        prop_assert!(out.residual <= 10.0 * DEFAULT_TOL);
    }

    #[test]
    fn projections_coincide_on_the_line(
        idx in 0usize..3,
        u in 0.0f64..1.0,
        a in -1.0f64..2.0,
        width in 0.1f64..2.0,
    ) {
        let (k, lo, hi) = all_kernels().swap_remove(idx);
        let y = lo + (hi - lo) * u;
        let spec = ProjectionSpec::interval_box(vec![a], vec![a + width]).unwrap();
        // skip sets that miss dom f entirely
        let (dlo, dhi) = k.domain();
        prop_assume!(a + width >= dlo && a <= dhi);
        let l = left_project(&k, &spec, &[y], 1e-12).unwrap()[0];
        let r = right_project(&k, &spec, &[y], 1e-12).unwrap()[0];
        let o = orthogonal_project(&spec, &[y]).unwrap()[0]
            .clamp(dlo, dhi); // the Bregman projectors live inside dom f
        prop_assert!((l - o).abs() <= 1e-10, "left {l} vs {o}");
        prop_assert!((r - o).abs() <= 1e-10, "right {r} vs {o}");
    }

    #[test]
    fn envelope_identity_matches_prox(idx in 0usize..3, u in 0.1f64..0.9, lg in -1.5f64..1.5) {
        let (k, lo, hi) = all_kernels().swap_remove(idx);
        let y = lo + (hi - lo) * u;
        let gamma = 10f64.powf(lg);
        let th = objective_abs_deviation(0.5);
        let out = left_prox(&k, &th, gamma, &[y], DEFAULT_TOL).unwrap();
        let want = (out.point[0] - 0.5f64).abs() + scalar_distance(&k, out.point[0], y) / gamma;
        prop_assert!((out.envelope_value - want).abs() <= 1e-12);
    }
}
