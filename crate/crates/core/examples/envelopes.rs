//! Left and right Bregman–Moreau envelopes of θ(t) = |t − ½|: values,
//! gradients, and the squeeze inf θ ≤ env_μ ≤ env_γ ≤ θ for γ < μ.
//!
//! Run with: cargo run --example envelopes

use bregman_moreau::envelope::{left_envelope, right_envelope};
use bregman_moreau::legendre::{kernel_boltzmann_shannon, kernel_fermi_dirac};
use bregman_moreau::objective::objective_abs_deviation;

fn main() {
    let th = objective_abs_deviation(0.5);
    let bs = kernel_boltzmann_shannon();

    println!("left envelope under Boltzmann–Shannon at y = 0.1:");
    println!("  θ(0.1) = 0.4");
    for gamma in [0.1, 0.25, 0.5, 1.0, 2.0, 8.0] {
        let s = left_envelope(&bs, &th, gamma, &[0.1], true).unwrap();
        println!(
            "  γ = {gamma:<5} benv = {:.9}   ∇benv = {:+.6}   prox = {:.6}",
            s.value,
            s.gradient.as_ref().unwrap()[0],
            s.prox_point.as_ref().unwrap()[0]
        );
    }
    println!("  (values decrease in γ and never exceed θ)");

    println!("\nright envelope under Boltzmann–Shannon at x = 3:");
    for gamma in [0.5, 1.0, 2.0] {
        let s = right_envelope(&bs, &th, gamma, &[3.0], true).unwrap();
        println!(
            "  γ = {gamma:<4} fenv = {:.9}   ∇fenv = {:+.6}",
            s.value,
            s.gradient.as_ref().unwrap()[0]
        );
    }

    // The left envelope lives on U only; the right one on all of dom f.
    let fd = kernel_fermi_dirac();
    let l = left_envelope(&fd, &th, 1.0, &[0.0], false).unwrap();
    let r = right_envelope(&fd, &th, 1.0, &[0.0], false).unwrap();
    println!("\nFermi–Dirac at the domain boundary x = 0:");
    println!("  left envelope  = {} (outside U)", l.value);
    println!("  right envelope = {:.9} (finite on dom f)", r.value);

    // Differentiability smooths the kink of θ at ½.
    println!("\ngradient across the kink of θ (BS, γ = 0.5):");
    for y in [0.40, 0.45, 0.50, 0.55, 0.60] {
        let s = left_envelope(&bs, &th, 0.5, &[y], true).unwrap();
        println!("  y = {y:.2}: ∇benv = {:+.6}", s.gradient.as_ref().unwrap()[0]);
    }
}
