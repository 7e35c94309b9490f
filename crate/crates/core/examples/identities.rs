//! Structural identities: the scaling law env_μ(γθ) = γ·env_{γμ}θ, the
//! Fenchel-conjugate representations of both envelopes, and the classical
//! Moreau envelope as the energy special case.
//!
//! Run with: cargo run --example identities

use bregman_moreau::envelope::{
    classical_envelope, conjugate_identity_gap, left_envelope, scaling_law_check, Side,
};
use bregman_moreau::legendre::{
    kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac,
};
use bregman_moreau::objective::objective_abs_deviation;

fn main() {
    let th = objective_abs_deviation(0.5);

    println!("scaling law env_μ(γθ) = γ·env_(γμ)θ:");
    for (k, pt) in [
        (kernel_energy(), 0.0),
        (kernel_boltzmann_shannon(), 0.2),
        (kernel_fermi_dirac(), 0.8),
    ] {
        let (lhs, rhs) = scaling_law_check(&k, &th, 2.0, 0.5, &[pt], Side::Left).unwrap();
        println!(
            "  {:<8} γ=2, μ=½ at {pt}: {lhs:.12} vs {rhs:.12} (diff {:.1e})",
            k.name(),
            (lhs - rhs).abs()
        );
    }

    println!("\nconjugate identities (gap should vanish):");
    println!("  left:  γ benv_γθ(∇f*(y*)) = f*(y*) − (γθ + f)*(y*)");
    println!("  right: γ fenv_γθ(x) = f(x) − ((γθ ∘ ∇f*) + f*)*(x)");
    for k in [kernel_energy(), kernel_boltzmann_shannon(), kernel_fermi_dirac()] {
        let ystar = if k.name() == "bs" { 0.1f64.ln() } else { 0.0 };
        let gl = conjugate_identity_gap(&k, &th, 1.0, &[ystar], Side::Left).unwrap();
        let x = match k.name() {
            "energy" => 1.3,
            "bs" => 3.0,
            _ => 0.7,
        };
        let gr = conjugate_identity_gap(&k, &th, 1.0, &[x], Side::Right).unwrap();
        println!("  {:<8} left gap {gl:.2e}, right gap {gr:.2e}", k.name());
    }

    println!("\nclassical Moreau envelope (energy kernel):");
    let v = classical_envelope(&th, 1.0, &[0.0]).unwrap();
    println!("  env_1(θ)(0) = {v} (the Huber-smoothed kink)");
    for gamma in [1.0, 0.1, 0.01, 0.001] {
        let v = classical_envelope(&th, gamma, &[0.0]).unwrap();
        println!("  γ = {gamma:<6}: {v:.6}  → θ(0) = 0.5 as γ → 0");
    }

    // and the energy left/right envelopes are the same thing
    let k = kernel_energy();
    let l = left_envelope(&k, &th, 1.0, &[2.0], false).unwrap().value;
    println!("\nenergy left envelope at 2 = {l} = right envelope = classical");
}
