//! Bregman projections onto the probabilistic hyperplane ξ₁ + ξ₂ = 1:
//! the Kullback–Leibler projection lands at a genuinely different point
//! than the orthogonal one.
//!
//! Run with: cargo run --example kl_projection

use bregman_moreau::legendre::{kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac};
use bregman_moreau::projector::{
    left_project, orthogonal_project, right_project, ProjectionSpec,
};

fn main() {
    let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0], 1.0).unwrap();
    let y = [1.0, 2.0];

    println!("projecting ({}, {}) onto {{ξ₁ + ξ₂ = 1}}:", y[0], y[1]);

    let energy = kernel_energy();
    let p = left_project(&energy, &spec, &y, 1e-12).unwrap();
    println!("  energy (orthogonal): ({:.9}, {:.9})", p[0], p[1]);

    let bs = kernel_boltzmann_shannon();
    let p = left_project(&bs, &spec, &y, 1e-12).unwrap();
    println!("  Boltzmann–Shannon:   ({:.9}, {:.9})  — stays positive", p[0], p[1]);

    let o = orthogonal_project(&spec, &y).unwrap();
    println!("  orthogonal formula:  ({:.9}, {:.9})", o[0], o[1]);

    let p = right_project(&bs, &spec, &y, 1e-12).unwrap();
    println!("  BS right projector:  ({:.9}, {:.9})", p[0], p[1]);

    // On the real line every projector coincides with the orthogonal one.
    println!("\n1-D coincidence onto [1, 2]:");
    for k in [kernel_energy(), kernel_boltzmann_shannon(), kernel_fermi_dirac()] {
        let spec = ProjectionSpec::interval_box(vec![1.0], vec![2.0]).unwrap();
        let x = 0.5;
        let l = left_project(&k, &spec, &[x], 1e-12).unwrap()[0];
        let r = right_project(&k, &spec, &[x], 1e-12).unwrap()[0];
        let o = orthogonal_project(&spec, &[x]).unwrap()[0];
        println!(
            "  {:<8} left = {l}, right = {r}, orthogonal = {o}",
            k.name()
        );
    }
}
