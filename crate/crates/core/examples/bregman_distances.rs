//! The three built-in Legendre kernels and their Bregman distances.
//!
//! Run with: cargo run --example bregman_distances

use bregman_moreau::bregman::{bregman_distance, four_point_gap};
use bregman_moreau::legendre::{
    kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac,
};

fn main() {
    let kernels = [
        kernel_energy(),
        kernel_boltzmann_shannon(),
        kernel_fermi_dirac(),
    ];

    println!("D_f(x, y) for a few pairs:");
    for k in &kernels {
        let (x, y) = match k.name() {
            "energy" => (1.0, 2.0),
            "bs" => (0.271828182845, 0.1),
            _ => (0.3, 0.7),
        };
        println!(
            "  {:<8} D({x:.4}, {y:.4}) = {:.12}",
            k.name(),
            bregman_distance(k, &[x], &[y]).unwrap()
        );
    }

    // Asymmetry: the energy is the only symmetric case.
    let bs = kernel_boltzmann_shannon();
    println!(
        "\nKL asymmetry: D(0.2, 1.0) = {:.6} vs D(1.0, 0.2) = {:.6}",
        bregman_distance(&bs, &[0.2], &[1.0]).unwrap(),
        bregman_distance(&bs, &[1.0], &[0.2]).unwrap()
    );

    // Outside the domain the distance is +inf, not an error.
    println!(
        "D(-1, 1) under BS = {}",
        bregman_distance(&bs, &[-1.0], &[1.0]).unwrap()
    );

    // Four-point identity: the gap equals <grad f(y1) - grad f(y2), x1 - x2>.
    println!("\nfour-point identity check (2-D points):");
    for k in &kernels {
        let (x1, x2, y1, y2) = match k.name() {
            "energy" => ([1.0, 0.5], [0.0, 1.5], [2.0, 0.3], [-1.0, 1.1]),
            "bs" => ([1.0, 0.5], [0.3, 1.5], [2.0, 0.3], [0.4, 1.1]),
            _ => ([0.6, 0.5], [0.3, 0.8], [0.9, 0.3], [0.4, 0.2]),
        };
        let gap = four_point_gap(k, &x1, &x2, &y1, &y2).unwrap();
        let mut ip = 0.0;
        for j in 0..2 {
            ip += (k.grad(y1[j]).unwrap() - k.grad(y2[j]).unwrap()) * (x1[j] - x2[j]);
        }
        println!(
            "  {:<8} gap = {gap:+.12}, inner product = {ip:+.12}, diff = {:.2e}",
            k.name(),
            (gap - ip).abs()
        );
    }
}
