//! Left and right Bregman proximity operators of θ(t) = |t − ½|: closed
//! forms, the generic solver, and agreement between the two.
//!
//! Run with: cargo run --example prox_operators

use bregman_moreau::legendre::{
    kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac,
};
use bregman_moreau::objective::{objective_abs_deviation, objective_indicator_interval};
use bregman_moreau::prox::{
    left_prox, left_prox_numeric, right_prox, DEFAULT_TOL,
};

fn main() {
    let th = objective_abs_deviation(0.5);
    let kernels = [
        kernel_energy(),
        kernel_boltzmann_shannon(),
        kernel_fermi_dirac(),
    ];

    println!("left prox at γ = 1 (branch, residual):");
    for k in &kernels {
        let y = match k.name() {
            "energy" => 2.0,
            "bs" => 0.1,
            _ => 0.1,
        };
        let out = left_prox(k, &th, 1.0, &[y], DEFAULT_TOL).unwrap();
        println!(
            "  {:<8} bprox(θ)({y}) = {:.10}   [{}, residual {:.1e}]",
            k.name(),
            out.point[0],
            out.branch.as_str(),
            out.residual
        );
        let num = left_prox_numeric(k, &th, 1.0, &[y], DEFAULT_TOL).unwrap();
        println!(
            "  {:<8} numeric path agrees to {:.2e} in {} iterations",
            "",
            (num.point[0] - out.point[0]).abs(),
            num.iterations
        );
    }

    println!("\nright prox at γ = 1:");
    for (k, x) in [
        (kernel_energy(), 2.0),
        (kernel_boltzmann_shannon(), 3.0),
        (kernel_fermi_dirac(), 0.9),
    ] {
        let out = right_prox(&k, &th, 1.0, &[x], DEFAULT_TOL).unwrap();
        println!("  {:<8} fprox(θ)({x}) = {:.10}", k.name(), out.point[0]);
    }

    // The prox of an indicator is the Bregman projection; for an interval
    // that is a clamp.
    let ind = objective_indicator_interval(1.0, 2.0).unwrap();
    let bs = kernel_boltzmann_shannon();
    let out = left_prox(&bs, &ind, 5.0, &[0.2], DEFAULT_TOL).unwrap();
    println!(
        "\nindicator [1,2] under BS: bprox(0.2) = {} (γ plays no role for projections)",
        out.point[0]
    );

    // Multi-coordinate points solve coordinate-wise.
    let out = left_prox(&kernel_energy(), &th, 1.0, &[2.0, 0.0, -1.0], DEFAULT_TOL).unwrap();
    println!("coordinate-wise: bprox((2, 0, -1)) = {:?}", out.point);
}
