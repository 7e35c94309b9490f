//! Minimizing θ by iterating its left Bregman prox: fixed points of
//! bprox_γθ are exactly the minimizers of θ inside U.
//!
//! Run with: cargo run --example proximal_point

use bregman_moreau::legendre::{kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac};
use bregman_moreau::objective::objective_abs_deviation;
use bregman_moreau::prox::proximal_point_solve;

fn main() {
    let th = objective_abs_deviation(0.5);

    for (k, x0) in [
        (kernel_energy(), 10.0),
        (kernel_boltzmann_shannon(), 0.01),
        (kernel_fermi_dirac(), 0.97),
    ] {
        let out = proximal_point_solve(&k, &th, 1.0, &[x0], 100, 1e-12).unwrap();
        println!(
            "{:<8} from x0 = {x0}: {} iterations, fixed-point residual {:.1e}",
            k.name(),
            out.iterations,
            out.fixed_point_residual
        );
        for (i, x) in out.trajectory.iter().enumerate() {
            println!("   iter {i:>2}: {:.12}", x[0]);
        }
        println!(
            "   converged = {}, argmin θ = 0.5, certificate = {:?}\n",
            out.converged, out.certificate.condition
        );
    }
}
