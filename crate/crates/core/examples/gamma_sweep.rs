//! Behaviour of the left prox and envelope across twelve decades of γ:
//! envelope ↓ inf θ, θ(prox) ↓ inf θ, the Bregman term grows, and the
//! scaled term (1/γ)·D_f rises then falls (it is not monotone).
//!
//! Run with: cargo run --example gamma_sweep

use bregman_moreau::asymptotics::{default_gamma_grid, gamma_sweep, limit_report, DEFAULT_LIMIT_TOL};
use bregman_moreau::envelope::Side;
use bregman_moreau::legendre::kernel_energy;
use bregman_moreau::objective::objective_abs_deviation;

fn main() {
    let k = kernel_energy();
    let th = objective_abs_deviation(0.5);
    let records = gamma_sweep(&k, &th, &[2.0], Side::Left, &default_gamma_grid()).unwrap();

    println!("energy kernel, θ = |·−½|, base point y = 2:");
    println!(
        "{:>10}  {:>12}  {:>12}  {:>12}  {:>12}",
        "gamma", "prox", "theta(prox)", "(1/γ)D_f", "envelope"
    );
    for r in &records {
        println!(
            "{:>10.3e}  {:>12.6}  {:>12.6}  {:>12.6}  {:>12.6}",
            r.gamma, r.prox_point[0], r.theta_at_prox, r.scaled_term, r.envelope
        );
    }

    let report = limit_report(&th, &records, DEFAULT_LIMIT_TOL).unwrap();
    println!("\ndiagnostics:");
    for c in &report.checks {
        println!(
            "  {:<44} {}  gap = {:.3e}",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.gap
        );
    }

    // the non-monotone scaled term, close up
    println!("\nscaled term peaks near γ = 1.5 (capture of the argmin):");
    let gammas: Vec<f64> = (1..=30).map(|i| i as f64 * 0.1).collect();
    let recs = gamma_sweep(&k, &th, &[2.0], Side::Left, &gammas).unwrap();
    for r in recs.iter().step_by(3) {
        println!("  γ = {:>4.1}: (1/γ)D_f = {:.6}", r.gamma, r.scaled_term);
    }
}
