//! Regenerate the reference figure datasets (envelope and prox curves per
//! kernel and side, plus the Bregman-term curves across γ) as CSV files.
//! Equivalent to `bregman figures --out <dir>`.
//!
//! Run with: cargo run --example figure_data

use bregman_moreau::cli::{write_figures, Format};
use std::path::Path;

fn main() {
    let dir = Path::new("figures");
    let written = write_figures(dir, Format::Csv).unwrap();
    println!("wrote {} files:", written.len());
    for p in &written {
        let lines = std::fs::read_to_string(p).unwrap().lines().count();
        println!("  {} ({lines} rows)", p.display());
    }
    println!("\ncolumns: point,gamma,value — gamma = 0 rows carry θ itself as the reference curve");
}
