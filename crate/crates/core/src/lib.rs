//! Bregman–Moreau regularization toolkit.
//!
//! Classical Moreau smoothing replaces a convex function θ by
//! inf_y θ(y) + (1/2γ)‖x−y‖². Swapping the quadratic for a Bregman distance
//! D_f(x, y) = f(x) − f(y) − ⟨∇f(y), x − y⟩ built from a Legendre kernel f
//! yields *two* regularizations, because D_f is asymmetric:
//!
//! * the left envelope  `benv_γθ(y) = inf_x θ(x) + (1/γ) D_f(x, y)`,
//! * the right envelope `fenv_γθ(x) = inf_y θ(y) + (1/γ) D_f(x, y)`,
//!
//! each realized by its own proximity operator. This crate evaluates both
//! envelopes and proxes (closed forms where available, monotone 1-D solvers
//! otherwise), Bregman projections onto boxes and hyperplanes, the
//! associated identities (scaling, four-point, Fenchel-conjugate), and the
//! asymptotic behaviour as γ → 0 or γ → ∞ — together with an independent
//! brute-force oracle used to verify all of it.
//!
//! Three kernels are built in: the energy ½‖·‖² (recovering the classical
//! Moreau objects), the Boltzmann–Shannon entropy (Kullback–Leibler
//! distance) and the Fermi–Dirac entropy. All kernels are coordinate
//! separable.
//!
//! Start with the runnable programs under `examples/`; the `bregman` binary
//! exposes the same functionality as a small CLI.

pub mod asymptotics;
pub mod bregman;
pub mod cli;
pub mod closed_form;
pub mod envelope;
pub mod error;
pub mod legendre;
pub mod objective;
pub mod oracle;
pub mod projector;
pub mod prox;
pub mod rng;

pub use bregman::{bregman_distance, four_point_gap};
pub use envelope::{left_envelope, right_envelope, Side};
pub use error::{Error, Result};
pub use legendre::{
    kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac, LegendreKernel,
};
pub use objective::{
    objective_abs_deviation, objective_indicator_interval, objective_quadratic, ConvexObjective,
};
pub use projector::{left_project, orthogonal_project, right_project, ProjectionSpec};
pub use prox::{left_prox, proximal_point_solve, right_prox, ProxOutcome};
