//! Left and right Bregman projectors onto boxes and hyperplanes, plus the
//! orthogonal projector.
//!
//! The left projector onto C minimizes D_f(·, y) over C, the right one
//! minimizes D_f(x, ·). Boxes reduce to per-coordinate clamps (left) and
//! monotone derivative bisection through the indicator prox (right).
//! Hyperplanes {x : ⟨a, x⟩ = b} use a scalar dual search for the left
//! projector and a tangent-space 1-D oracle search for the right one.
//!
//! Sets are intersected with the closed domain of f: a box touching the
//! domain boundary projects onto that boundary point (the limit of the
//! minimizing net), so the 1-D coincidence with the orthogonal projector
//! holds for every kernel. Sets missing dom f entirely are infeasible.

use crate::bregman::scalar_distance;
use crate::error::{Error, Result};
use crate::legendre::LegendreKernel;
use crate::objective::ScalarObjective;
use crate::oracle;
use crate::prox;

/// A closed convex set the projectors understand.
#[derive(Debug, Clone)]
pub enum ProjectionSpec {
    IntervalBox { lower: Vec<f64>, upper: Vec<f64> },
    Hyperplane { normal: Vec<f64>, offset: f64 },
}

impl ProjectionSpec {
    pub fn interval_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::InvalidSet("box bounds must have equal nonzero length".into()));
        }
        for (l, u) in lower.iter().zip(&upper) {
            if l.is_nan() || u.is_nan() || l > u {
                return Err(Error::InvalidSet(format!("box has empty coordinate [{l}, {u}]")));
            }
        }
        Ok(ProjectionSpec::IntervalBox { lower, upper })
    }

    pub fn hyperplane(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if normal.iter().all(|&a| a == 0.0) || normal.is_empty() {
            return Err(Error::InvalidSet("hyperplane normal must be nonzero".into()));
        }
        Ok(ProjectionSpec::Hyperplane { normal, offset })
    }

    pub fn dim(&self) -> usize {
        match self {
            ProjectionSpec::IntervalBox { lower, .. } => lower.len(),
            ProjectionSpec::Hyperplane { normal, .. } => normal.len(),
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        match self {
            ProjectionSpec::IntervalBox { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(&v, (&l, &u))| v >= l - tol && v <= u + tol),
            ProjectionSpec::Hyperplane { normal, offset } => {
                let ip: f64 = normal.iter().zip(x).map(|(a, v)| a * v).sum();
                (ip - offset).abs() <= tol
            }
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim(),
                right: n,
            })
        }
    }
}

// Box interval for one coordinate, intersected with the closed domain.
fn feasible_interval(k: &LegendreKernel, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let (dlo, dhi) = k.domain();
    let a = lo.max(dlo);
    let b = hi.min(dhi);
    if a <= b {
        Ok((a, b))
    } else {
        Err(Error::InfeasibleSet)
    }
}

/// Left Bregman projection of y ∈ U onto the set.
pub fn left_project(
    k: &LegendreKernel,
    spec: &ProjectionSpec,
    y: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    spec.check_dim(y.len())?;
    if !k.in_interior(y) {
        return Err(Error::NotInInterior);
    }
    match spec {
        ProjectionSpec::IntervalBox { lower, upper } => {
            // D_f(·, y_j) decreases up to y_j and increases past it, so the
            // constrained minimizer is the clamp
            let mut p = Vec::with_capacity(y.len());
            for (j, &yj) in y.iter().enumerate() {
                let (a, b) = feasible_interval(k, lower[j], upper[j])?;
                p.push(yj.clamp(a, b));
            }
            Ok(p)
        }
        ProjectionSpec::Hyperplane { normal, offset } => {
            left_project_hyperplane(k, normal, *offset, y, tol)
        }
    }
}

// Solve ⟨a, ∇f*(∇f(y) − λ a)⟩ = b by bisection; the map is strictly
// decreasing in λ.
fn left_project_hyperplane(
    k: &LegendreKernel,
    normal: &[f64],
    offset: f64,
    y: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    let grads: Vec<f64> = y.iter().map(|&v| k.grad_unchecked(v)).collect();
    let point_at = |lambda: f64| -> Vec<f64> {
        grads
            .iter()
            .zip(normal)
            .map(|(&g, &a)| k.conj_grad(g - lambda * a))
            .collect()
    };
    let h = |lambda: f64| -> f64 {
        point_at(lambda)
            .iter()
            .zip(normal)
            .map(|(&x, &a)| a * x)
            .sum::<f64>()
            - offset
    };

    let h0 = h(0.0);
    if h0 == 0.0 {
        return Ok(point_at(0.0));
    }
    // expand geometrically in the direction the sign demands
    let (mut lo, mut hi);
    if h0 > 0.0 {
        lo = 0.0;
        let mut step = 1.0;
        loop {
            if step > 1e12 {
                return Err(Error::InfeasibleSet);
            }
            if h(step) < 0.0 {
                hi = step;
                break;
            }
            lo = step;
            step *= 2.0;
        }
    } else {
        hi = 0.0;
        let mut step = -1.0;
        loop {
            if step < -1e12 {
                return Err(Error::InfeasibleSet);
            }
            if h(step) > 0.0 {
                lo = step;
                break;
            }
            hi = step;
            step *= 2.0;
        }
    }
    // h(lo) > 0 > h(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = h(mid);
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * (1.0 + lo.abs().max(hi.abs())) && v.abs() <= tol {
            break;
        }
    }
    Ok(point_at(0.5 * (lo + hi)))
}

/// Right Bregman projection of x onto the set.
pub fn right_project(
    k: &LegendreKernel,
    spec: &ProjectionSpec,
    x: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    spec.check_dim(x.len())?;
    if !k.in_domain(x) {
        return Err(Error::NotInDomain);
    }
    match spec {
        ProjectionSpec::IntervalBox { lower, upper } => {
            let mut p = Vec::with_capacity(x.len());
            for (j, &xj) in x.iter().enumerate() {
                let (a, b) = feasible_interval(k, lower[j], upper[j])?;
                let clamp = xj.clamp(a, b);
                if !k.interior_scalar(clamp) || a == b {
                    // boundary-touching or degenerate: the minimizing net
                    // converges to the clamp point itself
                    p.push(clamp);
                    continue;
                }
                let piece = ScalarObjective::indicator_interval(a, b)?;
                let th = crate::objective::ConvexObjective::new("box", vec![piece])?;
                let out = prox::right_prox(k, &th, 1.0, &[xj], tol.min(prox::DEFAULT_TOL))?;
                p.push(out.point[0]);
            }
            Ok(p)
        }
        ProjectionSpec::Hyperplane { normal, offset } => {
            if !k.in_interior(x) {
                return Err(Error::NotInInterior);
            }
            right_project_hyperplane(k, normal, *offset, x, tol)
        }
    }
}

// Orthonormal basis of the tangent space {d : ⟨a, d⟩ = 0}.
fn tangent_basis(normal: &[f64]) -> Vec<Vec<f64>> {
    let n = normal.len();
    let norm = normal.iter().map(|a| a * a).sum::<f64>().sqrt();
    let unit: Vec<f64> = normal.iter().map(|a| a / norm).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for i in 0..n {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        // Gram-Schmidt against the normal and earlier directions
        let ip: f64 = v.iter().zip(&unit).map(|(a, b)| a * b).sum();
        for (vj, uj) in v.iter_mut().zip(&unit) {
            *vj -= ip * uj;
        }
        for b in &basis {
            let ip: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            for (vj, bj) in v.iter_mut().zip(b) {
                *vj -= ip * bj;
            }
        }
        let len = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if len > 1e-10 {
            for vj in v.iter_mut() {
                *vj /= len;
            }
            basis.push(v);
            if basis.len() == n - 1 {
                break;
            }
        }
    }
    basis
}

// Largest parameter interval keeping y + t·d strictly inside U, capped for
// unbounded interiors.
fn line_bracket(k: &LegendreKernel, y: &[f64], d: &[f64], cap: f64) -> (f64, f64) {
    let (ilo, ihi) = k.interior();
    let mut lo = -cap;
    let mut hi = cap;
    for (&yj, &dj) in y.iter().zip(d) {
        if dj == 0.0 {
            continue;
        }
        let w1 = (ilo - yj) / dj;
        let w2 = (ihi - yj) / dj;
        let (a, b) = if dj > 0.0 { (w1, w2) } else { (w2, w1) };
        if a.is_finite() {
            lo = lo.max(a);
        }
        if b.is_finite() {
            hi = hi.min(b);
        }
    }
    (lo, hi)
}

// Cyclic 1-D minimization of D_f(x, ·) over the hyperplane, started from
// the left projection (feasible by construction). Exact for 2-D after one
// sweep; higher dimensions iterate until the sweep stalls.
fn right_project_hyperplane(
    k: &LegendreKernel,
    normal: &[f64],
    offset: f64,
    x: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    let mut y = left_project_hyperplane(k, normal, offset, x, tol)?;
    let basis = tangent_basis(normal);
    let objective = |y: &[f64]| -> f64 {
        x.iter()
            .zip(y)
            .map(|(&xj, &yj)| scalar_distance(k, xj, yj))
            .sum()
    };
    let cap = 10.0 * (1.0 + x.iter().map(|v| v.abs()).fold(0.0, f64::max))
        + y.iter().map(|v| v.abs()).fold(0.0, f64::max);
    for _sweep in 0..60 {
        let mut moved = 0.0f64;
        for d in &basis {
            let (mut lo, mut hi) = line_bracket(k, &y, d, cap);
            // golden section needs a finite bracket with interior feasibility
            lo = lo.max(-1e6);
            hi = hi.min(1e6);
            if lo >= hi {
                continue;
            }
            let f = |t: f64| {
                let cand: Vec<f64> = y.iter().zip(d).map(|(&yj, &dj)| yj + t * dj).collect();
                objective(&cand)
            };
            let r = oracle::minimize_1d(f, (lo, hi), oracle::DEFAULT_ARG_TOL)?;
            if r.argmin.abs() > 0.0 {
                for (yj, dj) in y.iter_mut().zip(d) {
                    *yj += r.argmin * dj;
                }
                moved = moved.max(r.argmin.abs());
            }
        }
        if moved <= tol.max(1e-12) {
            break;
        }
    }
    Ok(y)
}

/// Euclidean projection onto the set (box clamp or hyperplane formula).
pub fn orthogonal_project(spec: &ProjectionSpec, x: &[f64]) -> Result<Vec<f64>> {
    spec.check_dim(x.len())?;
    match spec {
        ProjectionSpec::IntervalBox { lower, upper } => Ok(x
            .iter()
            .zip(lower.iter().zip(upper))
            .map(|(&v, (&l, &u))| v.clamp(l, u))
            .collect()),
        ProjectionSpec::Hyperplane { normal, offset } => {
            let ip: f64 = normal.iter().zip(x).map(|(a, v)| a * v).sum();
            let nn: f64 = normal.iter().map(|a| a * a).sum();
            let scale = (ip - offset) / nn;
            Ok(x.iter().zip(normal).map(|(&v, &a)| v - scale * a).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::{
        kernel_boltzmann_shannon, kernel_energy, kernel_fermi_dirac, KernelKind,
    };
    use crate::rng::SplitMix64;

    const TOL: f64 = 1e-10;

    #[test]
    fn probabilistic_hyperplane_example() {
        let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0], 1.0).unwrap();
        let p = left_project(&kernel_energy(), &spec, &[1.0, 2.0], TOL).unwrap();
        assert!((p[0] - 0.0).abs() < 1e-9 && (p[1] - 1.0).abs() < 1e-9, "{p:?}");
        let p = left_project(&kernel_boltzmann_shannon(), &spec, &[1.0, 2.0], TOL).unwrap();
        assert!(
            (p[0] - 1.0 / 3.0).abs() < 1e-9 && (p[1] - 2.0 / 3.0).abs() < 1e-9,
            "{p:?}"
        );
    }

    #[test]
    fn point_already_in_set_is_fixed() {
        let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0], 1.0).unwrap();
        let p = left_project(&kernel_boltzmann_shannon(), &spec, &[0.25, 0.75], TOL).unwrap();
        assert!((p[0] - 0.25).abs() < 1e-10 && (p[1] - 0.75).abs() < 1e-10);
        let boxspec = ProjectionSpec::interval_box(vec![0.0], vec![1.0]).unwrap();
        let p = right_project(&kernel_fermi_dirac(), &boxspec, &[0.3], TOL).unwrap();
        assert_eq!(p[0], 0.3);
    }

    #[test]
    fn energy_right_equals_left_equals_orthogonal() {
        let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0], 1.0).unwrap();
        let k = kernel_energy();
        let l = left_project(&k, &spec, &[1.0, 2.0], TOL).unwrap();
        let r = right_project(&k, &spec, &[1.0, 2.0], TOL).unwrap();
        let o = orthogonal_project(&spec, &[1.0, 2.0]).unwrap();
        for j in 0..2 {
            assert!((l[j] - o[j]).abs() < 1e-9);
            assert!((r[j] - o[j]).abs() < 1e-8, "{r:?} vs {o:?}");
        }
    }

    #[test]
    fn one_dimensional_coincidence() {
        let spec = ProjectionSpec::interval_box(vec![1.0], vec![2.0]).unwrap();
        for k in [
            kernel_energy(),
            kernel_boltzmann_shannon(),
            kernel_fermi_dirac(),
        ] {
            let mut rng = SplitMix64::new(0x1D);
            let (lo, hi) = match k.kind() {
                KernelKind::Energy => (-3.0, 3.0),
                KernelKind::BoltzmannShannon => (0.01, 4.0),
                _ => (0.01, 0.99),
            };
            for _ in 0..50 {
                let y = rng.uniform(lo, hi);
                let l = left_project(&k, &spec, &[y], TOL).unwrap()[0];
                let r = right_project(&k, &spec, &[y], TOL).unwrap()[0];
                let o = orthogonal_project(&spec, &[y]).unwrap()[0];
                assert!((l - o).abs() <= 1e-10, "{} left {l} vs {o}", k.name());
                assert!((r - o).abs() <= 1e-10, "{} right {r} vs {o}", k.name());
            }
        }
    }

    #[test]
    fn boundary_touching_interval_under_fermi_dirac() {
        // [1, 2] meets dom f = [0, 1] only at the point 1
        let spec = ProjectionSpec::interval_box(vec![1.0], vec![2.0]).unwrap();
        let k = kernel_fermi_dirac();
        assert_eq!(left_project(&k, &spec, &[0.5], TOL).unwrap()[0], 1.0);
        assert_eq!(right_project(&k, &spec, &[0.5], TOL).unwrap()[0], 1.0);
    }

    #[test]
    fn infeasible_sets_error() {
        let spec = ProjectionSpec::interval_box(vec![-3.0], vec![-2.0]).unwrap();
        let k = kernel_boltzmann_shannon();
        assert!(matches!(
            left_project(&k, &spec, &[1.0], TOL),
            Err(Error::InfeasibleSet)
        ));
        // hyperplane out of reach of the positive orthant
        let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0], -1.0).unwrap();
        assert!(matches!(
            left_project(&k, &spec, &[1.0, 2.0], TOL),
            Err(Error::InfeasibleSet)
        ));
    }

    #[test]
    fn orthogonal_examples() {
        let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0], 1.0).unwrap();
        let p = orthogonal_project(&spec, &[1.0, 2.0]).unwrap();
        assert!((p[0] - 0.0).abs() < 1e-15 && (p[1] - 1.0).abs() < 1e-15);
        let spec = ProjectionSpec::interval_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(orthogonal_project(&spec, &[2.0, -1.0]).unwrap(), vec![1.0, 0.0]);
        assert_eq!(
            orthogonal_project(&spec, &[0.4, 0.6]).unwrap(),
            vec![0.4, 0.6]
        );
    }

    #[test]
    fn variational_inequality_certificates() {
        let mut rng = SplitMix64::new(0xC0FE);
        let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0], 1.0).unwrap();
        for k in [kernel_energy(), kernel_boltzmann_shannon(), kernel_fermi_dirac()] {
            let y = match k.kind() {
                KernelKind::Energy => [1.0, 2.0],
                KernelKind::BoltzmannShannon => [1.0, 2.0],
                _ => [0.55, 0.8],
            };
            let pl = left_project(&k, &spec, &y, TOL).unwrap();
            let pr = right_project(&k, &spec, &y, TOL).unwrap();
            for _ in 0..100 {
                // sample z on the hyperplane inside U
                let z0 = match k.kind() {
                    KernelKind::Energy => rng.uniform(-3.0, 3.0),
                    _ => rng.uniform(0.01, 0.99),
                };
                let z = [z0, 1.0 - z0];
                if !k.in_interior(&z) {
                    continue;
                }
                // left: ⟨∇f(y) − ∇f(p), z − p⟩ ≤ tol
                let mut ip = 0.0;
                for j in 0..2 {
                    ip += (k.grad(y[j]).unwrap() - k.grad(pl[j]).unwrap()) * (z[j] - pl[j]);
                }
                assert!(ip <= 1e-7, "{} left VI: {ip}", k.name());
                // right: ⟨∇²f(p)⊙(y − p), z − p⟩ ≤ tol
                let mut ip = 0.0;
                for j in 0..2 {
                    ip += k.hess(pr[j]).unwrap() * (y[j] - pr[j]) * (z[j] - pr[j]);
                }
                assert!(ip <= 1e-6, "{} right VI: {ip}", k.name());
                // minimality of the left projection
                let dz = scalar_distance(&k, z[0], y[0]) + scalar_distance(&k, z[1], y[1]);
                let dp = scalar_distance(&k, pl[0], y[0]) + scalar_distance(&k, pl[1], y[1]);
                assert!(dp <= dz + 1e-9, "{} left minimality", k.name());
            }
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ProjectionSpec::interval_box(vec![2.0], vec![1.0]).is_err());
        assert!(ProjectionSpec::hyperplane(vec![0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn right_hyperplane_projection_in_three_dimensions() {
        // beyond 2-D the right projector runs the cyclic tangent-space
        // search; certify the result through the variational inequality
        let spec = ProjectionSpec::hyperplane(vec![1.0, 1.0, 1.0], 1.0).unwrap();
        let k = kernel_boltzmann_shannon();
        let x = [1.0, 2.0, 0.5];
        let p = right_project(&k, &spec, &x, 1e-11).unwrap();
        assert!(spec.contains(&p, 1e-9), "{p:?}");
        let mut rng = SplitMix64::new(0x3D);
        for _ in 0..200 {
            let z0 = rng.uniform(0.01, 0.98);
            let z1 = rng.uniform(0.01, 0.99 - z0);
            let z = [z0, z1, 1.0 - z0 - z1];
            if !k.in_interior(&z) {
                continue;
            }
            let mut ip = 0.0;
            for j in 0..3 {
                ip += k.hess(p[j]).unwrap() * (x[j] - p[j]) * (z[j] - p[j]);
            }
            assert!(ip <= 1e-6, "VI violated: {ip} at z = {z:?}");
            // and p beats z in D_f(x, ·)
            let dz: f64 = (0..3).map(|j| scalar_distance(&k, x[j], z[j])).sum();
            let dp: f64 = (0..3).map(|j| scalar_distance(&k, x[j], p[j])).sum();
            assert!(dp <= dz + 1e-9);
        }
    }
}
