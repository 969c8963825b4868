//! `√(m² + p²) + r²` diagonalized in the l = 0 harmonic-oscillator basis.
//!
//! The potential `r²` is tridiagonal in this basis. The kinetic operator is
//! diagonal in momentum space, where the basis functions have the same
//! Laguerre form with the inverse length, so its matrix elements are
//! one-dimensional quadratures over the momentum half-line.

use nalgebra::{DMatrix, SymmetricEigen};

use super::quadrature;
use crate::error::{invalid, Error, Result};
use crate::minimize::min_sqrt_plus_linear;

const LAGUERRE_ALPHA: f64 = 0.5;
const PANEL_POINTS: usize = 16;
const PANEL_WIDTH: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisConfig {
    pub size: usize,
    /// Oscillator length `b`: basis functions go like `exp(−r²/2b²)`.
    pub scale: f64,
    /// Minimum number of momentum quadrature nodes.
    pub quadrature_points: usize,
    pub target_tol: f64,
}

impl BasisConfig {
    pub const DEFAULT_SIZE: usize = 40;
    pub const DEFAULT_QUADRATURE: usize = 200;

    /// Default basis for mass `m`. The length is taken from the minimizing
    /// `r*` of the `P = 3/2` two-term form, and chosen so the lowest basis
    /// function has `⟨r²⟩ = r*²`.
    pub fn for_mass(m: f64) -> Self {
        let r_star_sq = min_sqrt_plus_linear(1.0, m.max(0.0), 2.25, 1.0).arg;
        Self {
            size: Self::DEFAULT_SIZE,
            scale: (2.0 * r_star_sq / 3.0).sqrt(),
            quadrature_points: Self::DEFAULT_QUADRATURE,
            target_tol: 1e-6,
        }
    }

    pub fn with_size(mut self, size: usize) -> Self {
        self.size = size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.size < 4 {
            return Err(invalid(format!("basis size must be at least 4, got {}", self.size)));
        }
        if self.size > 1024 {
            return Err(invalid(format!("basis size {} exceeds 1024", self.size)));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(invalid(format!("oscillator length must be positive, got {}", self.scale)));
        }
        if self.quadrature_points < 64 {
            return Err(invalid(format!(
                "need at least 64 quadrature points, got {}",
                self.quadrature_points
            )));
        }
        if !(self.target_tol > 0.0) {
            return Err(invalid("basis tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisResult {
    /// Lowest eigenvalue in the doubled basis.
    pub energy: f64,
    /// Change in the lowest eigenvalue when the basis is doubled.
    pub error_estimate: f64,
    pub basis_used: BasisConfig,
    pub converged: bool,
}

/// Normalized Laguerre functions `√(n!/Γ(n+3/2)) L_n^{1/2}(x) e^{−x/2}` for
/// `n < size`, returned row by row.
fn laguerre_functions(size: usize, x: f64) -> Vec<f64> {
    let a = LAGUERRE_ALPHA;
    // Half the exponential is applied up front and half at the end so
    // neither the recurrence nor the prefactor leaves the f64 range.
    let quarter = (-0.25 * x).exp();
    let mut out = vec![0.0; size];
    // Γ(3/2) = √π/2
    out[0] = quarter / (0.5 * std::f64::consts::PI.sqrt()).sqrt();
    if size > 1 {
        out[1] = (1.0 + a - x) * out[0] / (1.0 + a).sqrt();
    }
    for n in 1..size.saturating_sub(1) {
        let nf = n as f64;
        out[n + 1] = ((2.0 * nf + a + 1.0 - x) * out[n] - (nf * (nf + a)).sqrt() * out[n - 1])
            / ((nf + 1.0) * (nf + 1.0 + a)).sqrt();
    }
    out.iter_mut().for_each(|v| *v *= quarter);
    out
}

/// Quadrature panels in the dimensionless momentum `y = p·b`.
fn panel_edges(size: usize, mass_scale: f64, min_points: usize, refine: usize) -> Vec<f64> {
    let n = size as f64;
    let y_max = (4.0 * n + 40.0 * n.sqrt() + 100.0).sqrt();
    let mut edges = vec![0.0];
    // Grade towards the branch point of √(m² + p²) at p = i·m.
    if mass_scale > 0.0 && mass_scale < 1.0 {
        let mut e = mass_scale;
        while e < 1.0 {
            edges.push(e);
            e *= 2.0;
        }
    }
    let start = *edges.last().unwrap_or(&0.0);
    let by_width = ((y_max - start) / PANEL_WIDTH).ceil() as usize;
    let by_budget = min_points.div_ceil(PANEL_POINTS);
    let panels = by_width.max(by_budget).max(1) * refine;
    let width = (y_max - start) / panels as f64;
    edges.extend((1..=panels).map(|k| start + k as f64 * width));
    edges
}

/// Matrix of `f(p)` in the oscillator basis, where `f` is given as a
/// function of the dimensionless momentum `y = p·b`.
fn momentum_matrix<F>(size: usize, edges: &[f64], f: F) -> DMatrix<f64>
where
    F: Fn(f64) -> f64,
{
    let (nodes, weights) = quadrature::composite(edges, PANEL_POINTS);
    let mut a = DMatrix::<f64>::zeros(size, nodes.len());
    for (k, (&y, &w)) in nodes.iter().zip(&weights).enumerate() {
        let g = w * 2.0 * y * y * f(y);
        let root = g.max(0.0).sqrt();
        let ell = laguerre_functions(size, y * y);
        for i in 0..size {
            // (−1)^i: momentum-space phase of the i-th basis function.
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            a[(i, k)] = sign * root * ell[i];
        }
    }
    &a * a.transpose()
}

/// `r²` in the oscillator basis.
fn position_squared(size: usize, b: f64) -> DMatrix<f64> {
    let b2 = b * b;
    DMatrix::from_fn(size, size, |i, j| {
        let n = i.min(j) as f64;
        match i.abs_diff(j) {
            0 => b2 * (2.0 * i as f64 + 1.5),
            1 => -b2 * ((n + 1.0) * (n + 1.5)).sqrt(),
            _ => 0.0,
        }
    })
}

fn lowest_eigenvalue(h: DMatrix<f64>) -> f64 {
    SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Lowest eigenvalue of `√(m² + p²) − m + r²` for one basis size.
fn binding_at_size(m: f64, basis: &BasisConfig, size: usize, refine: usize) -> f64 {
    let b = basis.scale;
    let edges = panel_edges(size, m * b, basis.quadrature_points, refine);
    let kinetic = momentum_matrix(size, &edges, |y| {
        let p = y / b;
        if m > 0.0 {
            p * p / (m.hypot(p) + m)
        } else {
            p
        }
    });
    lowest_eigenvalue(kinetic + position_squared(size, b))
}

/// Ground energy of `√(m² + p²) + r²` in the oscillator basis.
pub fn salpeter_basis_energy(m: f64, basis: &BasisConfig) -> Result<BasisResult> {
    crate::pfunction::check_mass(m)?;
    basis.validate()?;

    let coarse = binding_at_size(m, basis, basis.size, 1);
    let fine = binding_at_size(m, basis, 2 * basis.size, 1);
    let fine_refined = binding_at_size(m, basis, 2 * basis.size, 2);
    let energy = m + fine;
    let quadrature_drift = (fine_refined - fine).abs();
    if !(quadrature_drift <= 1e-10 * energy.abs().max(1.0)) {
        return Err(Error::Quadrature(format!(
            "lowest eigenvalue moved by {quadrature_drift:.3e} when the quadrature was refined"
        )));
    }
    let error_estimate = (coarse - fine).abs();
    Ok(BasisResult {
        energy,
        error_estimate,
        basis_used: *basis,
        converged: error_estimate <= basis.target_tol * energy.abs().max(1.0),
    })
}
