//! Spectral check that `[1 − (∂x − ∂y)²]^{1/2} Ψ = (1 − ∂x²)^{1/2} Ψ` for
//! `Ψ(x, y) = ψ(x)`.
//!
//! The left side is applied as the multiplier `√(1 + (p − q)²)` on the 2-D
//! discrete Fourier transform of Ψ; the right side as `√(1 + p²)` on the
//! 1-D transform of ψ, broadcast along y.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid, Error, Result};

/// Box half-width in units of the trial width.
pub const BOX_HALF_WIDTHS: f64 = 12.0;
/// Largest spectral energy fraction allowed above 3/4 of the Nyquist wavenumber.
pub const TAIL_LIMIT: f64 = 1e-12;

fn wavenumbers(n: usize, half_width: f64) -> Vec<f64> {
    let dk = std::f64::consts::PI / half_width;
    (0..n)
        .map(|j| {
            let k = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
            k * dk
        })
        .collect()
}

/// Residual for a Gaussian `ψ(x) = exp(−x²/(2w²))`, box half-width `12 w`.
pub fn kinetic_identity_residual(grid_points: usize, trial_width: f64) -> Result<f64> {
    if !(trial_width > 0.0 && trial_width.is_finite()) {
        return Err(invalid(format!("trial width must be positive, got {trial_width}")));
    }
    let w2 = trial_width * trial_width;
    kinetic_identity_residual_with(grid_points, BOX_HALF_WIDTHS * trial_width, move |x| {
        (-x * x / (2.0 * w2)).exp()
    })
}

/// Residual for an arbitrary profile `ψ` on the periodic box `[−L, L)²`.
pub fn kinetic_identity_residual_with<F>(grid_points: usize, half_width: f64, psi: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let n = grid_points;
    if n < 64 || !n.is_power_of_two() {
        return Err(invalid(format!("grid points must be a power of two ≥ 64, got {n}")));
    }
    if !(half_width > 0.0) {
        return Err(invalid("box half-width must be positive"));
    }

    let dx = 2.0 * half_width / n as f64;
    let samples: Vec<f64> = (0..n).map(|j| psi(-half_width + j as f64 * dx)).collect();
    let peak = samples.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if peak == 0.0 || !peak.is_finite() {
        return Err(invalid("trial function vanishes or is not finite on the grid"));
    }
    let edge = psi(-half_width).abs().max(psi(half_width).abs());
    if edge > TAIL_LIMIT * peak {
        return Err(Error::UnderResolved(format!(
            "trial is not contained in the box: |ψ(±L)|/max|ψ| = {:.3e}",
            edge / peak
        )));
    }

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let k = wavenumbers(n, half_width);

    // 1-D route.
    let mut line: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward.process(&mut line);

    let total: f64 = line.iter().map(|c| c.norm_sqr()).sum();
    let cutoff = 0.75 * k[n / 2].abs();
    let tail: f64 = line
        .iter()
        .zip(&k)
        .filter(|(_, kj)| kj.abs() > cutoff)
        .map(|(c, _)| c.norm_sqr())
        .sum();
    if tail > TAIL_LIMIT * total {
        return Err(Error::UnderResolved(format!(
            "spectral tail mass {:.3e} exceeds {TAIL_LIMIT:.0e}",
            tail / total
        )));
    }

    for (c, kj) in line.iter_mut().zip(&k) {
        *c *= (1.0 + kj * kj).sqrt();
    }
    inverse.process(&mut line);
    let rhs_line: Vec<f64> = line.iter().map(|c| c.re / n as f64).collect();

    // 2-D route; grid[iy * n + ix] = Ψ(x_ix, y_iy).
    let mut grid: Vec<Complex64> = Vec::with_capacity(n * n);
    for _ in 0..n {
        grid.extend(samples.iter().map(|&v| Complex64::new(v, 0.0)));
    }
    fft_2d(&mut grid, n, forward.as_ref());
    for (iy, q) in k.iter().enumerate() {
        for (ix, p) in k.iter().enumerate() {
            let d = p - q;
            grid[iy * n + ix] *= (1.0 + d * d).sqrt();
        }
    }
    fft_2d(&mut grid, n, inverse.as_ref());
    let norm = (n * n) as f64;

    let mut diff = 0.0;
    let mut reference = 0.0;
    for iy in 0..n {
        for ix in 0..n {
            let lhs = grid[iy * n + ix].re / norm;
            let rhs = rhs_line[ix];
            diff += (lhs - rhs) * (lhs - rhs);
            reference += rhs * rhs;
        }
    }
    Ok((diff / reference).sqrt())
}

fn fft_2d(data: &mut [Complex64], n: usize, fft: &dyn rustfft::Fft<f64>) {
    for row in data.chunks_exact_mut(n) {
        fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for ix in 0..n {
        for iy in 0..n {
            column[iy] = data[iy * n + ix];
        }
        fft.process(&mut column);
        for iy in 0..n {
            data[iy * n + ix] = column[iy];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_residuals() {
        assert!(kinetic_identity_residual(256, 1.0).unwrap() < 1e-10);
        assert!(kinetic_identity_residual(128, 1.0).unwrap() < 1e-8);
        assert!(kinetic_identity_residual(64, 0.3).unwrap() < 1e-10);
    }

    #[test]
    fn two_gaussians() {
        let psi = |x: f64| (-(x - 1.5).powi(2) / 2.0).exp() + 0.7 * (-(x + 2.0).powi(2) / 0.8).exp();
        let res = kinetic_identity_residual_with(256, 16.0, psi).unwrap();
        assert!(res < 1e-10, "{res}");
    }

    #[test]
    fn residual_stays_at_roundoff_floor() {
        let res: Vec<f64> = [64, 128, 256, 512].iter().map(|&n| kinetic_identity_residual(n, 1.0).unwrap()).collect();
        for r in &res {
            assert!(*r < 1e-13, "{res:?}");
        }
    }

    #[test]
    fn rejects_unresolved_or_uncontained_trials() {
        // Narrow spike on a wide box.
        let spike = |x: f64| (-x * x / (2.0 * 0.01)).exp();
        assert!(matches!(kinetic_identity_residual_with(64, 12.0, spike), Err(Error::UnderResolved(_))));
        // Wide Gaussian on a small box.
        let wide = |x: f64| (-x * x / 50.0).exp();
        assert!(matches!(kinetic_identity_residual_with(256, 5.0, wide), Err(Error::UnderResolved(_))));
        assert!(kinetic_identity_residual(100, 1.0).is_err());
        assert!(kinetic_identity_residual(32, 1.0).is_err());
        assert!(kinetic_identity_residual(128, 0.0).is_err());
    }
}
