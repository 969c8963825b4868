//! Gaussian-trial upper bound with the square root bounded by Jensen's
//! inequality.
//!
//! For `φ(r) = (α/π)^{3/4} exp(−αr²/2)` one has `⟨r²⟩ = 3/(2α)` and
//! `⟨p²⟩ = 3α/2`, so the bound is
//! `N √(m² + (2(N−1)/N)·3α/2) + (N(N−1)/2)·γ·3/(2α)`.

use crate::bounds::SystemSpec;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTrial {
    pub alpha: f64,
}

impl GaussianTrial {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(Self { alpha })
        } else {
            Err(invalid(format!("Gaussian scale must be positive, got {alpha}")))
        }
    }
}

struct Coefficients {
    n: f64,
    m: f64,
    /// `⟨p²⟩` coefficient under the root: `(2(N−1)/N)·(3/2)`.
    c: f64,
    /// Potential coefficient: `(N(N−1)/2)·γ·(3/2)`.
    k: f64,
}

fn coefficients(sys: &SystemSpec) -> Coefficients {
    let n = f64::from(sys.n);
    Coefficients {
        n,
        m: sys.m,
        c: 3.0 * (n - 1.0) / n,
        k: 0.75 * n * (n - 1.0) * sys.gamma,
    }
}

pub fn gaussian_upper_expectation(sys: &SystemSpec, trial: &GaussianTrial) -> Result<f64> {
    sys.validate()?;
    let c = coefficients(sys);
    let a = trial.alpha;
    Ok(c.n * (c.m * c.m + c.c * a).sqrt() + c.k / a)
}

/// Minimum of [`gaussian_upper_expectation`] over `α`, returned as
/// `(α*, value)`.
///
/// Located by bisection on the stationarity condition
/// `N c α² = 2K √(m² + cα)`, which has exactly one positive root.
pub fn minimize_gaussian_upper(sys: &SystemSpec) -> Result<(f64, f64)> {
    sys.validate()?;
    let c = coefficients(sys);
    let h = |a: f64| c.n * c.c * a * a - 2.0 * c.k * (c.m * c.m + c.c * a).sqrt();

    let mut lo = 0.0;
    let mut hi = 1.0;
    while h(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let alpha = if lo > 0.0 { 0.5 * (lo + hi) } else { hi };
    let value = gaussian_upper_expectation(sys, &GaussianTrial { alpha })?;
    Ok((alpha, value))
}
