//! Symmetric tridiagonal eigenvalue extraction by Sturm-sequence bisection.
//!
//! Only the lowest eigenvalue is needed by the radial solver. Bisection on
//! the sign count brackets it rigorously (up to rounding in the LDLᵀ
//! recurrence), and a single inverse-iteration step followed by a Rayleigh
//! quotient polishes the midpoint.

#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

/// Lowest eigenvalue together with the Sturm bracket it was refined from.
#[derive(Debug, Clone, Copy)]
pub struct LowestEigen {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.diag.len() {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - x - e * e / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin lower bound for the spectrum.
    fn gershgorin_lower(&self) -> f64 {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                self.diag[i] - left - right
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn lowest_eigenvalue(&self) -> LowestEigen {
        let mut lo = self.gershgorin_lower();
        // Every diagonal entry is a Rayleigh quotient.
        let mut hi = self.diag.iter().copied().fold(f64::INFINITY, f64::min);
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;

        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            if self.sturm_count(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }

        let shift = 0.5 * (lo + hi);
        let value = match self.inverse_iteration(shift) {
            Some(rq) if rq >= lo - pad && rq <= hi + pad => rq,
            _ => shift,
        };
        LowestEigen {
            value,
            lower: lo,
            upper: hi,
        }
    }

    /// One step of inverse iteration at `shift`; returns the Rayleigh quotient
    /// of the resulting vector.
    fn inverse_iteration(&self, shift: f64) -> Option<f64> {
        let n = self.diag.len();
        if n == 1 {
            return Some(self.diag[0]);
        }
        let tiny = f64::EPSILON * self.diag.iter().fold(1.0_f64, |a, d| a.max(d.abs()));

        // LDLᵀ factorization of T - shift·I.
        let mut d = vec![0.0; n];
        let mut l = vec![0.0; n - 1];
        d[0] = self.diag[0] - shift;
        for i in 1..n {
            if d[i - 1] == 0.0 {
                d[i - 1] = tiny;
            }
            l[i - 1] = self.off[i - 1] / d[i - 1];
            d[i] = self.diag[i] - shift - l[i - 1] * self.off[i - 1];
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }

        let mut x = vec![1.0; n];
        for i in 1..n {
            x[i] -= l[i - 1] * x[i - 1];
        }
        for i in 0..n {
            x[i] /= d[i];
        }
        for i in (0..n - 1).rev() {
            x[i] -= l[i] * x[i + 1];
        }

        let scale = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if !scale.is_finite() || scale == 0.0 {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= scale);

        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let mut tx = self.diag[i] * x[i];
            if i > 0 {
                tx += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                tx += self.off[i] * x[i + 1];
            }
            num += x[i] * tx;
            den += x[i] * x[i];
        }
        let rq = num / den;
        rq.is_finite().then_some(rq)
    }
}
