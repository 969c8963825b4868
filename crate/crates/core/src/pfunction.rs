//! The one-body energy `e(m)` of `√(m² + p²) + r²` and its representation
//! function `P(m)`.
//!
//! `e(m)` is the ground energy of the equivalent position-space problem
//! `−Δ + √(m² + r²)`. `P(m)` is the constant that makes
//! `min_r [√(m² + (P/r)²) + r²]` reproduce `e(m)` exactly.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{invalid, Result};
use crate::minimize::{min_sqrt_plus_linear, min_sqrt_plus_linear_excess};
use crate::radial::{auto_solve, CentralPotential, GridConfig};

/// Value of `P` at which the minimization form gives the Gaussian upper bound.
pub const P_UPPER: f64 = 1.5;

/// A representation constant `P > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PValue(f64);

impl PValue {
    pub const UPPER: PValue = PValue(P_UPPER);

    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(invalid(format!("P must be positive and finite, got {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The effective kinetic-potential point `(r, s, h_eff)` with
/// `s = √(m² + (P(m)/r)²)` and `h_eff = r²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticParametrization {
    pub r: f64,
    pub s: f64,
    pub h_eff: f64,
}

pub(crate) fn check_mass(m: f64) -> Result<()> {
    if m >= 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("mass must be finite and non-negative, got {m}")))
    }
}

/// Memoized `e(m)`. The table stores the binding part `e(m) − m`.
///
/// Safe to share between threads: lookups take a read lock, and a miss is
/// computed outside any lock and inserted afterwards, so racing callers may
/// both solve but never observe a partial entry.
#[derive(Debug)]
pub struct EnergyFunction {
    tol: f64,
    memo: RwLock<HashMap<(u64, u64), f64>>,
}

impl Default for EnergyFunction {
    fn default() -> Self {
        Self::new(GridConfig::DEFAULT_TOL)
    }
}

fn memo_key(m: f64, tol: f64) -> (u64, u64) {
    ((m * 1e12).round().to_bits(), tol.to_bits())
}

impl EnergyFunction {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn cached_entries(&self) -> usize {
        self.memo.read().map(|m| m.len()).unwrap_or(0)
    }

    /// `e(m) − m` at tolerance `tol`.
    pub fn binding_with_tol(&self, m: f64, tol: f64) -> Result<f64> {
        check_mass(m)?;
        let key = memo_key(m, tol);
        if let Some(hit) = self.memo.read().ok().and_then(|t| t.get(&key).copied()) {
            return Ok(hit);
        }
        let binding = auto_solve(&CentralPotential::relativistic_excess(m), tol)?.energy;
        if let Ok(mut table) = self.memo.write() {
            table.insert(key, binding);
        }
        Ok(binding)
    }

    pub fn binding(&self, m: f64) -> Result<f64> {
        self.binding_with_tol(m, self.tol)
    }

    pub fn e_of_m_with_tol(&self, m: f64, tol: f64) -> Result<f64> {
        Ok(m + self.binding_with_tol(m, tol)?)
    }

    /// Lowest eigenvalue of `−Δ + √(m² + r²)`.
    pub fn e_of_m(&self, m: f64) -> Result<f64> {
        self.e_of_m_with_tol(m, self.tol)
    }

    pub fn p_of_m_with_tol(&self, m: f64, tol: f64) -> Result<PValue> {
        let binding = self.binding_with_tol(m, tol)?;
        PValue::new(p_from_binding(m, binding))
    }

    pub fn p_of_m(&self, m: f64) -> Result<PValue> {
        self.p_of_m_with_tol(m, self.tol)
    }

    pub fn kinetic_parametrization(&self, m: f64, r: f64) -> Result<KineticParametrization> {
        if !(r > 0.0) {
            return Err(invalid(format!("r must be positive, got {r}")));
        }
        let p = self.p_of_m(m)?.value();
        Ok(KineticParametrization {
            r,
            s: m.hypot(p / r),
            h_eff: r * r,
        })
    }
}

/// Inverts the minimization form: `P` from `m` and `e(m)`.
///
/// `P = √(2(e + √(e² + 3m²))/27) · (2e − √(e² + 3m²))`
pub fn p_from_energy(m: f64, e: f64) -> f64 {
    p_from_binding(m, e - m)
}

/// Same as [`p_from_energy`] with `e = m + binding`. The factor
/// `2e − √(e² + 3m²)` is rewritten as `3·binding·(e + m)/(2e + √(e² + 3m²))`
/// so that nothing cancels for large `m`.
pub fn p_from_binding(m: f64, binding: f64) -> f64 {
    let e = m + binding;
    let root = (e * e + 3.0 * m * m).sqrt();
    (2.0 * (e + root) / 27.0).sqrt() * 3.0 * binding * (e + m) / (2.0 * e + root)
}

/// `min_{r>0} [√(m² + (P/r)²) + r²]`
pub fn e_via_min(m: f64, p: PValue) -> Result<f64> {
    check_mass(m)?;
    let p = p.value();
    Ok(min_sqrt_plus_linear(1.0, m, p * p, 1.0).value)
}

/// [`e_via_min`] without the rest mass.
pub fn binding_via_min(m: f64, p: PValue) -> Result<f64> {
    check_mass(m)?;
    let p = p.value();
    Ok(min_sqrt_plus_linear_excess(1.0, m, p * p, 1.0).value)
}

/// Schrödinger-limit one-body energy `m + 3/√(2m)`.
pub fn e_nr(m: f64) -> Result<f64> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(invalid(format!("nonrelativistic energy needs m > 0, got {m}")));
    }
    Ok(m + 3.0 / (2.0 * m).sqrt())
}
