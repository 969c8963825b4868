//! Ground-state energy bounds for `N` identical bosons with Hamiltonian
//! `Σ √(m² + pᵢ²) + Σ_{i<j} γ |rᵢ − rⱼ|²`.
//!
//! Both bounds come from one formula,
//!
//! ```text
//! E(P) = min_{r>0} [ N √(m² + 2(N−1)P²/(N r²)) + N(N−1)γ r²/2 ]
//! ```
//!
//! which is an upper bound at `P = 3/2` and a lower bound at `P = P(μ)`,
//! `μ = m (N/(γ(N−1)²))^{1/3}`. All energies include the rest mass `N·m`.

use crate::error::{invalid, Error, Result};
use crate::minimize::{min_sqrt_plus_linear, min_sqrt_plus_linear_excess};
use crate::pfunction::{check_mass, EnergyFunction, PValue};

/// `N` bosons of mass `m` with pair coupling `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub n: u32,
    pub m: f64,
    pub gamma: f64,
}

impl SystemSpec {
    pub fn new(n: u32, m: f64, gamma: f64) -> Result<Self> {
        let sys = Self { n, m, gamma };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid(format!("need at least 2 bosons, got {}", self.n)));
        }
        check_mass(self.m)?;
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(invalid(format!("coupling must be positive, got {}", self.gamma)));
        }
        Ok(())
    }

    fn count(&self) -> f64 {
        f64::from(self.n)
    }

    /// Kinetic coefficient `2(N−1)/N` under the square root.
    fn kinetic_scale(&self) -> f64 {
        let n = self.count();
        2.0 * (n - 1.0) / n
    }

    /// Oscillator coefficient `N(N−1)γ/2`.
    fn pair_coupling(&self) -> f64 {
        let n = self.count();
        n * (n - 1.0) * self.gamma / 2.0
    }

    pub fn rest_mass(&self) -> f64 {
        self.count() * self.m
    }
}

/// One-body Hamiltonian `β √(m² + λ p²) + γ r²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledOneBodySpec {
    pub m: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl ScaledOneBodySpec {
    pub fn new(m: f64, beta: f64, gamma: f64, lambda: f64) -> Result<Self> {
        check_mass(m)?;
        for (name, v) in [("beta", beta), ("gamma", gamma), ("lambda", lambda)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { m, beta, gamma, lambda })
    }

    /// The one-body operator that bounds the `N`-body energy from below:
    /// `β = N`, `λ = 2(N−1)/N`, `γ → N(N−1)γ/2`.
    pub fn reduced(sys: &SystemSpec) -> Self {
        Self {
            m: sys.m,
            beta: sys.count(),
            gamma: sys.pair_coupling(),
            lambda: sys.kinetic_scale(),
        }
    }

    /// Energy scale `(β²γλ)^{1/3}`.
    pub fn energy_scale(&self) -> f64 {
        (self.beta * self.beta * self.gamma * self.lambda).cbrt()
    }

    /// Mass argument `m (β/(γλ))^{1/3}` of `e`.
    pub fn scaled_mass(&self) -> f64 {
        self.m * (self.beta / (self.gamma * self.lambda)).cbrt()
    }
}

/// Paired bounds from [`bounds_pair`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBounds {
    pub lower: f64,
    pub upper: f64,
    pub p_lower: PValue,
    pub p_upper: PValue,
    pub mu: f64,
    /// `lower − N m`, computed without cancellation.
    pub lower_binding: f64,
    /// `upper − N m`, computed without cancellation.
    pub upper_binding: f64,
}

/// Minimized two-term bound formula evaluated at an arbitrary `P`.
pub fn bound_formula(sys: &SystemSpec, p: PValue) -> Result<f64> {
    sys.validate()?;
    let p = p.value();
    Ok(min_sqrt_plus_linear(sys.count(), sys.m, sys.kinetic_scale() * p * p, sys.pair_coupling()).value)
}

/// [`bound_formula`] minus the rest mass `N m`.
pub fn bound_formula_binding(sys: &SystemSpec, p: PValue) -> Result<f64> {
    sys.validate()?;
    let p = p.value();
    Ok(min_sqrt_plus_linear_excess(sys.count(), sys.m, sys.kinetic_scale() * p * p, sys.pair_coupling()).value)
}

/// `μ = m (N/(γ(N−1)²))^{1/3}`
pub fn mu_of(sys: &SystemSpec) -> Result<f64> {
    sys.validate()?;
    let n = sys.count();
    Ok(sys.m * (n / (sys.gamma * (n - 1.0) * (n - 1.0))).cbrt())
}

fn lower_scale(sys: &SystemSpec) -> f64 {
    let n = sys.count();
    (n * n * (n - 1.0) * (n - 1.0) * sys.gamma).cbrt()
}

/// `(N²(N−1)²γ)^{1/3} e(μ)`
pub fn lower_bound(ef: &EnergyFunction, sys: &SystemSpec) -> Result<f64> {
    let mu = mu_of(sys)?;
    Ok(lower_scale(sys) * ef.e_of_m(mu)?)
}

/// [`lower_bound`] minus `N m`. The scale factor times `μ` is exactly `N m`,
/// so only the binding part of `e(μ)` survives.
pub fn lower_bound_binding(ef: &EnergyFunction, sys: &SystemSpec) -> Result<f64> {
    let mu = mu_of(sys)?;
    Ok(lower_scale(sys) * ef.binding(mu)?)
}

/// The lower bound through the minimization formula with `P = P(μ)`.
pub fn lower_bound_via_p(ef: &EnergyFunction, sys: &SystemSpec) -> Result<f64> {
    let p = ef.p_of_m(mu_of(sys)?)?;
    bound_formula(sys, p)
}

pub fn upper_bound(sys: &SystemSpec) -> Result<f64> {
    bound_formula(sys, PValue::UPPER)
}

/// Exact two-body energy `(4γ)^{1/3} e(m (2/γ)^{1/3})`.
pub fn two_body_exact(ef: &EnergyFunction, m: f64, gamma: f64) -> Result<f64> {
    let spec = ScaledOneBodySpec::new(m, 2.0, gamma, 1.0)?;
    scaled_one_body_energy(ef, &spec)
}

/// Ground energy of `β √(m² + λ p²) + γ r²` by scaling from `e`.
pub fn scaled_one_body_energy(ef: &EnergyFunction, spec: &ScaledOneBodySpec) -> Result<f64> {
    Ok(spec.energy_scale() * ef.e_of_m(spec.scaled_mass())?)
}

/// Exact Schrödinger-limit energy `N m + 3 (γ/(2m))^{1/2} N^{1/2} (N−1)`.
pub fn nonrel_energy(sys: &SystemSpec) -> Result<f64> {
    sys.validate()?;
    if sys.m <= 0.0 {
        return Err(invalid("nonrelativistic energy needs m > 0"));
    }
    let n = sys.count();
    Ok(n * sys.m + 3.0 * (sys.gamma / (2.0 * sys.m)).sqrt() * n.sqrt() * (n - 1.0))
}

/// Lower and upper bound together. A lower bound above the upper bound
/// beyond rounding is reported as [`Error::SandwichViolation`].
pub fn bounds_pair(ef: &EnergyFunction, sys: &SystemSpec) -> Result<EnergyBounds> {
    let mu = mu_of(sys)?;
    let p_lower = ef.p_of_m(mu)?;
    let lower = lower_bound(ef, sys)?;
    let upper = upper_bound(sys)?;
    if lower > upper + 1e-9 * upper.abs().max(1.0) {
        return Err(Error::SandwichViolation { lower, upper });
    }
    Ok(EnergyBounds {
        lower,
        upper,
        p_lower,
        p_upper: PValue::UPPER,
        mu,
        lower_binding: lower_bound_binding(ef, sys)?,
        upper_binding: bound_formula_binding(sys, PValue::UPPER)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const AIRY_ZERO: f64 = 2.338_107_410_459_767;

    fn sys(n: u32, m: f64, gamma: f64) -> SystemSpec {
        SystemSpec::new(n, m, gamma).unwrap()
    }

    /// Massless closed form of the bound formula:
    /// min_r [N√λ P/r + g r²] = 3 (N√λ P/2)^{2/3} g^{1/3}.
    fn massless_closed_form(n: u32, gamma: f64, p: f64) -> f64 {
        let nf = f64::from(n);
        let lambda = 2.0 * (nf - 1.0) / nf;
        let g = nf * (nf - 1.0) * gamma / 2.0;
        3.0 * (nf * lambda.sqrt() * p / 2.0).powf(2.0 / 3.0) * g.cbrt()
    }

    #[test]
    fn mu_examples() {
        assert!((mu_of(&sys(2, 1.0, 1.0)).unwrap() - 2f64.cbrt()).abs() < 1e-15);
        assert_eq!(mu_of(&sys(5, 0.0, 1.3)).unwrap(), 0.0);
        let mu = mu_of(&sys(8, 2.0, 0.5)).unwrap();
        assert!((mu - 2.0 * (16.0f64 / 49.0).cbrt()).abs() < 1e-15);
        assert!((mu - 1.3772242).abs() < 1e-7);
    }

    #[test]
    fn massless_examples() {
        let ef = EnergyFunction::default();
        let two = sys(2, 0.0, 1.0);
        let p0 = ef.p_of_m(0.0).unwrap();

        let via_p0 = bound_formula(&two, p0).unwrap();
        assert!((via_p0 - 4f64.cbrt() * AIRY_ZERO).abs() < 1e-7);
        assert!((via_p0 - 3.7115142).abs() < 1e-7);

        let upper = upper_bound(&two).unwrap();
        assert!((upper - 3.0 * 1.5f64.powf(2.0 / 3.0)).abs() < 1e-13);
        assert!((upper - 3.9311121).abs() < 1e-7);

        let lower = lower_bound(&ef, &two).unwrap();
        assert!((lower - 3.7115142).abs() < 1e-7);
        assert!(upper > lower);

        let five = lower_bound(&ef, &sys(5, 0.0, 1.0)).unwrap();
        assert!((five - 400f64.cbrt() * AIRY_ZERO).abs() < 1e-7);
        assert!((five - 17.227323).abs() < 1e-6);

        let four = bounds_pair(&ef, &sys(4, 0.0, 1.0)).unwrap();
        assert!((four.lower - 144f64.cbrt() * AIRY_ZERO).abs() < 1e-7);
        assert!((four.lower - 12.255150).abs() < 1e-6);
        assert!((four.upper - massless_closed_form(4, 1.0, 1.5)).abs() < 1e-12);
        assert!(four.lower < four.upper);
    }

    #[test]
    fn bound_formula_matches_massless_closed_form() {
        for n in 2..=8 {
            for gamma in [0.5, 1.0, 2.0] {
                for p in [1.2, 1.5] {
                    let got = bound_formula(&sys(n, 0.0, gamma), PValue::new(p).unwrap()).unwrap();
                    let exact = massless_closed_form(n, gamma, p);
                    assert!((got - exact).abs() < 1e-13 * exact, "N={n} γ={gamma} P={p}");
                }
            }
        }
    }

    #[test]
    fn two_body_examples() {
        let ef = EnergyFunction::default();
        let e = two_body_exact(&ef, 0.0, 1.0).unwrap();
        assert!((e - 4f64.cbrt() * 2.33810741).abs() < 1e-7);
        let e = two_body_exact(&ef, 0.0, 2.0).unwrap();
        assert!((e - 4.676215).abs() < 1e-6);
        // Heavy pair: 2m + 3√(γ/(2m))·√2.
        let (m, gamma) = (2000.0, 1.5);
        let e = two_body_exact(&ef, m, gamma).unwrap();
        let nr = 2.0 * m + 3.0 * (gamma / (2.0 * m)).sqrt() * 2f64.sqrt();
        assert!((e - nr).abs() < 2e-3 * (nr - 2.0 * m), "{e} vs {nr}");
    }

    #[test]
    fn scaled_one_body_identities() {
        let ef = EnergyFunction::default();
        for m in [0.0, 0.3, 4.0] {
            let id = ScaledOneBodySpec::new(m, 1.0, 1.0, 1.0).unwrap();
            assert_eq!(scaled_one_body_energy(&ef, &id).unwrap(), ef.e_of_m(m).unwrap());

            for gamma in [0.5, 2.0] {
                let pair = ScaledOneBodySpec::new(m, 2.0, gamma, 1.0).unwrap();
                assert_eq!(
                    scaled_one_body_energy(&ef, &pair).unwrap(),
                    two_body_exact(&ef, m, gamma).unwrap()
                );
            }
        }
        for n in [3, 5, 8] {
            let s = sys(n, 1.7, 0.8);
            let reduced = scaled_one_body_energy(&ef, &ScaledOneBodySpec::reduced(&s)).unwrap();
            let lower = lower_bound(&ef, &s).unwrap();
            assert!((reduced - lower).abs() < 1e-10 * lower);
        }
        assert!(ScaledOneBodySpec::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(ScaledOneBodySpec::new(1.0, 1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn nonrel_examples() {
        assert!((nonrel_energy(&sys(2, 1.0, 1.0)).unwrap() - 5.0).abs() < 1e-14);
        assert!((nonrel_energy(&sys(3, 2.0, 1.0)).unwrap() - (6.0 + 3.0 * 3f64.sqrt())).abs() < 1e-14);
        assert!((nonrel_energy(&sys(3, 2.0, 1.0)).unwrap() - 11.19615).abs() < 1e-5);
        assert!((nonrel_energy(&sys(8, 1.0, 1.0)).unwrap() - 50.0).abs() < 1e-13);
        assert!(nonrel_energy(&sys(3, 0.0, 1.0)).is_err());
    }

    #[test]
    fn n3_reduced_operator_brackets() {
        // With P = P(μ) the formula equals the reduced one-body energy; with
        // P = 3/2 it lies above it.
        let ef = EnergyFunction::default();
        let s = sys(3, 1.0, 1.0);
        let reduced = scaled_one_body_energy(&ef, &ScaledOneBodySpec::reduced(&s)).unwrap();
        let via_p = lower_bound_via_p(&ef, &s).unwrap();
        assert!((via_p - reduced).abs() < 1e-6 * reduced);
        assert!(upper_bound(&s).unwrap() > reduced);
    }

    #[test]
    fn formula_equivalence_and_two_body_exactness() {
        let ef = EnergyFunction::default();
        for m in [0.0, 0.1, 1.0, 10.0, 100.0] {
            for gamma in [0.5, 1.0, 2.0] {
                for n in [2, 3, 6] {
                    let s = sys(n, m, gamma);
                    let direct = lower_bound(&ef, &s).unwrap();
                    let via_p = lower_bound_via_p(&ef, &s).unwrap();
                    assert!((direct - via_p).abs() <= 1e-6 * direct, "N={n} m={m} γ={gamma}");
                }
                let pair = lower_bound(&ef, &sys(2, m, gamma)).unwrap();
                let exact = two_body_exact(&ef, m, gamma).unwrap();
                assert!((pair - exact).abs() <= 1e-10 * exact);
            }
        }
    }

    #[test]
    fn coupling_scaling() {
        // E(N, m, γ) recomputed as γ^{1/3} (N²(N−1)²)^{1/3} e(μ).
        let ef = EnergyFunction::default();
        for (n, m, gamma) in [(3, 1.0, 0.5), (6, 2.5, 2.0)] {
            let s = sys(n, m, gamma);
            let nf = f64::from(n);
            let mu = mu_of(&s).unwrap();
            let alt = gamma.cbrt() * (nf * nf * (nf - 1.0) * (nf - 1.0)).cbrt() * ef.e_of_m(mu).unwrap();
            let lower = lower_bound(&ef, &s).unwrap();
            assert!((alt - lower).abs() < 1e-12 * lower);
        }
    }

    #[test]
    fn binding_parts_match_totals() {
        let ef = EnergyFunction::default();
        let s = sys(4, 3.0, 1.0);
        let b = bounds_pair(&ef, &s).unwrap();
        assert!((b.lower - s.rest_mass() - b.lower_binding).abs() < 1e-12 * b.lower);
        assert!((b.upper - s.rest_mass() - b.upper_binding).abs() < 1e-12 * b.upper);
        assert_eq!(b.p_upper.value(), 1.5);
        assert_eq!(b.mu, mu_of(&s).unwrap());
    }

    #[test]
    fn heavy_coalescence() {
        let ef = EnergyFunction::default();
        let s = sys(3, 1000.0, 1.0);
        let nr = nonrel_energy(&s).unwrap();
        let upper = upper_bound(&s).unwrap();
        assert!((upper - nr).abs() < 0.01 * nr);

        let b = bounds_pair(&ef, &sys(2, 1000.0, 1.0)).unwrap();
        assert!((b.upper - b.lower) / (b.upper - 2000.0) < 0.01);
    }

    #[test]
    fn invalid_systems() {
        assert!(SystemSpec::new(1, 1.0, 1.0).is_err());
        assert!(SystemSpec::new(3, -1.0, 1.0).is_err());
        assert!(SystemSpec::new(3, 1.0, 0.0).is_err());
        assert!(SystemSpec::new(3, 1.0, f64::INFINITY).is_err());
    }

    proptest! {
        #[test]
        fn bound_monotone_in_p(n in 2u32..9, m in 0.0f64..50.0, gamma in 0.1f64..5.0,
                               p in 0.5f64..2.0, dp in 0.0f64..0.5) {
            let s = sys(n, m, gamma);
            let lo = bound_formula(&s, PValue::new(p).unwrap()).unwrap();
            let hi = bound_formula(&s, PValue::new(p + dp).unwrap()).unwrap();
            prop_assert!(lo <= hi * (1.0 + 1e-13));
        }
    }
}
