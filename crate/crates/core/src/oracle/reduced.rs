use crate::bounds::SystemSpec;
use crate::error::Result;
use crate::radial::{auto_solve, CentralPotential};

/// Ground energy of `N √(m² + (2(N−1)/N) p²) + (N(N−1)/2) γ r²`, solved
/// directly instead of through the scaling of `e(m)`.
///
/// In momentum space `r² → −Δ_p`; with `k = √λ p` the operator becomes
/// `gλ [−Δ_k + (N/(gλ)) √(m² + k²)]`, `g = N(N−1)γ/2`, `λ = 2(N−1)/N`,
/// which is a radial problem in its own right.
pub fn reduced_operator_energy(sys: &SystemSpec, tol: f64) -> Result<f64> {
    sys.validate()?;
    let n = f64::from(sys.n);
    let lambda = 2.0 * (n - 1.0) / n;
    let g = n * (n - 1.0) * sys.gamma / 2.0;
    let strength = n / (g * lambda);
    let potential = CentralPotential::relativistic_excess(sys.m).affine(strength, 0.0);
    let binding = auto_solve(&potential, tol)?.energy;
    Ok(g * lambda * binding + n * sys.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{lower_bound, two_body_exact};
    use crate::pfunction::EnergyFunction;

    const AIRY_ZERO: f64 = 2.338_107_410_459_767;

    #[test]
    fn two_body_reduction() {
        let ef = EnergyFunction::default();
        for (m, gamma) in [(0.0, 1.0), (1.0, 0.5), (7.0, 2.0)] {
            let sys = SystemSpec::new(2, m, gamma).unwrap();
            let direct = reduced_operator_energy(&sys, 1e-10).unwrap();
            let exact = two_body_exact(&ef, m, gamma).unwrap();
            assert!((direct - exact).abs() < 1e-7 * exact, "m={m} γ={gamma}");
        }
    }

    #[test]
    fn matches_lower_bound() {
        let ef = EnergyFunction::default();
        let sys = SystemSpec::new(5, 1.0, 1.0).unwrap();
        let direct = reduced_operator_energy(&sys, 1e-10).unwrap();
        assert!((direct - lower_bound(&ef, &sys).unwrap()).abs() < 1e-6 * direct);

        let sys = SystemSpec::new(3, 0.0, 1.0).unwrap();
        let direct = reduced_operator_energy(&sys, 1e-10).unwrap();
        assert!((direct - 36f64.cbrt() * AIRY_ZERO).abs() < 1e-7);
        assert!((direct - 7.720261).abs() < 1e-6);
    }
}
