//! Ground state of the reduced radial problem `−u″ + V(r)u = E u`,
//! `u(0) = u(R) = 0`, which is the l = 0 sector of `−Δ + V(r)` in three
//! dimensions.
//!
//! The operator is discretized with the three-point stencil on a uniform
//! grid, giving a symmetric tridiagonal matrix whose lowest eigenvalue is
//! found by Sturm bisection. Grids of `n`, `2n`, `4n`, … intervals are
//! combined by Richardson extrapolation in `h²`.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::tridiag::SymTridiagonal;

/// Large-r behaviour of a potential, used to guess the box radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    Linear,
    Quadratic,
    /// `√(m² + r²)`-like: quadratic near the origin, linear far out.
    SqrtQuadratic,
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A confining central potential `V(r)` for `r > 0`.
#[derive(Clone)]
pub struct CentralPotential {
    label: String,
    growth: Growth,
    evaluator: Evaluator,
}

impl fmt::Debug for CentralPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CentralPotential")
            .field("label", &self.label)
            .field("growth", &self.growth)
            .finish_non_exhaustive()
    }
}

impl CentralPotential {
    pub fn new<F>(label: impl Into<String>, growth: Growth, v: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            growth,
            evaluator: Arc::new(v),
        }
    }

    /// `V(r) = r`
    pub fn linear() -> Self {
        Self::new("r", Growth::Linear, |r| r)
    }

    /// `V(r) = r²`
    pub fn harmonic() -> Self {
        Self::new("r^2", Growth::Quadratic, |r| r * r)
    }

    /// `V(r) = √(m² + r²)`
    pub fn relativistic(m: f64) -> Self {
        Self::new(format!("sqrt({}^2+r^2)", compact(m)), Growth::SqrtQuadratic, move |r| {
            m.hypot(r)
        })
    }

    /// `V(r) = √(m² + r²) − m`, evaluated without cancellation. Solving with
    /// this potential and adding `m` afterwards keeps the binding energy
    /// accurate when `m` is large.
    pub fn relativistic_excess(m: f64) -> Self {
        Self::new(
            format!("sqrt({0}^2+r^2)-{0}", compact(m)),
            Growth::SqrtQuadratic,
            move |r| {
                let r2 = r * r;
                if m > 0.0 {
                    r2 / (m.hypot(r) + m)
                } else {
                    r
                }
            },
        )
    }

    /// `V(r) ↦ factor·V(r) + offset`
    pub fn affine(self, factor: f64, offset: f64) -> Self {
        let inner = self.evaluator;
        Self {
            label: format!("{}*({})+{}", compact(factor), self.label, compact(offset)),
            growth: self.growth,
            evaluator: Arc::new(move |r| factor * inner(r) + offset),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        (self.evaluator)(r)
    }

    fn check_confining(&self) -> Result<()> {
        // Radii 1, 1e3, …, 1e12: weak potentials such as r²/2m with large m
        // only rise far out.
        let values: Vec<f64> = (0..5).map(|k| self.eval(1e3f64.powi(k))).collect();
        let grows = values.iter().all(|v| v.is_finite())
            && values.windows(2).all(|w| w[1] > w[0])
            && values[4] - values[0] > 1e3;
        if grows {
            Ok(())
        } else {
            Err(Error::NonConfining(self.label.clone()))
        }
    }

    /// Smallest grid-resolved radius with `V(R) ≥ level`.
    fn radius_reaching(&self, level: f64) -> f64 {
        let guess = match self.growth {
            Growth::Linear | Growth::SqrtQuadratic => level.abs().max(1.0),
            Growth::Quadratic => level.abs().sqrt().max(1.0),
        };
        let mut lo = 0.0;
        let mut hi = guess;
        while self.eval(hi) < level {
            lo = hi;
            hi *= 2.0;
        }
        if lo == 0.0 {
            // Walk down from the guess to tighten the bracket.
            while hi > 1e-6 && self.eval(0.5 * hi) >= level {
                hi *= 0.5;
            }
            lo = 0.5 * hi;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) >= level {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// WKB decay exponent `∫ √(V − E) dr` from the classical turning point
    /// of `energy` out to `radius`.
    fn decay_action(&self, energy: f64, radius: f64) -> f64 {
        let turning = self.radius_reaching(energy);
        if radius <= turning {
            return 0.0;
        }
        let steps = 400;
        let h = (radius - turning) / steps as f64;
        let integrand = |r: f64| (self.eval(r) - energy).max(0.0).sqrt();
        let inner: f64 = (1..steps).map(|i| integrand(turning + i as f64 * h)).sum();
        h * (inner + 0.5 * (integrand(turning) + integrand(radius)))
    }

    /// Box radius for a state near `energy`: the potential must clear the
    /// energy by [`DECAY_MARGIN`] and the wavefunction must have decayed by
    /// at least `exp(−DECAY_ACTION)` at the wall.
    fn box_radius_for(&self, energy: f64) -> f64 {
        let mut radius = self.radius_reaching(energy + DECAY_MARGIN);
        while self.decay_action(energy, radius) < DECAY_ACTION {
            radius *= 1.25;
        }
        radius
    }
}

/// Shortest round-trip form, switching to exponent notation for very
/// large or small magnitudes.
pub(crate) fn compact(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub box_radius: f64,
    /// Number of intervals on the coarsest grid.
    pub points: usize,
    /// Number of grids `n, 2n, …, 2^(levels−1) n` fed to the extrapolation.
    pub refinement_levels: usize,
    /// Relative energy tolerance, measured against `max(1, |E|)`.
    pub target_tol: f64,
}

impl GridConfig {
    pub const DEFAULT_POINTS: usize = 4000;
    pub const DEFAULT_LEVELS: usize = 3;
    pub const DEFAULT_TOL: f64 = 1e-8;

    pub fn new(box_radius: f64, points: usize) -> Self {
        Self {
            box_radius,
            points,
            refinement_levels: Self::DEFAULT_LEVELS,
            target_tol: Self::DEFAULT_TOL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.box_radius > 0.0 && self.box_radius.is_finite()) {
            return Err(invalid(format!("box radius must be positive, got {}", self.box_radius)));
        }
        if self.points < 16 {
            return Err(invalid(format!("need at least 16 grid points, got {}", self.points)));
        }
        if !(2..=8).contains(&self.refinement_levels) {
            return Err(invalid(format!(
                "refinement levels must be in 2..=8, got {}",
                self.refinement_levels
            )));
        }
        if !(self.target_tol > 0.0) {
            return Err(invalid(format!("tolerance must be positive, got {}", self.target_tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub energy: f64,
    pub error_estimate: f64,
    pub grid_used: GridConfig,
    pub converged: bool,
    /// Unextrapolated eigenvalue on each grid, coarsest first.
    pub level_energies: Vec<f64>,
}

/// Lowest eigenvalue of the discretized problem with `n` intervals on `[0, R]`.
pub fn discrete_ground_energy(potential: &CentralPotential, box_radius: f64, n: usize) -> Result<f64> {
    let h = box_radius / n as f64;
    let kinetic = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(n - 1);
    for i in 1..n {
        let v = potential.eval(i as f64 * h);
        if !v.is_finite() {
            return Err(invalid(format!(
                "potential `{}` is not finite at r = {}",
                potential.label(),
                i as f64 * h
            )));
        }
        diag.push(2.0 * kinetic + v);
    }
    let off = vec![-kinetic; n - 2];
    Ok(SymTridiagonal::new(diag, off).lowest_eigenvalue().value)
}

/// Solves on the grids described by `grid` and extrapolates.
///
/// The returned `error_estimate` is the distance between the top two
/// entries of the finest Romberg row; `converged` reports whether it meets
/// `target_tol`.
pub fn solve_ground_state(potential: &CentralPotential, grid: &GridConfig) -> Result<EigenResult> {
    grid.validate()?;
    let levels = grid.refinement_levels;
    let level_energies = (0..levels)
        .map(|k| discrete_ground_energy(potential, grid.box_radius, grid.points << k))
        .collect::<Result<Vec<_>>>()?;

    // Romberg table in h², one row per grid.
    let mut prev: Vec<f64> = vec![level_energies[0]];
    for &raw in &level_energies[1..] {
        let mut row = vec![raw];
        let mut factor = 1.0;
        for j in 0..prev.len() {
            factor *= 4.0;
            let refined = row[j] + (row[j] - prev[j]) / (factor - 1.0);
            row.push(refined);
        }
        prev = row;
    }

    let energy = prev[levels - 1];
    let error_estimate = (prev[levels - 1] - prev[levels - 2]).abs();
    let converged = error_estimate <= grid.target_tol * energy.abs().max(1.0);
    Ok(EigenResult {
        energy,
        error_estimate,
        grid_used: *grid,
        converged,
        level_energies,
    })
}

/// Energy gap between `V(R)` and the eigenvalue estimate used to size the box.
pub const DECAY_MARGIN: f64 = 25.0;
/// Minimum WKB exponent at the wall; steep potentials reach the energy
/// margin before the wavefunction has decayed.
pub const DECAY_ACTION: f64 = 20.0;
/// Upper limit on the coarsest grid size during automatic refinement.
pub const MAX_POINTS: usize = 128_000;

/// Picks the box and grid automatically and refines until `target_tol` is met.
pub fn auto_solve(potential: &CentralPotential, target_tol: f64) -> Result<EigenResult> {
    if !(target_tol >= 1e-12) {
        return Err(invalid(format!("tolerance must be at least 1e-12, got {target_tol}")));
    }
    potential.check_confining()?;

    let floor = potential.eval(1e-8);
    let mut radius = potential.radius_reaching(floor + 2.0 * DECAY_MARGIN);
    for _ in 0..3 {
        let rough = GridConfig {
            box_radius: radius,
            points: 400,
            refinement_levels: 2,
            target_tol,
        };
        let rough_energy = solve_ground_state(potential, &rough)?.energy;
        let next = potential.box_radius_for(rough_energy);
        let settled = (next - radius).abs() <= 0.05 * radius;
        radius = next;
        if settled {
            break;
        }
    }

    let mut grid = GridConfig {
        box_radius: radius,
        points: GridConfig::DEFAULT_POINTS,
        refinement_levels: GridConfig::DEFAULT_LEVELS,
        target_tol,
    };
    loop {
        let result = solve_ground_state(potential, &grid)?;
        if result.converged {
            return Ok(result);
        }
        if grid.points * 2 > MAX_POINTS {
            return Err(Error::NotConverged {
                best: Box::new(result),
            });
        }
        grid.points *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AIRY_ZERO: f64 = 2.338_107_410_459_767;

    #[test]
    fn harmonic_default_grid() {
        let grid = GridConfig::new(6.0, GridConfig::DEFAULT_POINTS);
        let res = solve_ground_state(&CentralPotential::harmonic(), &grid).unwrap();
        assert!((res.energy - 3.0).abs() < 1e-8, "{}", res.energy);
        assert!(res.converged);
    }

    #[test]
    fn linear_auto() {
        let res = auto_solve(&CentralPotential::linear(), 1e-8).unwrap();
        assert!((res.energy - AIRY_ZERO).abs() < 1e-7, "{}", res.energy);
        assert!(res.converged);
        assert!(res.error_estimate <= 1e-8 * res.energy.max(1.0));
    }

    #[test]
    fn raw_and_extrapolated_orders() {
        let pot = CentralPotential::harmonic();
        let raw: Vec<f64> = [100, 200, 400, 800]
            .iter()
            .map(|&n| discrete_ground_energy(&pot, 6.0, n).unwrap())
            .collect();
        let order = |a: f64, b: f64, c: f64| ((a - b) / (b - c)).abs().log2();
        let raw_order = order(raw[0], raw[1], raw[2]).min(order(raw[1], raw[2], raw[3]));
        assert!(raw_order >= 1.9, "raw order {raw_order}");

        let ext: Vec<f64> = raw.windows(2).map(|w| (4.0 * w[1] - w[0]) / 3.0).collect();
        let ext_order = order(ext[0], ext[1], ext[2]);
        assert!(ext_order >= 3.5, "extrapolated order {ext_order}");
    }

    #[test]
    fn box_doubling_is_harmless() {
        let pot = CentralPotential::linear();
        let res = auto_solve(&pot, 1e-8).unwrap();
        let mut wide = res.grid_used;
        wide.box_radius *= 2.0;
        wide.points *= 2;
        let again = solve_ground_state(&pot, &wide).unwrap();
        assert!((again.energy - res.energy).abs() < 1e-8 * res.energy);
    }

    #[test]
    fn rejects_bad_inputs() {
        let coulomb = CentralPotential::new("-1/r", Growth::Linear, |r| -1.0 / r);
        assert!(matches!(auto_solve(&coulomb, 1e-8), Err(Error::NonConfining(_))));
        let flat = CentralPotential::new("1", Growth::Linear, |_| 1.0);
        assert!(matches!(auto_solve(&flat, 1e-8), Err(Error::NonConfining(_))));
        assert!(auto_solve(&CentralPotential::linear(), 1e-13).is_err());

        let pot = CentralPotential::harmonic();
        assert!(solve_ground_state(&pot, &GridConfig::new(0.0, 100)).is_err());
        assert!(solve_ground_state(&pot, &GridConfig::new(5.0, 8)).is_err());
        let mut one_level = GridConfig::new(5.0, 100);
        one_level.refinement_levels = 1;
        assert!(solve_ground_state(&pot, &one_level).is_err());
    }

    #[test]
    fn coarse_grid_reports_nonconvergence() {
        let mut grid = GridConfig::new(6.0, 16);
        grid.target_tol = 1e-12;
        let res = solve_ground_state(&CentralPotential::harmonic(), &grid).unwrap();
        assert!(!res.converged);
        assert!(res.error_estimate > 0.0);
    }

    #[test]
    fn affine_variant_shifts_and_scales() {
        // −u″ + (4r² + 1)u: scaling r → r/√2 gives 2·3 + 1.
        let pot = CentralPotential::harmonic().affine(4.0, 1.0);
        let res = auto_solve(&pot, 1e-10).unwrap();
        assert!((res.energy - 7.0).abs() < 1e-8, "{}", res.energy);
    }

    #[test]
    fn excess_form_matches_plain_form() {
        for m in [0.0, 0.7, 30.0] {
            let plain = auto_solve(&CentralPotential::relativistic(m), 1e-10).unwrap().energy;
            let excess = auto_solve(&CentralPotential::relativistic_excess(m), 1e-10).unwrap().energy;
            assert!((plain - (excess + m)).abs() < 1e-8 * plain.max(1.0), "m={m}");
        }
    }
}
