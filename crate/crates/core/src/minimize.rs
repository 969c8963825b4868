//! One-dimensional minimization of unimodal functions on the positive half-line.
//!
//! The objectives in this crate are all of the form `β·√(m² + a/t) + b·t`,
//! strictly convex in `t = r²`, so a golden-section search inside a
//! logarithmic bracket finds the global minimum without derivatives.

/// Result of a one-dimensional minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct GoldenSection {
    /// Initial scan range; extended by decades if the minimum sits on an edge.
    pub lower: f64,
    pub upper: f64,
    /// Relative width of the final bracket.
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for GoldenSection {
    fn default() -> Self {
        Self {
            lower: 1e-8,
            upper: 1e8,
            rel_tol: 1e-12,
            max_iter: 400,
        }
    }
}

// 1/φ
const INV_PHI: f64 = 0.618_033_988_749_894_8;

impl GoldenSection {
    pub fn minimize<F>(&self, f: F) -> Minimum
    where
        F: Fn(f64) -> f64,
    {
        let mut evaluations = 0;
        let mut eval = |t: f64| {
            evaluations += 1;
            f(t)
        };

        // Logarithmic scan, one point per decade.
        let lo_exp = self.lower.log10().floor() as i32;
        let hi_exp = self.upper.log10().ceil() as i32;
        let mut grid: Vec<(f64, f64)> = (lo_exp..=hi_exp)
            .map(|k| {
                let t = 10f64.powi(k);
                (t, eval(t))
            })
            .collect();

        let mut best = argmin(&grid);
        // Extend the scan while the minimum sits on an edge.
        while best == 0 && grid[0].0 > 1e-300 {
            let t = grid[0].0 * 0.1;
            grid.insert(0, (t, eval(t)));
            best = argmin(&grid);
        }
        while best == grid.len() - 1 && grid[best].0 < 1e300 {
            let t = grid[best].0 * 10.0;
            grid.push((t, eval(t)));
            best = argmin(&grid);
        }

        let mut a = grid[best.saturating_sub(1)].0;
        let mut b = grid[(best + 1).min(grid.len() - 1)].0;
        let (mut best_t, mut best_f) = grid[best];

        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = eval(c);
        let mut fd = eval(d);
        for _ in 0..self.max_iter {
            if b - a <= self.rel_tol * 0.5 * (a.abs() + b.abs()) {
                break;
            }
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = eval(d);
            }
            for (t, v) in [(c, fc), (d, fd)] {
                if v < best_f {
                    best_t = t;
                    best_f = v;
                }
            }
        }

        Minimum {
            arg: best_t,
            value: best_f,
            evaluations,
        }
    }
}

fn argmin(points: &[(f64, f64)]) -> usize {
    points
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &(_, v))| {
            if v < bv {
                (i, v)
            } else {
                (bi, bv)
            }
        })
        .0
}

/// Minimizes `β·√(m² + a/t) + b·t` over `t > 0` and returns the minimum
/// value.
pub fn min_sqrt_plus_linear(beta: f64, m: f64, a: f64, b: f64) -> Minimum {
    let mut min = min_sqrt_plus_linear_excess(beta, m, a, b);
    min.value += beta * m;
    min
}

/// Same as [`min_sqrt_plus_linear`] with the constant `β·m` left out. The
/// search only ever sees this binding part, which keeps precision when `m`
/// dominates.
pub fn min_sqrt_plus_linear_excess(beta: f64, m: f64, a: f64, b: f64) -> Minimum {
    let excess = |t: f64| {
        let x = a / t;
        // √(m² + x) − m without cancellation.
        let kinetic = if m > 0.0 {
            x / ((m * m + x).sqrt() + m)
        } else {
            x.sqrt()
        };
        beta * kinetic + b * t
    };
    GoldenSection::default().minimize(excess)
}
