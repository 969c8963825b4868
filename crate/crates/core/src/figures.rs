//! Tables behind the three figures and their CSV form.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::bounds::{bound_formula, bound_formula_binding, lower_bound, lower_bound_binding, upper_bound, SystemSpec};
use crate::error::{invalid, Error, Result};
use crate::pfunction::{EnergyFunction, PValue};

pub const FIGURE1_HEADER: &str = "m,e_minus_m,P";
pub const FIGURE2_HEADER: &str = "m,N,E_lower_const,E_upper";
pub const FIGURE3_HEADER: &str = "m,N,E_lower_running,E_upper";

pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Masses to tabulate: an explicit list or `count` points from `start` to
/// `stop` inclusive. In JSON it may also be given in its string form.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "MassGridRepr")]
pub enum MassGrid {
    List(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        count: usize,
        spacing: Spacing,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MassGridRepr {
    Text(String),
    List(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        count: usize,
        spacing: Spacing,
    },
}

impl TryFrom<MassGridRepr> for MassGrid {
    type Error = Error;

    fn try_from(r: MassGridRepr) -> Result<Self> {
        match r {
            MassGridRepr::Text(s) => s.parse(),
            MassGridRepr::List(v) => Ok(MassGrid::List(v)),
            MassGridRepr::Range { start, stop, count, spacing } => Ok(MassGrid::Range { start, stop, count, spacing }),
        }
    }
}

impl Default for MassGrid {
    fn default() -> Self {
        MassGrid::Range {
            start: 0.0,
            stop: 10.0,
            count: 101,
            spacing: Spacing::Linear,
        }
    }
}

impl MassGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        let pts = match *self {
            MassGrid::List(ref v) => v.clone(),
            MassGrid::Range { start, stop, count, spacing } => {
                if count == 0 {
                    return Err(invalid("mass grid needs at least one point"));
                }
                if !(start.is_finite() && stop.is_finite()) {
                    return Err(invalid("mass grid bounds must be finite"));
                }
                if count == 1 {
                    vec![start]
                } else {
                    let last = (count - 1) as f64;
                    match spacing {
                        Spacing::Linear => (0..count)
                            .map(|i| if i + 1 == count { stop } else { start + (stop - start) * i as f64 / last })
                            .collect(),
                        Spacing::Log => {
                            if !(start > 0.0 && stop > 0.0) {
                                return Err(invalid("log-spaced mass grid needs positive bounds"));
                            }
                            let (a, b) = (start.ln(), stop.ln());
                            (0..count)
                                .map(|i| {
                                    if i == 0 {
                                        start
                                    } else if i + 1 == count {
                                        stop
                                    } else {
                                        (a + (b - a) * i as f64 / last).exp()
                                    }
                                })
                                .collect()
                        }
                    }
                }
            }
        };
        if pts.is_empty() {
            return Err(invalid("mass grid is empty"));
        }
        if let Some(bad) = pts.iter().find(|m| !(m.is_finite() && **m >= 0.0)) {
            return Err(invalid(format!("masses must be finite and non-negative, got {bad}")));
        }
        Ok(pts)
    }
}

/// `start:stop:count:linear|log`, or a comma-separated list of masses.
impl FromStr for MassGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| invalid(format!("not a number in mass grid: {t:?}")))
        };
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if !(3..=4).contains(&parts.len()) {
                return Err(invalid(format!("expected start:stop:count[:linear|log], got {s:?}")));
            }
            let count = parts[2]
                .trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("bad point count {:?}", parts[2])))?;
            let spacing = match parts.get(3).map(|t| t.trim()) {
                None | Some("linear") => Spacing::Linear,
                Some("log") => Spacing::Log,
                Some(other) => return Err(invalid(format!("unknown spacing {other:?}"))),
            };
            Ok(MassGrid::Range { start: num(parts[0])?, stop: num(parts[1])?, count, spacing })
        } else {
            let list = s.split(',').map(num).collect::<Result<Vec<_>>>()?;
            Ok(MassGrid::List(list))
        }
    }
}

/// Inclusive range of particle numbers, written `2..8`, `2:8` or `5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParticleRange {
    pub first: u32,
    pub last: u32,
}

impl Default for ParticleRange {
    fn default() -> Self {
        Self { first: 2, last: 8 }
    }
}

impl ParticleRange {
    pub fn new(first: u32, last: u32) -> Result<Self> {
        if first < 2 {
            return Err(invalid(format!("particle number must be at least 2, got {first}")));
        }
        if last < first {
            return Err(invalid(format!("empty particle range {first}..{last}")));
        }
        Ok(Self { first, last })
    }

    pub fn iter(&self) -> RangeInclusive<u32> {
        self.first..=self.last
    }
}

impl FromStr for ParticleRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| invalid(format!("bad particle number {t:?}")))
        };
        let s = s.trim();
        if let Some((a, b)) = s.split_once("..=").or_else(|| s.split_once("..")).or_else(|| s.split_once(':')) {
            Self::new(parse(a)?, parse(b)?)
        } else {
            let n = parse(s)?;
            Self::new(n, n)
        }
    }
}

/// Fixed-point rendering with [`SIGNIFICANT_DIGITS`] significant digits;
/// exponent form outside `1e-5 ..= 1e16`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub m: f64,
    pub e_minus_m: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsRow {
    pub m: f64,
    pub n: u32,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerCurve {
    /// Bound formula at the massless value `P(0)`.
    Constant,
    /// The lower bound proper, with `P(μ)`.
    Running,
}

pub fn figure1(ef: &EnergyFunction, masses: &[f64]) -> Result<Vec<Figure1Row>> {
    masses
        .par_iter()
        .map(|&m| {
            Ok(Figure1Row {
                m,
                e_minus_m: ef.binding(m)?,
                p: ef.p_of_m(m)?.value(),
            })
        })
        .collect()
}

/// Bound curves, ordered by `N` and then by mass.
pub fn bounds_table(
    ef: &EnergyFunction,
    masses: &[f64],
    particles: ParticleRange,
    gamma: f64,
    lower: LowerCurve,
    subtract_rest_mass: bool,
) -> Result<Vec<BoundsRow>> {
    let p_const = ef.p_of_m(0.0)?;
    let jobs: Vec<(u32, f64)> = particles.iter().flat_map(|n| masses.iter().map(move |&m| (n, m))).collect();
    jobs.par_iter()
        .map(|&(n, m)| {
            let sys = SystemSpec::new(n, m, gamma)?;
            let (lo, up) = if subtract_rest_mass {
                let lo = match lower {
                    LowerCurve::Constant => bound_formula_binding(&sys, p_const)?,
                    LowerCurve::Running => lower_bound_binding(ef, &sys)?,
                };
                (lo, bound_formula_binding(&sys, PValue::UPPER)?)
            } else {
                let lo = match lower {
                    LowerCurve::Constant => bound_formula(&sys, p_const)?,
                    LowerCurve::Running => lower_bound(ef, &sys)?,
                };
                (lo, upper_bound(&sys)?)
            };
            Ok(BoundsRow { m, n, lower: lo, upper: up })
        })
        .collect()
}

pub fn figure1_csv(rows: &[Figure1Row]) -> String {
    let mut out = String::from(FIGURE1_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{}", format_sig(r.m), format_sig(r.e_minus_m), format_sig(r.p));
    }
    out
}

pub fn bounds_csv(rows: &[BoundsRow], lower: LowerCurve) -> String {
    let mut out = String::from(match lower {
        LowerCurve::Constant => FIGURE2_HEADER,
        LowerCurve::Running => FIGURE3_HEADER,
    });
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", format_sig(r.m), r.n, format_sig(r.lower), format_sig(r.upper));
    }
    out
}
