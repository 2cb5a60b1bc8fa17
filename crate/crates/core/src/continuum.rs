//! Continuous information entropies and information energy for sampled
//! spherically symmetric densities, plus the log-linear law `S = a + b ln Z`.
//!
//! Densities are radial profiles `ρ(r)` with the `4πr²` measure built in:
//!
//! - `S_r = -4π ∫ ρ ln ρ r² dr` (the position-space differential entropy;
//!   the momentum-space `S_k` is the same integral over `n(k)`),
//! - `E = 4π ∫ ρ² r² dr`.
//!
//! Integrals use the composite trapezoid rule on the caller's grid with no
//! resampling, so behavior on irregular experimental grids is predictable;
//! the rule is exchangeable behind [`trapezoid`].
//!
//! `S_r` and `S_k` individually depend on the length unit; the physical
//! quantity is the sum `S_S = S_r + S_k`, invariant under reciprocal
//! rescaling of position and momentum widths.

use crate::error::{Error, Result};

/// Tolerance on `|4π ∫ ρ r² dr - 1|`: densities are normalized to one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-3;

/// Whether a density lives in position or momentum space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }
}

/// A sampled spherically symmetric density on a strictly increasing radial
/// grid, normalized so that `4π ∫ ρ r² dr = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDensity {
    radii: Vec<f64>,
    values: Vec<f64>,
    space: Space,
}

impl RadialDensity {
    pub fn new(radii: Vec<f64>, values: Vec<f64>, space: Space) -> Result<Self> {
        validate_grid(&radii, &values)?;
        if radii[0] < 0.0 {
            return Err(Error::GridNotIncreasing { index: 0 });
        }
        let density = Self {
            radii,
            values,
            space,
        };
        let integral = density.norm();
        if (integral - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                integral,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }
        Ok(density)
    }

    /// Parses the two-column format `r,rho` with a header line and `#`
    /// comments (units are whatever the header comment documents).
    pub fn from_csv(text: &str, space: Space) -> Result<Self> {
        let mut radii = Vec::new();
        let mut values = Vec::new();
        let mut header_seen = false;
        for (number, raw) in text.lines().enumerate() {
            let line = number + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = content.split(',').map(str::trim).collect();
            if !header_seen {
                if fields.len() != 2
                    || !fields[0].eq_ignore_ascii_case("r")
                    || !fields[1].eq_ignore_ascii_case("rho")
                {
                    return Err(Error::DatasetParse {
                        line,
                        field: "header",
                        message: format!("expected `r,rho`, got `{content}`"),
                    });
                }
                header_seen = true;
                continue;
            }
            if fields.len() != 2 {
                return Err(Error::DatasetParse {
                    line,
                    field: "row",
                    message: format!("expected 2 comma-separated fields, got {}", fields.len()),
                });
            }
            radii.push(fields[0].parse().map_err(|_| Error::DatasetParse {
                line,
                field: "r",
                message: format!("cannot parse `{}`", fields[0]),
            })?);
            values.push(fields[1].parse().map_err(|_| Error::DatasetParse {
                line,
                field: "rho",
                message: format!("cannot parse `{}`", fields[1]),
            })?);
        }
        Self::new(radii, values, space)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// `4π ∫ ρ r² dr` on the sampled grid.
    pub fn norm(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.integrate_radial(|rho| rho)
    }

    /// `4π ∫ f(ρ) r² dr` by the trapezoid rule.
    fn integrate_radial(&self, f: impl Fn(f64) -> f64) -> f64 {
        let integrand: Vec<f64> = self
            .radii
            .iter()
            .zip(&self.values)
            .map(|(&r, &rho)| f(rho) * r * r)
            .collect();
        trapezoid(&self.radii, &integrand)
    }
}

fn validate_grid(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return Err(Error::GridTooShort {
            found: xs.len().min(ys.len()),
        });
    }
    for (index, pair) in xs.windows(2).enumerate() {
        if !pair[0].is_finite() || !pair[1].is_finite() || pair[1] <= pair[0] {
            return Err(Error::GridNotIncreasing { index: index + 1 });
        }
    }
    for (index, &value) in ys.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidDensitySample { index, value });
        }
    }
    Ok(())
}

/// Composite trapezoid rule on an arbitrary strictly increasing grid.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// `x ln x` with the `0 ln 0 = 0` convention.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Differential entropy `-4π ∫ ρ ln ρ r² dr` in nats.
///
/// Grid points with `ρ = 0` contribute nothing. The result depends on the
/// length unit; only `S_r + S_k` is scale invariant.
pub fn differential_entropy(density: &RadialDensity) -> f64 {
    let pi4 = 4.0 * std::f64::consts::PI;
    0.0 - pi4 * density.integrate_radial(xlnx)
}

/// The bundle `S_r`, `S_k`, `S_S = S_r + S_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousEntropyReport {
    pub s_position: f64,
    pub s_momentum: f64,
    pub s_total: f64,
}

/// Computes `S_r`, `S_k` and their sum for a position/momentum density pair.
pub fn total_entropy(
    position: &RadialDensity,
    momentum: &RadialDensity,
) -> Result<ContinuousEntropyReport> {
    if position.space() != Space::Position || momentum.space() != Space::Momentum {
        return Err(Error::SpaceTagMismatch {
            first: position.space().as_str(),
            second: momentum.space().as_str(),
        });
    }
    let s_position = differential_entropy(position);
    let s_momentum = differential_entropy(momentum);
    Ok(ContinuousEntropyReport {
        s_position,
        s_momentum,
        s_total: s_position + s_momentum,
    })
}

/// Information energy `4π ∫ ρ² r² dr` of a radial density.
pub fn continuous_information_energy(density: &RadialDensity) -> f64 {
    4.0 * std::f64::consts::PI * density.integrate_radial(|rho| rho * rho)
}

/// Information energy `∫ ρ² dx` of a one-dimensional line density, for
/// checking sampled densities against closed forms such as the Gaussian
/// `1/(2σ√π)`.
pub fn information_energy_1d(xs: &[f64], density: &[f64]) -> Result<f64> {
    validate_grid(xs, density)?;
    let squared: Vec<f64> = density.iter().map(|&rho| rho * rho).collect();
    Ok(trapezoid(xs, &squared))
}

/// Ordinary-least-squares coefficients of `S = a + b ln Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    /// `a`, nats.
    pub intercept: f64,
    /// `b`, nats.
    pub slope: f64,
    /// Root-mean-square residual, nats.
    pub rms_residual: f64,
    pub point_count: usize,
}

impl LogLinearFit {
    pub fn predict(&self, z: f64) -> f64 {
        self.intercept + self.slope * z.ln()
    }
}

/// Least-squares fit of `S` against `ln Z`. Needs at least two distinct
/// `Z >= 1` values.
pub fn fit_log_linear(points: &[(u32, f64)]) -> Result<LogLinearFit> {
    if points.iter().any(|&(z, _)| z < 1) {
        return Err(Error::InvalidFitAbscissa);
    }
    let mut zs: Vec<u32> = points.iter().map(|&(z, _)| z).collect();
    zs.sort_unstable();
    zs.dedup();
    if zs.len() < 2 {
        return Err(Error::FitUnderdetermined { distinct: zs.len() });
    }

    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(z, _)| (z as f64).ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = points.iter().map(|&(_, s)| s).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, &(_, y)) in xs.iter().zip(points) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_res: f64 = xs
        .iter()
        .zip(points)
        .map(|(x, &(_, y))| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok(LogLinearFit {
        intercept,
        slope,
        rms_residual: (ss_res / n).sqrt(),
        point_count: points.len(),
    })
}
