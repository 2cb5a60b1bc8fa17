//! Discrete information measures on normalized probability distributions.
//!
//! Three measures of the information content (disorder) of a discrete
//! distribution `(p_1, ..., p_k)`, `Σ p_i = 1`:
//!
//! | Measure | Formula | Range |
//! |---------|---------|-------|
//! | Shannon-Jaynes entropy `S` | `-Σ p_i ln p_i` | `[0, ln k]` |
//! | information energy `E` | `Σ p_i²` | `[1/k, 1]` |
//! | information content `S_E` | `1/E` | `[1, k]` |
//! | excess statistical entropy `F` | `-Σ_r [Π_{r'≠r} p_r/(p_r-p_r')] p_r ln p_r` | singular for repeated `p` |
//! | Stotland entropy `S_F` | `S₀(k) + F`, `S₀(k) = Σ_{i=2}^{k} 1/i` | |
//!
//! All entropies are in nats. `E` is maximal (1) for a point mass (total
//! order) and minimal (`1/k`) for the uniform distribution (total disorder);
//! `S_E = 1/E` restores "larger means more disordered".
//!
//! The excess entropy `F` divides by pairwise probability differences, so it
//! has no value when two probabilities coincide. Construction-time validation
//! plus an explicit degeneracy tolerance keep that failure loud instead of
//! returning cancellation noise.

use crate::error::{Error, Result};

/// Default tolerance on `|Σ p_i - 1|` for [`NormalizedDistribution::new`].
pub const DEFAULT_SUM_TOLERANCE: f64 = 1e-6;

/// Default minimum pairwise gap below which [`stotland_excess`] refuses to
/// evaluate. Relative to a total probability of 1.
pub const DEFAULT_DEGENERACY_TOLERANCE: f64 = 1e-9;

/// An ordered list of probability fractions summing to one.
///
/// Every entry lies in `(0, 1]`: zeros are rejected because the excess
/// entropy divides by probability differences and empty shells are dropped
/// before construction. The sum tolerance is configurable to admit published
/// tables rounded to a few decimals; values are stored exactly as given.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedDistribution {
    values: Vec<f64>,
}

impl NormalizedDistribution {
    /// Validates with the strict default sum tolerance.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(values, DEFAULT_SUM_TOLERANCE)
    }

    /// Validates `|Σ p_i - 1| <= sum_tolerance`, keeping the values verbatim.
    pub fn with_tolerance(values: Vec<f64>, sum_tolerance: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositiveProbability { index, value });
            }
            if value > 1.0 {
                return Err(Error::ProbabilityAboveOne { index, value });
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > sum_tolerance {
            return Err(Error::SumOutOfTolerance {
                sum,
                tolerance: sum_tolerance,
            });
        }
        Ok(Self { values })
    }

    /// Divides every entry by the total, then validates. The input entries
    /// must be strictly positive and finite but need not sum to one.
    pub fn renormalized(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositiveProbability { index, value });
            }
        }
        let sum: f64 = values.iter().sum();
        let scaled = values.into_iter().map(|v| v / sum).collect();
        Self::with_tolerance(scaled, DEFAULT_SUM_TOLERANCE)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of outcomes `k`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty value lists
    }
}

/// All discrete measures of one distribution in a single bundle.
///
/// The Stotland fields are `None` when the distribution is degenerate
/// (repeated probabilities), mirroring a blank table cell rather than a
/// made-up number.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    /// `S = -Σ p_i ln p_i`, nats.
    pub shannon_jaynes: f64,
    /// `E = Σ p_i²`, dimensionless, in `[1/k, 1]`.
    pub onicescu_energy: f64,
    /// `S_E = 1/E`, dimensionless, in `[1, k]`.
    pub onicescu_information: f64,
    /// `S₀(k) = Σ_{i=2}^{k} 1/i`, nats.
    pub minimum_uncertainty: f64,
    /// Excess statistical entropy `F`, nats.
    pub stotland_excess: Option<f64>,
    /// `S_F = S₀(k) + F`, nats.
    pub stotland_total: Option<f64>,
}

impl EntropyReport {
    pub fn is_degenerate(&self) -> bool {
        self.stotland_excess.is_none()
    }
}

/// Mean and standard deviation of a one-dimensional Gaussian density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    mu: f64,
    sigma: f64,
}

impl GaussianParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::NonPositiveSigma { value: sigma });
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Compensated (Kahan) accumulator. The excess-entropy terms can be orders of
/// magnitude larger than their sum, so naive accumulation loses digits.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    fn add(&mut self, value: f64) {
        let y = value - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Shannon (Jaynes) entropy `S = -Σ p_i ln p_i` in nats.
///
/// Entries equal to 1 contribute nothing; `S = 0` for a point mass and
/// `S = ln k` for the uniform distribution.
pub fn shannon_entropy(dist: &NormalizedDistribution) -> f64 {
    let sum: f64 = dist.values().iter().map(|&p| p * p.ln()).sum();
    0.0 - sum // keeps the point-mass result a positive zero
}

/// Onicescu information energy `E = Σ p_i²`.
pub fn onicescu_energy(dist: &NormalizedDistribution) -> f64 {
    dist.values().iter().map(|&p| p * p).sum()
}

/// Onicescu information content `S_E = 1/E`.
///
/// `E >= 1/k > 0`, so the reciprocal always exists.
pub fn onicescu_information(dist: &NormalizedDistribution) -> f64 {
    1.0 / onicescu_energy(dist)
}

/// Minimum uncertainty entropy of a k-level quantum system,
/// `S₀(k) = Σ_{i=2}^{k} 1/i` (empty sum for k = 1).
pub fn minimum_uncertainty_entropy(k: usize) -> Result<f64> {
    if k < 1 {
        return Err(Error::ZeroLevelCount);
    }
    if k == 1 {
        return Ok(0.0); // the empty f64 sum would be -0.0
    }
    // summed smallest-first
    Ok((2..=k).rev().map(|i| 1.0 / i as f64).sum())
}

/// Excess statistical entropy with the default degeneracy tolerance.
///
/// `F = -Σ_r [Π_{r'≠r} p_r/(p_r - p_r')] p_r ln p_r`
///
/// The weights blow up as probabilities approach each other; any pair closer
/// than the tolerance yields [`Error::DegenerateDistribution`] instead of a
/// cancellation-dominated number. For k = 1 the empty product leaves
/// `F = -p₁ ln p₁ = 0`.
pub fn stotland_excess(dist: &NormalizedDistribution) -> Result<f64> {
    stotland_excess_with_tolerance(dist, DEFAULT_DEGENERACY_TOLERANCE)
}

/// As [`stotland_excess`] with an explicit degeneracy tolerance (> 0).
pub fn stotland_excess_with_tolerance(
    dist: &NormalizedDistribution,
    degeneracy_tolerance: f64,
) -> Result<f64> {
    assert!(
        degeneracy_tolerance > 0.0,
        "degeneracy tolerance must be positive"
    );
    let p = dist.values();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let gap = (p[i] - p[j]).abs();
            if gap < degeneracy_tolerance {
                return Err(Error::DegenerateDistribution {
                    first: i,
                    second: j,
                    gap,
                    tolerance: degeneracy_tolerance,
                });
            }
        }
    }
    // Individual terms cancel heavily (for p = (0.223, 0.528, 0.249) they are
    // about -2.10, -1.10, +2.96 against a total of -0.244), hence the
    // compensated sum.
    let mut total = KahanSum::default();
    for (r, &pr) in p.iter().enumerate() {
        let mut weight = 1.0;
        for (s, &ps) in p.iter().enumerate() {
            if s != r {
                weight *= pr / (pr - ps);
            }
        }
        total.add(weight * pr * pr.ln());
    }
    Ok(0.0 - total.value())
}

/// Stotland entropy `S_F = S₀(k) + F` with the default tolerance.
pub fn stotland_entropy(dist: &NormalizedDistribution) -> Result<f64> {
    stotland_entropy_with_tolerance(dist, DEFAULT_DEGENERACY_TOLERANCE)
}

/// As [`stotland_entropy`] with an explicit degeneracy tolerance.
pub fn stotland_entropy_with_tolerance(
    dist: &NormalizedDistribution,
    degeneracy_tolerance: f64,
) -> Result<f64> {
    let excess = stotland_excess_with_tolerance(dist, degeneracy_tolerance)?;
    let floor = minimum_uncertainty_entropy(dist.len()).expect("k >= 1 by construction");
    Ok(floor + excess)
}

/// Every measure of one distribution. Degeneracy is encoded as absent
/// Stotland fields, not as a failure.
pub fn full_report(dist: &NormalizedDistribution) -> EntropyReport {
    let minimum_uncertainty =
        minimum_uncertainty_entropy(dist.len()).expect("k >= 1 by construction");
    let (stotland_excess, stotland_total) = match stotland_excess(dist) {
        Ok(excess) => (Some(excess), Some(minimum_uncertainty + excess)),
        Err(_) => (None, None),
    };
    let onicescu_energy = onicescu_energy(dist);
    EntropyReport {
        shannon_jaynes: shannon_entropy(dist),
        onicescu_energy,
        onicescu_information: 1.0 / onicescu_energy,
        minimum_uncertainty,
        stotland_excess,
        stotland_total,
    }
}

/// Information energy of a Gaussian density, `E(σ) = 1/(2σ√π)`.
///
/// Independent of the mean; the narrower the Gaussian, the larger `E`.
pub fn gaussian_information_energy(params: &GaussianParams) -> f64 {
    1.0 / (2.0 * params.sigma() * std::f64::consts::PI.sqrt())
}
