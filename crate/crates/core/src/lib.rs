//! Information measures of order and disorder for nuclear shell-occupation
//! data.
//!
//! Discrete probability distributions `p_q = n_nl · 2(2l+1) / Z` built from
//! fractional shell occupations are scored with three measures: the
//! Shannon-Jaynes entropy, the Onicescu information energy and its reciprocal
//! information content, and the Stotland excess statistical entropy. A small
//! continuum module adds quadrature-based differential entropies and
//! information energy for sampled radial densities, plus the log-linear law
//! `S = a + b ln Z` used to compare the discrete and continuous pictures.
//!
//! ```
//! use occent::measures::{full_report, NormalizedDistribution};
//!
//! let dist = NormalizedDistribution::new(vec![0.485, 0.515])?;
//! let report = full_report(&dist);
//! assert!((report.shannon_jaynes - 0.693).abs() < 5e-4);
//! assert!((report.stotland_total.unwrap() - 0.693).abs() < 5e-4);
//! # Ok::<(), occent::Error>(())
//! ```
//!
//! A dataset of occupation probabilities for light nuclei (with and without
//! short-range correlations) ships with the crate; see [`occupancy`].

pub mod continuum;
pub mod error;
pub mod measures;
pub mod occupancy;

pub use continuum::{
    continuous_information_energy, differential_entropy, fit_log_linear, total_entropy,
    ContinuousEntropyReport, LogLinearFit, RadialDensity, Space,
};
pub use error::{Error, Result};
pub use measures::{
    full_report, gaussian_information_energy, minimum_uncertainty_entropy, onicescu_energy,
    onicescu_information, shannon_entropy, stotland_entropy, stotland_excess, EntropyReport,
    GaussianParams, NormalizedDistribution,
};
pub use occupancy::{
    combine_spin_orbit, depletion, ipm_occupation, load_dataset, occupation_to_distribution,
    CaseTag, DepletionReport, OccupationRecord, ShellLabel,
};
