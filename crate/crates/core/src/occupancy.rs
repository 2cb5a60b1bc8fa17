//! Nuclear shell data model: shell labels and degeneracies, occupation
//! records, the conversion `p_q = n_nl · 2(2l+1) / Z` between occupation
//! probabilities and normalized distributions, the independent-particle-model
//! reference filling, Fermi-sea depletion, and dataset ingestion.
//!
//! A record stores the shell probabilities `p_q` exactly as ingested (they
//! are the ground truth in the published tables, rounded to three decimals);
//! occupation probabilities `n_nl` are derived on demand so no value is
//! rounded twice.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::NormalizedDistribution;

/// Sum tolerance for ingested records: `|Σ p_q - 1| <= 5e-3`. Published rows
/// are rounded to three decimals and sum to anywhere in 0.997..=1.001.
pub const INGESTION_SUM_TOLERANCE: f64 = 5e-3;

/// Largest proton number covered by the bundled shell sequence.
pub const MAX_PROTON_NUMBER: u32 = 40;

const SPECTROSCOPIC: &[u8] = b"spdfghiklmnoqrtuvwxyz";

/// A shell-model orbit `(n, l)` at nl granularity, e.g. `1s`, `2p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShellLabel {
    n: u8,
    l: u8,
}

impl ShellLabel {
    pub fn new(n: u8, l: u8) -> Result<Self> {
        if n < 1 || l as usize >= SPECTROSCOPIC.len() {
            return Err(Error::InvalidShellIndex);
        }
        Ok(Self { n, l })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn l(&self) -> u8 {
        self.l
    }

    /// Proton capacity `2(2l+1)`: spin degeneracy times m-substates.
    pub fn degeneracy(&self) -> u32 {
        2 * (2 * self.l as u32 + 1)
    }

    /// Position in the filling order, for the shells this crate fills.
    pub fn filling_index(&self) -> Option<usize> {
        FILLING_ORDER.iter().position(|s| s == self)
    }
}

/// Shell filling order with proton capacities 2, 6, 10, 2, 14, 6 (total 40).
///
/// The 1d-before-2s placement is a convention: both are full at Z = 20, so
/// the published data cannot distinguish the order.
pub const FILLING_ORDER: [ShellLabel; 6] = [
    ShellLabel { n: 1, l: 0 },
    ShellLabel { n: 1, l: 1 },
    ShellLabel { n: 1, l: 2 },
    ShellLabel { n: 2, l: 0 },
    ShellLabel { n: 1, l: 3 },
    ShellLabel { n: 2, l: 1 },
];

impl Ord for ShellLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |s: &Self| (s.filling_index().unwrap_or(usize::MAX), s.n, s.l);
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for ShellLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ShellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!(
            "{}{}",
            self.n, SPECTROSCOPIC[self.l as usize] as char
        ))
    }
}

impl FromStr for ShellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownShell { token: s.into() };
        let letter = s.chars().last().ok_or_else(unknown)?;
        let digits = &s[..s.len() - letter.len_utf8()];
        let n: u8 = digits.parse().map_err(|_| unknown())?;
        let l = SPECTROSCOPIC
            .iter()
            .position(|&c| c as char == letter)
            .ok_or_else(unknown)?;
        ShellLabel::new(n, l as u8).map_err(|_| unknown())
    }
}

impl Serialize for ShellLabel {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ShellLabel {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let token = String::deserialize(deserializer)?;
        token.parse().map_err(serde::de::Error::custom)
    }
}

/// Which correlation treatment produced a record.
///
/// `A`: short-range correlations; `B`: state-dependent correlations;
/// `C`: independent particle model (no correlations).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    A,
    B,
    C,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
        })
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(CaseTag::A),
            "B" => Ok(CaseTag::B),
            "C" => Ok(CaseTag::C),
            _ => Err(Error::UnknownShell { token: s.into() }),
        }
    }
}

/// One nucleus/case row: identity plus per-shell occupation data.
///
/// Internally keyed by `p_q`; `n_nl = p_q · Z / 2(2l+1)` is derived. The sum
/// rule `Σ n_nl · 2(2l+1) = Z` (equivalently `Σ p_q = 1`) is enforced within
/// [`INGESTION_SUM_TOLERANCE`] at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationRecord {
    nucleus: String,
    mass_number: u32,
    proton_number: u32,
    case_tag: CaseTag,
    shell_probabilities: BTreeMap<ShellLabel, f64>,
}

impl OccupationRecord {
    /// Builds a record from occupation probabilities `n_nl`.
    pub fn from_occupations(
        nucleus: impl Into<String>,
        mass_number: u32,
        proton_number: u32,
        case_tag: CaseTag,
        occupations: BTreeMap<ShellLabel, f64>,
    ) -> Result<Self> {
        let z = proton_number as f64;
        let mut shell_probabilities = BTreeMap::new();
        for (shell, n) in occupations {
            if !(0.0..=1.0).contains(&n) || !n.is_finite() {
                return Err(Error::OccupationOutOfRange {
                    shell: shell.to_string(),
                    value: n,
                });
            }
            shell_probabilities.insert(shell, n * shell.degeneracy() as f64 / z);
        }
        Self::from_shell_probabilities(
            nucleus,
            mass_number,
            proton_number,
            case_tag,
            shell_probabilities,
        )
    }

    /// Builds a record from shell probabilities `p_q` (the published form).
    pub fn from_shell_probabilities(
        nucleus: impl Into<String>,
        mass_number: u32,
        proton_number: u32,
        case_tag: CaseTag,
        shell_probabilities: BTreeMap<ShellLabel, f64>,
    ) -> Result<Self> {
        let nucleus = nucleus.into();
        if proton_number < 1 {
            return Err(Error::UnsupportedProtonNumber {
                z: proton_number,
                max: MAX_PROTON_NUMBER,
            });
        }
        let z = proton_number as f64;
        let mut sum = 0.0;
        for (&shell, &p) in &shell_probabilities {
            let n = p * z / shell.degeneracy() as f64;
            if !p.is_finite() || p < 0.0 || n > 1.0 + 1e-12 {
                return Err(Error::OccupationOutOfRange {
                    shell: shell.to_string(),
                    value: n,
                });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > INGESTION_SUM_TOLERANCE {
            return Err(Error::InconsistentRecord {
                nucleus,
                case: case_tag.to_string(),
                total: sum * z,
                expected: z,
            });
        }
        Ok(Self {
            nucleus,
            mass_number,
            proton_number,
            case_tag,
            shell_probabilities,
        })
    }

    pub fn nucleus(&self) -> &str {
        &self.nucleus
    }

    pub fn mass_number(&self) -> u32 {
        self.mass_number
    }

    pub fn proton_number(&self) -> u32 {
        self.proton_number
    }

    pub fn case_tag(&self) -> CaseTag {
        self.case_tag
    }

    /// `"16O"`, `"40Ca"`, ...
    pub fn label(&self) -> String {
        format!("{}{}", self.mass_number, self.nucleus)
    }

    /// Stored shell probabilities `p_q`, in filling order.
    pub fn shell_probabilities(&self) -> &BTreeMap<ShellLabel, f64> {
        &self.shell_probabilities
    }

    /// Occupation probabilities `n_nl = p_q · Z / 2(2l+1)`, in filling order.
    pub fn occupations(&self) -> BTreeMap<ShellLabel, f64> {
        let z = self.proton_number as f64;
        self.shell_probabilities
            .iter()
            .map(|(&shell, &p)| (shell, p * z / shell.degeneracy() as f64))
            .collect()
    }
}

/// Depletion of the Fermi sea relative to the IPM reference.
#[derive(Debug, Clone, PartialEq)]
pub struct DepletionReport {
    pub nucleus: String,
    pub mass_number: u32,
    pub proton_number: u32,
    pub case_tag: CaseTag,
    /// Fraction of the filled IPM core that the record leaves unoccupied:
    /// `Σ_core 2(2l+1)(1 - n_nl) / Σ_core 2(2l+1)` over shells the IPM
    /// occupies completely.
    pub depletion: f64,
    /// Particles missing per IPM-occupied shell, `2(2l+1)·max(0, n_ipm - n)`.
    pub holes: BTreeMap<ShellLabel, f64>,
}

impl DepletionReport {
    pub fn label(&self) -> String {
        format!("{}{}", self.mass_number, self.nucleus)
    }
}

/// Converts a record to the normalized distribution of its occupied shells,
/// `p_q = n_nl · 2(2l+1) / Z` in filling order. Empty shells are dropped;
/// the stored probabilities are used verbatim (no renormalization), so a
/// record ingested from a published table reproduces the printed values
/// exactly.
pub fn occupation_to_distribution(record: &OccupationRecord) -> Result<NormalizedDistribution> {
    let values: Vec<f64> = record
        .shell_probabilities
        .values()
        .copied()
        .filter(|&p| p > 0.0)
        .collect();
    if values.is_empty() {
        return Err(Error::NoOccupiedShells);
    }
    NormalizedDistribution::with_tolerance(values, INGESTION_SUM_TOLERANCE).map_err(|err| match err
    {
        Error::SumOutOfTolerance { sum, .. } => Error::InconsistentRecord {
            nucleus: record.nucleus.clone(),
            case: record.case_tag.to_string(),
            total: sum * record.proton_number as f64,
            expected: record.proton_number as f64,
        },
        other => other,
    })
}

const ELEMENT_SYMBOLS: [&str; MAX_PROTON_NUMBER as usize] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr",
];

/// Independent-particle-model reference: shells filled to capacity in order,
/// the topmost partial shell carrying the fractional remainder. Tagged case C
/// with mass number `2Z`.
pub fn ipm_occupation(proton_number: u32) -> Result<OccupationRecord> {
    if !(1..=MAX_PROTON_NUMBER).contains(&proton_number) {
        return Err(Error::UnsupportedProtonNumber {
            z: proton_number,
            max: MAX_PROTON_NUMBER,
        });
    }
    let mut remaining = proton_number;
    let mut occupations = BTreeMap::new();
    for shell in FILLING_ORDER {
        if remaining == 0 {
            break;
        }
        let taken = remaining.min(shell.degeneracy());
        occupations.insert(shell, taken as f64 / shell.degeneracy() as f64);
        remaining -= taken;
    }
    OccupationRecord::from_occupations(
        ELEMENT_SYMBOLS[(proton_number - 1) as usize],
        2 * proton_number,
        proton_number,
        CaseTag::C,
        occupations,
    )
}

/// Spin-orbit average `n_nl = (l+1)/(2l+1)·n_{l+1/2} + l/(2l+1)·n_{l-1/2}`.
///
/// For `l = 0` there is no `j = l - 1/2` state and `n_minus` is ignored.
pub fn combine_spin_orbit(n_plus: f64, n_minus: f64, l: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&n_plus) || !n_plus.is_finite() {
        return Err(Error::ProbabilityOutOfRange { value: n_plus });
    }
    if l == 0 {
        return Ok(n_plus);
    }
    if !(0.0..=1.0).contains(&n_minus) || !n_minus.is_finite() {
        return Err(Error::ProbabilityOutOfRange { value: n_minus });
    }
    let weight = 2.0 * l as f64 + 1.0;
    Ok(((l + 1) as f64 * n_plus + l as f64 * n_minus) / weight)
}

/// Compares a record against `ipm_occupation(Z)`.
///
/// The depletion is the mean hole fraction of the closed IPM core: shells the
/// IPM fills completely contribute `2(2l+1)(1 - n_nl)` holes, divided by the
/// core capacity. A record missing a core shell counts as a maximal hole.
/// Case C records deplete nothing by construction.
pub fn depletion(record: &OccupationRecord) -> Result<DepletionReport> {
    let ipm = ipm_occupation(record.proton_number)?;
    let occupations = record.occupations();
    let mut holes = BTreeMap::new();
    let mut core_capacity = 0.0;
    let mut core_holes = 0.0;
    for (shell, n_ipm) in ipm.occupations() {
        let degeneracy = shell.degeneracy() as f64;
        let n_rec = occupations.get(&shell).copied().unwrap_or(0.0);
        holes.insert(shell, degeneracy * (n_ipm - n_rec).max(0.0));
        if n_ipm == 1.0 {
            core_capacity += degeneracy;
            core_holes += degeneracy * (1.0 - n_rec);
        }
    }
    let depletion = if core_capacity > 0.0 {
        core_holes / core_capacity
    } else {
        0.0 // Z = 1: no filled shell, nothing to deplete
    };
    Ok(DepletionReport {
        nucleus: record.nucleus.clone(),
        mass_number: record.mass_number,
        proton_number: record.proton_number,
        case_tag: record.case_tag,
        depletion,
        holes,
    })
}

const DATASET_HEADER: [&str; 6] = ["nucleus", "mass_number", "z", "case", "shell", "p_q"];

fn split_fields(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

fn parse_field<T: FromStr>(line: usize, field: &'static str, token: &str) -> Result<T> {
    token.parse().map_err(|_| Error::DatasetParse {
        line,
        field,
        message: format!("cannot parse `{token}`"),
    })
}

/// Parses the dataset format: UTF-8, comma-separated, header
/// `nucleus,mass_number,Z,case,shell,p_q`, one row per (record, shell) pair,
/// `#` comment lines. Rows of a record must be consecutive. An empty source
/// yields an empty list.
pub fn load_dataset(text: &str) -> Result<Vec<OccupationRecord>> {
    let mut records = Vec::new();
    let mut header_seen = false;
    let mut current: Option<(String, u32, u32, CaseTag)> = None;
    let mut shells: BTreeMap<ShellLabel, f64> = BTreeMap::new();

    let flush = |key: &Option<(String, u32, u32, CaseTag)>,
                 shells: &mut BTreeMap<ShellLabel, f64>,
                 records: &mut Vec<OccupationRecord>|
     -> Result<()> {
        if let Some((nucleus, mass, z, case)) = key {
            records.push(OccupationRecord::from_shell_probabilities(
                nucleus.clone(),
                *mass,
                *z,
                *case,
                std::mem::take(shells),
            )?);
        }
        Ok(())
    };

    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if !header_seen {
            let fields: Vec<String> = split_fields(content)
                .iter()
                .map(|f| f.to_ascii_lowercase())
                .collect();
            if fields != DATASET_HEADER {
                return Err(Error::DatasetParse {
                    line,
                    field: "header",
                    message: format!(
                        "expected `nucleus,mass_number,Z,case,shell,p_q`, got `{content}`"
                    ),
                });
            }
            header_seen = true;
            continue;
        }
        let fields = split_fields(content);
        if fields.len() != 6 {
            return Err(Error::DatasetParse {
                line,
                field: "row",
                message: format!("expected 6 comma-separated fields, got {}", fields.len()),
            });
        }
        if fields[0].is_empty() {
            return Err(Error::DatasetParse {
                line,
                field: "nucleus",
                message: "empty".into(),
            });
        }
        let key = (
            fields[0].to_string(),
            parse_field::<u32>(line, "mass_number", fields[1])?,
            parse_field::<u32>(line, "Z", fields[2])?,
            parse_field::<CaseTag>(line, "case", fields[3])?,
        );
        let shell: ShellLabel = parse_field(line, "shell", fields[4])?;
        let p: f64 = parse_field(line, "p_q", fields[5])?;
        if !p.is_finite() {
            return Err(Error::DatasetParse {
                line,
                field: "p_q",
                message: format!("`{}` is not finite", fields[5]),
            });
        }
        if current.as_ref() != Some(&key) {
            flush(&current, &mut shells, &mut records)?;
            let reappeared = records.iter().any(|r: &OccupationRecord| {
                (
                    r.nucleus.as_str(),
                    r.mass_number,
                    r.proton_number,
                    r.case_tag,
                ) == (key.0.as_str(), key.1, key.2, key.3)
            });
            if reappeared {
                return Err(Error::DatasetParse {
                    line,
                    field: "nucleus",
                    message: format!(
                        "rows of record {}{} ({}) are not consecutive",
                        key.1, key.0, key.3
                    ),
                });
            }
            current = Some(key);
        }
        if shells.insert(shell, p).is_some() {
            return Err(Error::DatasetParse {
                line,
                field: "shell",
                message: format!("duplicate shell `{shell}` in record"),
            });
        }
    }
    flush(&current, &mut shells, &mut records)?;
    Ok(records)
}

/// Published entropy values accompanying a dataset row. `stotland_total` is
/// `None` where the source leaves the cell blank (degenerate distribution).
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntropies {
    pub nucleus: String,
    pub mass_number: u32,
    pub proton_number: u32,
    pub case_tag: CaseTag,
    pub shannon_jaynes: f64,
    pub onicescu_information: f64,
    pub stotland_total: Option<f64>,
}

impl ReferenceEntropies {
    pub fn label(&self) -> String {
        format!("{}{}", self.mass_number, self.nucleus)
    }
}

/// Parses the reference-entropy format `nucleus,mass_number,Z,case,S,S_E,S_F`.
/// The Shannon column header may be spelled `S` or `S_J`; an empty `S_F`
/// cell marks a degenerate row.
pub fn load_reference(text: &str) -> Result<Vec<ReferenceEntropies>> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields = split_fields(content);
        if !header_seen {
            let lower: Vec<String> = fields.iter().map(|f| f.to_ascii_lowercase()).collect();
            let shannon_ok = lower.len() == 7 && (lower[4] == "s" || lower[4] == "s_j");
            if !shannon_ok
                || lower[..4] != DATASET_HEADER[..4]
                || lower[5] != "s_e"
                || lower[6] != "s_f"
            {
                return Err(Error::DatasetParse {
                    line,
                    field: "header",
                    message: format!(
                        "expected `nucleus,mass_number,Z,case,S,S_E,S_F`, got `{content}`"
                    ),
                });
            }
            header_seen = true;
            continue;
        }
        if fields.len() != 7 {
            return Err(Error::DatasetParse {
                line,
                field: "row",
                message: format!("expected 7 comma-separated fields, got {}", fields.len()),
            });
        }
        rows.push(ReferenceEntropies {
            nucleus: fields[0].to_string(),
            mass_number: parse_field(line, "mass_number", fields[1])?,
            proton_number: parse_field(line, "Z", fields[2])?,
            case_tag: parse_field(line, "case", fields[3])?,
            shannon_jaynes: parse_field(line, "S", fields[4])?,
            onicescu_information: parse_field(line, "S_E", fields[5])?,
            stotland_total: if fields[6].is_empty() {
                None
            } else {
                Some(parse_field(line, "S_F", fields[6])?)
            },
        });
    }
    Ok(rows)
}

/// The bundled dataset (repository path `crates/core/data/table1.csv`).
pub fn bundled_dataset() -> &'static str {
    include_str!("../data/table1.csv")
}

/// Reference entropies for the bundled dataset
/// (repository path `crates/core/data/table1_entropies.csv`).
pub fn bundled_reference() -> &'static str {
    include_str!("../data/table1_entropies.csv")
}

pub fn bundled_records() -> Vec<OccupationRecord> {
    load_dataset(bundled_dataset()).expect("bundled dataset is valid")
}

pub fn bundled_reference_rows() -> Vec<ReferenceEntropies> {
    load_reference(bundled_reference()).expect("bundled reference table is valid")
}

#[derive(Serialize, Deserialize)]
struct RecordRepr {
    nucleus: String,
    mass_number: u32,
    proton_number: u32,
    case_tag: CaseTag,
    occupations: BTreeMap<ShellLabel, f64>,
}

/// Serializes records as a single JSON document, one object per record with
/// a nested shell map of occupation probabilities `n_nl`.
pub fn records_to_json(records: &[OccupationRecord]) -> String {
    let reprs: Vec<RecordRepr> = records
        .iter()
        .map(|r| RecordRepr {
            nucleus: r.nucleus().to_string(),
            mass_number: r.mass_number(),
            proton_number: r.proton_number(),
            case_tag: r.case_tag(),
            occupations: r.occupations(),
        })
        .collect();
    serde_json::to_string_pretty(&reprs).expect("records serialize to JSON")
}

/// Inverse of [`records_to_json`], re-validating every record.
pub fn records_from_json(text: &str) -> Result<Vec<OccupationRecord>> {
    let reprs: Vec<RecordRepr> =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    reprs
        .into_iter()
        .map(|r| {
            OccupationRecord::from_occupations(
                r.nucleus,
                r.mass_number,
                r.proton_number,
                r.case_tag,
                r.occupations,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{full_report, shannon_entropy};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn shell(token: &str) -> ShellLabel {
        token.parse().unwrap()
    }

    #[test]
    fn shell_labels_render_canonically() {
        let cases = [
            ((1, 0), "1s", 2),
            ((1, 1), "1p", 6),
            ((1, 2), "1d", 10),
            ((2, 0), "2s", 2),
            ((1, 3), "1f", 14),
            ((2, 1), "2p", 6),
        ];
        for ((n, l), name, degeneracy) in cases {
            let label = ShellLabel::new(n, l).unwrap();
            assert_eq!(label.to_string(), name);
            assert_eq!(label.degeneracy(), degeneracy);
            assert_eq!(shell(name), label);
        }
        assert!("x1".parse::<ShellLabel>().is_err());
        assert!("1j".parse::<ShellLabel>().is_err()); // spectroscopic letters skip j
        assert!("0s".parse::<ShellLabel>().is_err());
        assert!(ShellLabel::new(0, 0).is_err());
    }

    #[test]
    fn shells_sort_in_filling_order() {
        let mut shuffled = vec![
            shell("2p"),
            shell("1s"),
            shell("1f"),
            shell("2s"),
            shell("1d"),
            shell("1p"),
        ];
        shuffled.sort();
        assert_eq!(shuffled, FILLING_ORDER.to_vec());
    }

    #[test]
    fn ipm_fillings() {
        let z8 = ipm_occupation(8).unwrap();
        assert_eq!(z8.nucleus(), "O");
        assert_eq!(z8.mass_number(), 16);
        assert_eq!(z8.case_tag(), CaseTag::C);
        let occ = z8.occupations();
        assert_eq!(occ.len(), 2);
        assert_eq!(occ[&shell("1s")], 1.0);
        assert_eq!(occ[&shell("1p")], 1.0);

        let z20 = ipm_occupation(20).unwrap().occupations();
        assert_eq!(z20.len(), 4);
        assert!(z20.values().all(|&n| n == 1.0));

        let z2 = ipm_occupation(2).unwrap().occupations();
        assert_eq!(z2.len(), 1);
        assert_eq!(z2[&shell("1s")], 1.0);

        // partial topmost shell
        let z6 = ipm_occupation(6).unwrap().occupations();
        assert_eq!(z6[&shell("1s")], 1.0);
        assert_abs_diff_eq!(z6[&shell("1p")], 4.0 / 6.0, epsilon = 1e-15);

        assert!(matches!(
            ipm_occupation(0),
            Err(Error::UnsupportedProtonNumber { .. })
        ));
        assert!(matches!(
            ipm_occupation(41),
            Err(Error::UnsupportedProtonNumber { .. })
        ));
    }

    #[test]
    fn ipm_distributions_match_reference_cases() {
        let o = occupation_to_distribution(&ipm_occupation(8).unwrap()).unwrap();
        assert_eq!(o.values(), &[0.25, 0.75]);
        let ca = occupation_to_distribution(&ipm_occupation(20).unwrap()).unwrap();
        assert_eq!(ca.values(), &[0.1, 0.3, 0.5, 0.1]);
        let he = occupation_to_distribution(&ipm_occupation(2).unwrap()).unwrap();
        assert_eq!(he.values(), &[1.0]);
    }

    #[test]
    fn conversion_round_trips() {
        let records = bundled_records();
        for record in &records {
            // p -> n -> p
            let rebuilt = OccupationRecord::from_occupations(
                record.nucleus().to_string(),
                record.mass_number(),
                record.proton_number(),
                record.case_tag(),
                record.occupations(),
            )
            .unwrap();
            for (shell, &p) in record.shell_probabilities() {
                assert_abs_diff_eq!(rebuilt.shell_probabilities()[shell], p, epsilon = 1e-12);
            }
            // distribution reproduces the stored p_q exactly
            let dist = occupation_to_distribution(record).unwrap();
            let stored: Vec<f64> = record
                .shell_probabilities()
                .values()
                .copied()
                .filter(|&p| p > 0.0)
                .collect();
            assert_eq!(dist.values(), stored.as_slice());
        }
    }

    #[test]
    fn spin_orbit_combination() {
        assert_eq!(combine_spin_orbit(0.7, f64::NAN, 0).unwrap(), 0.7);
        assert_eq!(combine_spin_orbit(0.5, 0.5, 1).unwrap(), 0.5);
        assert_abs_diff_eq!(
            combine_spin_orbit(0.9, 0.4, 2).unwrap(),
            0.70,
            epsilon = 1e-15
        );
        assert!(combine_spin_orbit(1.2, 0.5, 1).is_err());
        assert!(combine_spin_orbit(0.5, -0.1, 1).is_err());
    }

    proptest! {
        #[test]
        fn spin_orbit_output_is_convex(n_plus in 0.0..=1.0f64, n_minus in 0.0..=1.0f64, l in 0u32..6) {
            let combined = combine_spin_orbit(n_plus, n_minus, l).unwrap();
            let (lo, hi) = if l == 0 {
                (n_plus, n_plus)
            } else {
                (n_plus.min(n_minus), n_plus.max(n_minus))
            };
            prop_assert!(combined >= lo - 1e-15 && combined <= hi + 1e-15);
        }
    }

    #[test]
    fn depletion_of_oxygen_case_a() {
        let records = bundled_records();
        let o_a = records
            .iter()
            .find(|r| r.nucleus() == "O" && r.case_tag() == CaseTag::A)
            .unwrap();
        let report = depletion(o_a).unwrap();
        // hand evaluation: n_1s = 0.172*8/2, n_1p = 0.509*8/6 over a filled
        // 1s+1p core of capacity 8
        assert_abs_diff_eq!(report.depletion, 0.319, epsilon = 1e-12);
        assert_abs_diff_eq!(
            report.holes[&shell("1s")],
            2.0 * (1.0 - 0.688),
            epsilon = 1e-12
        );
    }

    #[test]
    fn depletion_of_helium_counts_single_shell() {
        let records = bundled_records();
        let he = records.iter().find(|r| r.nucleus() == "He").unwrap();
        let report = depletion(he).unwrap();
        assert_abs_diff_eq!(report.depletion, 0.515, epsilon = 1e-12);
        // 1p is not IPM-occupied for Z = 2, so it contributes no hole entry
        assert!(!report.holes.contains_key(&shell("1p")));
    }

    #[test]
    fn depletion_of_ipm_is_zero() {
        for z in [2, 8, 20] {
            let report = depletion(&ipm_occupation(z).unwrap()).unwrap();
            assert_eq!(report.depletion, 0.0);
        }
        let records = bundled_records();
        for record in records.iter().filter(|r| r.case_tag() == CaseTag::C) {
            assert_eq!(depletion(record).unwrap().depletion, 0.0);
        }
    }

    #[test]
    fn depletion_treats_missing_core_shell_as_full_hole() {
        // 1s absent entirely for Z = 8: a maximal hole, not an error
        let mut shells = BTreeMap::new();
        shells.insert(shell("1p"), 0.75); // n_1p = 1
        shells.insert(shell("1d"), 0.25); // n_1d = 0.2
        let record =
            OccupationRecord::from_shell_probabilities("O", 16, 8, CaseTag::A, shells).unwrap();
        let report = depletion(&record).unwrap();
        assert_abs_diff_eq!(report.holes[&shell("1s")], 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(report.depletion, 2.0 / 8.0, epsilon = 1e-15);
    }

    #[test]
    fn depletion_bounds_over_bundle() {
        for record in bundled_records() {
            let d = depletion(&record).unwrap().depletion;
            assert!((0.0..=1.0).contains(&d), "depletion {d} out of bounds");
        }
    }

    #[test]
    fn bundled_dataset_shape() {
        let records = bundled_records();
        assert_eq!(records.len(), 14);
        let count = |tag| records.iter().filter(|r| r.case_tag() == tag).count();
        assert_eq!(count(CaseTag::A), 7);
        assert_eq!(count(CaseTag::B), 5);
        assert_eq!(count(CaseTag::C), 2);

        let c_a = &records[1];
        assert_eq!(c_a.label(), "12C");
        let dist = occupation_to_distribution(c_a).unwrap();
        assert_eq!(dist.values(), &[0.223, 0.528, 0.249]);
    }

    #[test]
    fn bundled_reference_shape() {
        let rows = bundled_reference_rows();
        assert_eq!(rows.len(), 14);
        let ca_c = rows.last().unwrap();
        assert_eq!(ca_c.label(), "40Ca");
        assert_eq!(ca_c.case_tag, CaseTag::C);
        assert!(ca_c.stotland_total.is_none());
        assert_eq!(rows[0].shannon_jaynes, 0.693);
    }

    #[test]
    fn reference_header_accepts_shannon_alias() {
        let text = "nucleus,mass_number,Z,case,S_J,S_E,S_F\nHe,4,2,A,0.693,1.998,0.693\n";
        let rows = load_reference(text).unwrap();
        assert_eq!(rows[0].shannon_jaynes, 0.693);
    }

    #[test]
    fn empty_sources_load_as_empty() {
        assert!(load_dataset("").unwrap().is_empty());
        assert!(load_dataset("# only a comment\n").unwrap().is_empty());
        assert!(load_dataset("nucleus,mass_number,Z,case,shell,p_q\n")
            .unwrap()
            .is_empty());
        assert!(load_reference("").unwrap().is_empty());
    }

    #[test]
    fn parse_errors_name_line_and_field() {
        let bad_value = "nucleus,mass_number,Z,case,shell,p_q\nHe,4,2,A,1s,zero\n";
        match load_dataset(bad_value).unwrap_err() {
            Error::DatasetParse { line, field, .. } => {
                assert_eq!(line, 2);
                assert_eq!(field, "p_q");
            }
            other => panic!("unexpected error {other:?}"),
        }

        let bad_shell = "nucleus,mass_number,Z,case,shell,p_q\nHe,4,2,A,1j,0.5\n";
        match load_dataset(bad_shell).unwrap_err() {
            Error::DatasetParse { line: 2, field, .. } => assert_eq!(field, "shell"),
            other => panic!("unexpected error {other:?}"),
        }

        let short_row = "nucleus,mass_number,Z,case,shell,p_q\nHe,4,2,A,1s\n";
        assert!(matches!(
            load_dataset(short_row),
            Err(Error::DatasetParse { field: "row", .. })
        ));

        let duplicate = "nucleus,mass_number,Z,case,shell,p_q\nHe,4,2,A,1s,0.4\nHe,4,2,A,1s,0.6\n";
        assert!(matches!(
            load_dataset(duplicate),
            Err(Error::DatasetParse { field: "shell", .. })
        ));

        let reappearing = "nucleus,mass_number,Z,case,shell,p_q\n\
                           He,4,2,A,1s,0.485\n\
                           He,4,2,A,1p,0.515\n\
                           O,16,8,C,1s,0.25\n\
                           O,16,8,C,1p,0.75\n\
                           He,4,2,A,1d,0.0\n";
        match load_dataset(reappearing).unwrap_err() {
            Error::DatasetParse {
                line: 6,
                field,
                message,
            } => {
                assert_eq!(field, "nucleus");
                assert!(message.contains("not consecutive"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }

        let bad_header = "a,b,c\nHe,4,2\n";
        assert!(matches!(
            load_dataset(bad_header),
            Err(Error::DatasetParse {
                field: "header",
                ..
            })
        ));
    }

    #[test]
    fn sum_violation_is_an_inconsistent_record() {
        let text = "nucleus,mass_number,Z,case,shell,p_q\nHe,4,2,A,1s,0.485\nHe,4,2,A,1p,0.6\n";
        assert!(matches!(
            load_dataset(text),
            Err(Error::InconsistentRecord { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let records = bundled_records();
        let json = records_to_json(&records);
        let back = records_from_json(&json).unwrap();
        assert_eq!(back.len(), records.len());
        for (a, b) in records.iter().zip(&back) {
            assert_eq!(a.label(), b.label());
            assert_eq!(a.case_tag(), b.case_tag());
            let occ_a = a.occupations();
            let occ_b = b.occupations();
            assert_eq!(occ_a.len(), occ_b.len());
            for (shell, &n) in &occ_a {
                assert_abs_diff_eq!(occ_b[shell], n, epsilon = 1e-12);
            }
        }
        assert!(records_from_json("not json").is_err());
    }

    #[test]
    fn helium_record_keeps_promoted_protons() {
        // SRC promote protons into 1p even though the Z = 2 IPM leaves it empty
        let records = bundled_records();
        let he = records.iter().find(|r| r.nucleus() == "He").unwrap();
        let dist = occupation_to_distribution(he).unwrap();
        assert_eq!(dist.values(), &[0.485, 0.515]);
        assert_abs_diff_eq!(shannon_entropy(&dist), 0.693, epsilon = 5e-4);
        let report = full_report(&dist);
        assert_abs_diff_eq!(report.stotland_total.unwrap(), 0.693, epsilon = 5e-4);
    }
}
