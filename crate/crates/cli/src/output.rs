//! Text rendering for reports, the dataset table, the reference check, and
//! the depletion listing. All output is built from sorted data with fixed
//! format strings, so identical invocations produce byte-identical text.

use std::fmt::Write;

use occent::measures::{full_report, EntropyReport, NormalizedDistribution};
use occent::occupancy::{
    occupation_to_distribution, CaseTag, DepletionReport, OccupationRecord, ReferenceEntropies,
    ShellLabel, FILLING_ORDER,
};

const LN_2: f64 = std::f64::consts::LN_2;

/// Check tolerances: S and S_F within 0.005, S_E within 0.01 of the
/// published three-decimal values.
const S_TOLERANCE: f64 = 0.005;
const SE_TOLERANCE: f64 = 0.01;
const SF_TOLERANCE: f64 = 0.005;

pub struct TableRow {
    pub record: OccupationRecord,
    pub report: EntropyReport,
}

pub fn compute_rows(records: &[OccupationRecord]) -> Result<Vec<TableRow>, occent::Error> {
    records
        .iter()
        .map(|record| {
            let dist = occupation_to_distribution(record)?;
            Ok(TableRow {
                record: record.clone(),
                report: full_report(&dist),
            })
        })
        .collect()
}

fn unit_scale(bits: bool) -> (f64, &'static str) {
    if bits {
        (1.0 / LN_2, "bits")
    } else {
        (1.0, "nats")
    }
}

/// The measure block printed by `compute` and `ipm`. Entropies (S, S_0, F,
/// S_F) honor the bits conversion; E and S_E are dimensionless and do not.
pub fn render_report(report: &EntropyReport, k: usize, precision: usize, bits: bool) -> String {
    let (scale, unit) = unit_scale(bits);
    let mut out = String::new();
    let _ = writeln!(out, "k   = {k}");
    let _ = writeln!(out, "S   = {:.precision$}", report.shannon_jaynes * scale);
    let _ = writeln!(out, "E   = {:.precision$}", report.onicescu_energy);
    let _ = writeln!(out, "S_E = {:.precision$}", report.onicescu_information);
    let _ = writeln!(
        out,
        "S_0 = {:.precision$}",
        report.minimum_uncertainty * scale
    );
    match (report.stotland_excess, report.stotland_total) {
        (Some(excess), Some(total)) => {
            let _ = writeln!(out, "F   = {:.precision$}", excess * scale);
            let _ = writeln!(out, "S_F = {:.precision$}", total * scale);
        }
        _ => {
            let _ = writeln!(out, "F   = divergent");
            let _ = writeln!(out, "S_F = divergent");
        }
    }
    let _ = writeln!(out, "unit = {unit}");
    out
}

/// Shell columns: the canonical filling order plus any extra shells found in
/// the data, in order.
fn shell_columns(rows: &[TableRow]) -> Vec<ShellLabel> {
    let mut columns: Vec<ShellLabel> = FILLING_ORDER.to_vec();
    for row in rows {
        for &shell in row.record.shell_probabilities().keys() {
            if !columns.contains(&shell) {
                columns.push(shell);
            }
        }
    }
    columns.sort();
    columns
}

pub fn render_table(rows: &[TableRow], precision: usize) -> String {
    let columns = shell_columns(rows);
    let width = precision + 3;
    let mut out = String::new();

    let _ = write!(out, "{:<8} {:<4}", "nucleus", "case");
    for shell in &columns {
        let _ = write!(out, " {:>width$}", format!("p_{shell}"));
    }
    let _ = writeln!(out, " {:>width$} {:>width$} {:>width$}", "S", "S_E", "S_F");

    for row in rows {
        let _ = write!(
            out,
            "{:<8} {:<4}",
            row.record.label(),
            row.record.case_tag()
        );
        for shell in &columns {
            match row.record.shell_probabilities().get(shell) {
                Some(&p) => {
                    let _ = write!(out, " {:>width$.precision$}", p);
                }
                None => {
                    let _ = write!(out, " {:>width$}", "");
                }
            }
        }
        let _ = write!(
            out,
            " {:>width$.precision$} {:>width$.precision$}",
            row.report.shannon_jaynes, row.report.onicescu_information
        );
        match row.report.stotland_total {
            Some(total) => {
                let _ = writeln!(out, " {:>width$.precision$}", total);
            }
            None => {
                let _ = writeln!(out, " {:>width$}", "");
            }
        }
    }
    out
}

pub struct CheckOutcome {
    pub matched: usize,
    pub total: usize,
    pub all_match: bool,
    pub rendering: String,
}

/// Compares recomputed entropies against published reference columns, row by
/// row. A degenerate row matches a blank reference cell.
pub fn check_rows(rows: &[TableRow], reference: &[ReferenceEntropies]) -> CheckOutcome {
    let mut rendering = String::new();
    let mut matched = 0usize;
    for row in rows {
        let name = format!("{} ({})", row.record.label(), row.record.case_tag());
        let published = reference
            .iter()
            .find(|r| r.label() == row.record.label() && r.case_tag == row.record.case_tag());
        let Some(published) = published else {
            let _ = writeln!(rendering, "mismatch: {name}: no reference row");
            continue;
        };
        let mut problems = Vec::new();
        let ds = (row.report.shannon_jaynes - published.shannon_jaynes).abs();
        if ds > S_TOLERANCE {
            problems.push(format!(
                "S {:.6} vs {:.3} (tolerance {S_TOLERANCE})",
                row.report.shannon_jaynes, published.shannon_jaynes
            ));
        }
        let dse = (row.report.onicescu_information - published.onicescu_information).abs();
        if dse > SE_TOLERANCE {
            problems.push(format!(
                "S_E {:.6} vs {:.3} (tolerance {SE_TOLERANCE})",
                row.report.onicescu_information, published.onicescu_information
            ));
        }
        match (row.report.stotland_total, published.stotland_total) {
            (Some(computed), Some(published)) => {
                if (computed - published).abs() > SF_TOLERANCE {
                    problems.push(format!(
                        "S_F {computed:.6} vs {published:.3} (tolerance {SF_TOLERANCE})"
                    ));
                }
            }
            (None, None) => {}
            (Some(computed), None) => {
                problems.push(format!("S_F {computed:.6} vs blank reference cell"));
            }
            (None, Some(published)) => {
                problems.push(format!("S_F divergent vs published {published:.3}"));
            }
        }
        if problems.is_empty() {
            matched += 1;
        } else {
            let _ = writeln!(rendering, "mismatch: {name}: {}", problems.join(", "));
        }
    }
    let total = rows.len();
    let _ = writeln!(rendering, "check: {matched}/{total} rows match");
    CheckOutcome {
        matched,
        total,
        all_match: matched == total,
        rendering,
    }
}

pub fn render_depletion(reports: &[DepletionReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:<4} {:>3} {:>9}",
        "nucleus", "case", "Z", "depletion"
    );
    let mut case_a = Vec::new();
    for report in reports {
        let _ = writeln!(
            out,
            "{:<8} {:<4} {:>3} {:>8.1}%",
            report.label(),
            report.case_tag,
            report.proton_number,
            100.0 * report.depletion
        );
        if report.case_tag == CaseTag::A && report.proton_number >= 6 {
            case_a.push(report.depletion);
        }
    }
    if !case_a.is_empty() {
        let mean = case_a.iter().sum::<f64>() / case_a.len() as f64;
        let _ = writeln!(out, "case A mean (Z >= 6): {:.1}%", 100.0 * mean);
    }
    out
}

pub fn render_ipm(
    record: &OccupationRecord,
    dist: &NormalizedDistribution,
    precision: usize,
    bits: bool,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Z = {} ({})", record.proton_number(), record.nucleus());
    let _ = writeln!(out, "{:<6} {:>8} {:>9}", "shell", "n_nl", "protons");
    for (shell, n) in record.occupations() {
        let _ = writeln!(
            out,
            "{:<6} {:>8.precision$} {:>9.precision$}",
            shell.to_string(),
            n,
            n * shell.degeneracy() as f64
        );
    }
    let values: Vec<String> = dist
        .values()
        .iter()
        .map(|p| format!("{p:.precision$}"))
        .collect();
    let _ = writeln!(out, "p = [{}]", values.join(", "));
    out.push_str(&render_report(
        &full_report(dist),
        dist.len(),
        precision,
        bits,
    ));
    out
}
