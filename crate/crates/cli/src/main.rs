//! `occent` command line: compute information measures for probability
//! distributions or bundled shell-occupation records, reproduce the dataset
//! table, list Fermi-sea depletions, fit the log-linear law, and emit chart
//! data as CSV plus a standalone SVG.

mod fig;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use occent::continuum::fit_log_linear;
use occent::measures::{full_report, NormalizedDistribution};
use occent::occupancy::{
    self, bundled_reference_rows, depletion, ipm_occupation, load_dataset, load_reference,
    occupation_to_distribution, CaseTag, OccupationRecord, ReferenceEntropies,
    INGESTION_SUM_TOLERANCE,
};

#[derive(Parser)]
#[command(
    name = "occent",
    version,
    about = "Information measures (Shannon-Jaynes, Onicescu, Stotland) for shell-occupation data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all measures of one probability distribution
    Compute {
        /// Comma-separated probabilities, e.g. 0.485,0.515
        #[arg(long, value_name = "LIST")]
        p: Option<String>,
        /// File of probabilities (whitespace/comma separated, # comments)
        #[arg(long, value_name = "PATH", conflicts_with = "p")]
        file: Option<PathBuf>,
        /// Divide the values by their sum before validating
        #[arg(long)]
        renormalize: bool,
        /// Decimal places in the printed values
        #[arg(long, default_value_t = 3)]
        precision: usize,
        /// Display entropies in bits instead of nats
        #[arg(long)]
        bits: bool,
    },
    /// Print the dataset table with recomputed S, S_E, S_F
    Table {
        /// Dataset path (defaults to the bundled table)
        #[arg(long, value_name = "PATH")]
        dataset: Option<PathBuf>,
        /// Keep only rows of one case (A, B or C)
        #[arg(long, value_name = "CASE")]
        case: Option<CaseTag>,
        /// Compare recomputed entropies against the reference columns and
        /// exit nonzero on any mismatch
        #[arg(long)]
        check: bool,
        /// Reference entropies for --check (defaults to the bundled table)
        #[arg(long, value_name = "PATH")]
        reference: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        precision: usize,
    },
    /// Fermi-sea depletion per record plus the case A mean
    Depletion {
        #[arg(long, value_name = "PATH")]
        dataset: Option<PathBuf>,
    },
    /// Write discrete (Z, ln Z, S_J) points and the continuous line
    /// S = a + b ln Z as CSV and a standalone SVG chart
    Fig1 {
        #[arg(long, value_name = "PATH")]
        dataset: Option<PathBuf>,
        /// Intercept a of the continuous line (nats)
        #[arg(long)]
        a: Option<f64>,
        /// Slope b of the continuous line (nats)
        #[arg(long)]
        b: Option<f64>,
        /// Output prefix; writes <PREFIX>.csv and <PREFIX>.svg
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
    },
    /// Independent-particle-model filling and its measures
    Ipm {
        /// Proton number, 1..=40
        #[arg(long)]
        z: u32,
        #[arg(long, default_value_t = 3)]
        precision: usize,
        #[arg(long)]
        bits: bool,
    },
    /// Least-squares fit S = a + b ln Z over dataset rows
    Fit {
        #[arg(long, value_name = "PATH")]
        dataset: Option<PathBuf>,
        /// Case to fit
        #[arg(long, default_value = "A")]
        case: CaseTag,
    },
}

/// Exit code 1: validation or check failure. Exit code 2: usage error
/// (clap reports its own parse failures with code 2 as well).
enum Failure {
    Validation(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<occent::Error> for Failure {
    fn from(err: occent::Error) -> Self {
        Failure::Validation(err.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Compute {
            p,
            file,
            renormalize,
            precision,
            bits,
        } => cmd_compute(p, file, renormalize, precision, bits),
        Command::Table {
            dataset,
            case,
            check,
            reference,
            precision,
        } => cmd_table(dataset, case, check, reference, precision),
        Command::Depletion { dataset } => cmd_depletion(dataset),
        Command::Fig1 { dataset, a, b, out } => cmd_fig1(dataset, a, b, out),
        Command::Ipm { z, precision, bits } => cmd_ipm(z, precision, bits),
        Command::Fit { dataset, case } => cmd_fit(dataset, case),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn load_records(dataset: Option<PathBuf>) -> Result<Vec<OccupationRecord>, Failure> {
    match dataset {
        Some(path) => Ok(load_dataset(&read_file(&path)?)?),
        None => Ok(occupancy::bundled_records()),
    }
}

fn parse_values(text: &str) -> Result<Vec<f64>, Failure> {
    let mut values = Vec::new();
    for line in text.lines() {
        let content = line.split('#').next().unwrap_or("");
        for token in content.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let value: f64 = token
                .parse()
                .map_err(|_| Failure::Usage(format!("cannot parse probability `{token}`")))?;
            values.push(value);
        }
    }
    if values.is_empty() {
        return Err(Failure::Usage("no probabilities given".into()));
    }
    Ok(values)
}

fn cmd_compute(
    p: Option<String>,
    file: Option<PathBuf>,
    renormalize: bool,
    precision: usize,
    bits: bool,
) -> CliResult {
    let text = match (p, file) {
        (Some(list), None) => list,
        (None, Some(path)) => read_file(&path)?,
        _ => {
            return Err(Failure::Usage(
                "give probabilities via --p or --file".into(),
            ))
        }
    };
    let values = parse_values(&text)?;
    let dist = if renormalize {
        NormalizedDistribution::renormalized(values)?
    } else {
        NormalizedDistribution::with_tolerance(values, INGESTION_SUM_TOLERANCE)?
    };
    print!(
        "{}",
        output::render_report(&full_report(&dist), dist.len(), precision, bits)
    );
    Ok(())
}

fn load_reference_rows(path: Option<PathBuf>) -> Result<Vec<ReferenceEntropies>, Failure> {
    match path {
        Some(path) => Ok(load_reference(&read_file(&path)?)?),
        None => Ok(bundled_reference_rows()),
    }
}

fn cmd_table(
    dataset: Option<PathBuf>,
    case: Option<CaseTag>,
    check: bool,
    reference: Option<PathBuf>,
    precision: usize,
) -> CliResult {
    let mut records = load_records(dataset)?;
    if let Some(case) = case {
        records.retain(|r| r.case_tag() == case);
    }
    let rows = output::compute_rows(&records)?;
    print!("{}", output::render_table(&rows, precision));

    if check {
        let reference = load_reference_rows(reference)?;
        let outcome = output::check_rows(&rows, &reference);
        print!("{}", outcome.rendering);
        if !outcome.all_match {
            return Err(Failure::Validation(format!(
                "{} of {} rows outside tolerance",
                outcome.total - outcome.matched,
                outcome.total
            )));
        }
    }
    Ok(())
}

fn cmd_depletion(dataset: Option<PathBuf>) -> CliResult {
    let records = load_records(dataset)?;
    let mut reports = Vec::with_capacity(records.len());
    for record in &records {
        reports.push(depletion(record)?);
    }
    print!("{}", output::render_depletion(&reports));
    Ok(())
}

fn cmd_fig1(dataset: Option<PathBuf>, a: Option<f64>, b: Option<f64>, out: PathBuf) -> CliResult {
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Failure::Usage(
                "fig1 needs both --a and --b: the continuous line S = a + b ln Z has no \
                 built-in coefficients (none are published alongside the dataset); derive \
                 them with `occent fit` or supply your own"
                    .into(),
            ))
        }
    };
    let records = load_records(dataset)?;
    let mut discrete = Vec::new();
    for record in records.iter().filter(|r| r.case_tag() == CaseTag::A) {
        let dist = occupation_to_distribution(record)?;
        let z = record.proton_number();
        discrete.push((z, (z as f64).ln(), occent::measures::shannon_entropy(&dist)));
    }
    if discrete.is_empty() {
        return Err(Failure::Validation(
            "dataset has no case A rows to plot".into(),
        ));
    }

    let ln_min = discrete.iter().map(|d| d.1).fold(f64::INFINITY, f64::min);
    let ln_max = discrete
        .iter()
        .map(|d| d.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let line: Vec<(f64, f64)> = (0..=100)
        .map(|i| {
            let x = ln_min + (ln_max - ln_min) * i as f64 / 100.0;
            (x, a + b * x)
        })
        .collect();

    let csv = fig::render_csv(&discrete, &line);
    let svg = fig::render_svg(&discrete, &line);

    let csv_path = with_suffix(&out, ".csv");
    let svg_path = with_suffix(&out, ".svg");
    write_all_or_nothing(&[(&csv_path, csv), (&svg_path, svg)])?;
    println!("wrote {} and {}", csv_path.display(), svg_path.display());
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut os = prefix.as_os_str().to_os_string();
    os.push(suffix);
    PathBuf::from(os)
}

/// Writes every file or none: on any failure the already-written files are
/// removed again.
fn write_all_or_nothing(files: &[(&PathBuf, String)]) -> CliResult {
    let mut written: Vec<&PathBuf> = Vec::new();
    for (path, contents) in files {
        match fs::write(path, contents) {
            Ok(()) => written.push(path),
            Err(e) => {
                for path in written {
                    let _ = fs::remove_file(path);
                }
                let _ = fs::remove_file(path);
                return Err(Failure::Validation(format!("{}: {e}", path.display())));
            }
        }
    }
    Ok(())
}

fn cmd_ipm(z: u32, precision: usize, bits: bool) -> CliResult {
    let record = ipm_occupation(z).map_err(|e| Failure::Usage(e.to_string()))?;
    let dist = occupation_to_distribution(&record)?;
    print!("{}", output::render_ipm(&record, &dist, precision, bits));
    Ok(())
}

fn cmd_fit(dataset: Option<PathBuf>, case: CaseTag) -> CliResult {
    let records = load_records(dataset)?;
    let mut points = Vec::new();
    for record in records.iter().filter(|r| r.case_tag() == case) {
        let dist = occupation_to_distribution(record)?;
        points.push((
            record.proton_number(),
            occent::measures::shannon_entropy(&dist),
        ));
    }
    let fit = fit_log_linear(&points)?;
    println!("points = {} (case {case})", fit.point_count);
    println!("a = {:.6}", fit.intercept);
    println!("b = {:.6}", fit.slope);
    println!("rms = {:.6}", fit.rms_residual);
    Ok(())
}
