use std::path::Path;

use ergokit::{
    certify_entanglement, dimension_bound_m, dimension_witness, ergotropic_gap,
    separable_gap_bound, violation_sweep, Spectrum, SweepConfig, SweepFamily, SweepRecord,
    SweepSummary, Tolerances, Verdict,
};
use serde::Serialize;

use crate::args::{Cli, Command, Family, Format};
use crate::error::CliError;
use crate::io::{digest, emit, read_input, to_json, ReportFile, StateFile};

pub fn run(cli: Cli) -> Result<(), CliError> {
    let tol = match cli.tol_eig {
        Some(eig) => Tolerances::default().with_eig(eig),
        None => Tolerances::default(),
    };
    let out = cli.out.as_ref();
    let bytes = match cli.command {
        Command::Gap { state } => to_json(&gap(&state, &tol)?)?,
        Command::Certify { state } => to_json(&certify(&state, &tol)?)?,
        Command::Bound { d1, d2, spectrum } => {
            to_json(&bound(d1 as usize, d2 as usize, spectrum, &tol)?)?
        }
        Command::WitnessDim { gap, spacing } => {
            format!("{}\n", dimension_witness(gap, spacing, &tol)?).into_bytes()
        }
        Command::Sweep {
            family,
            dims,
            n,
            seed,
            format,
        } => sweep(family, dims, n, seed, format, &tol)?,
    };
    emit(out, &bytes)
}

fn load(
    path: &Path,
    command: &str,
    tol: &Tolerances,
) -> Result<(ReportFile, ergokit::BipartiteSystem), CliError> {
    let raw = read_input(path)?;
    let sys = StateFile::parse(&raw)?.into_system(tol)?;
    let mut report = ReportFile::new(command, digest(&raw), *tol);
    report.d1 = Some(sys.d1());
    report.d2 = Some(sys.d2());
    report.swapped = Some(sys.swapped());
    Ok((report, sys))
}

pub fn gap(path: &Path, tol: &Tolerances) -> Result<ReportFile, CliError> {
    let (mut report, sys) = load(path, "gap", tol)?;
    report.gap = Some(ergotropic_gap(&sys, tol)?);
    Ok(report)
}

pub fn certify(path: &Path, tol: &Tolerances) -> Result<ReportFile, CliError> {
    let (mut report, sys) = load(path, "certify", tol)?;
    // certify first so that unequal spacings are reported before anything else
    let certificate = certify_entanglement(&sys, tol)?;
    report.gap = Some(ergotropic_gap(&sys, tol)?);
    report.certificate = Some(certificate);
    Ok(report)
}

pub fn bound(
    d1: usize,
    d2: usize,
    spectrum: Option<Vec<f64>>,
    tol: &Tolerances,
) -> Result<ReportFile, CliError> {
    let (lo, hi) = (d1.min(d2), d1.max(d2));
    let canonical = match &spectrum {
        Some(x) => format!(
            "bound --d1 {d1} --d2 {d2} --spectrum {}",
            x.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
        ),
        None => format!("bound --d1 {d1} --d2 {d2}"),
    };
    let mut report = ReportFile::new("bound", digest(canonical.as_bytes()), *tol);
    report.d1 = Some(lo);
    report.d2 = Some(hi);
    report.dimension_bound = Some(dimension_bound_m(lo, hi)?);
    if let Some(values) = spectrum {
        if values.len() != lo * hi {
            return Err(CliError::Validation(ergokit::Error::LengthMismatch {
                left: lo * hi,
                right: values.len(),
            }));
        }
        let x = Spectrum::from_unsorted(values)?;
        report.bound = Some(separable_gap_bound(&x, lo, hi, 1.0)?);
    }
    Ok(report)
}

/// One CSV line of a sweep; the spectrum is only in the JSON form.
#[derive(Debug, Serialize)]
struct CsvRow {
    seed: u64,
    d1: usize,
    d2: usize,
    param: f64,
    gap: f64,
    bound_spectral: f64,
    bound_dimensional: f64,
    bound: f64,
    nk_holds: bool,
    ppt_separable: Option<bool>,
    verdict: Verdict,
}

impl From<&SweepRecord> for CsvRow {
    fn from(r: &SweepRecord) -> Self {
        CsvRow {
            seed: r.seed,
            d1: r.d1,
            d2: r.d2,
            param: r.param,
            gap: r.gap,
            bound_spectral: r.bound_spectral,
            bound_dimensional: r.bound_dimensional,
            bound: r.bound,
            nk_holds: r.nk_holds,
            ppt_separable: r.ppt_separable,
            verdict: r.verdict,
        }
    }
}

#[derive(Debug, Serialize)]
struct SweepFile {
    tool: &'static str,
    version: &'static str,
    config: SweepConfig,
    tolerances: Tolerances,
    summary: SweepSummary,
    records: Vec<SweepRecord>,
}

fn sweep(
    family: Family,
    (d1, d2): (usize, usize),
    n: usize,
    seed: u64,
    format: Format,
    tol: &Tolerances,
) -> Result<Vec<u8>, CliError> {
    let family = SweepFamily::from(family);
    if family == SweepFamily::WernerGrid && (d1, d2) != (2, 2) {
        return Err(CliError::Parse(format!(
            "the werner family is two-qubit only, got --dims {d1}x{d2}"
        )));
    }
    let config = SweepConfig {
        family,
        d1,
        d2,
        n_samples: n,
        seed,
    };
    let records = violation_sweep(&config, tol)?;
    match format {
        Format::Json => to_json(&SweepFile {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            config,
            tolerances: *tol,
            summary: SweepSummary::of(&records),
            records,
        }),
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for record in &records {
                writer
                    .serialize(CsvRow::from(record))
                    .map_err(|e| CliError::Encode(e.to_string()))?;
            }
            // an empty sweep still gets its header
            if records.is_empty() {
                writer
                    .write_record(CSV_HEADER)
                    .map_err(|e| CliError::Encode(e.to_string()))?;
            }
            writer
                .into_inner()
                .map_err(|e| CliError::Encode(e.to_string()))
        }
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "seed",
    "d1",
    "d2",
    "param",
    "gap",
    "bound_spectral",
    "bound_dimensional",
    "bound",
    "nk_holds",
    "ppt_separable",
    "verdict",
];
