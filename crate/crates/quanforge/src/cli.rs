//! Command-line front end: parse a subcommand, compile, optionally verify,
//! write the Log/English/Picture file triple.
//!
//! Exit codes:
//!
//! * 0 — success
//! * 2 — parameter or validation error (one line naming the failed check)
//! * 3 — verification exceeded the tolerance (files are still written, the
//!   Log records the deviation)
//! * 4 — file write failure
//!
//! Validation errors exit before any file is written.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::circuit::{gate_counts, Circuit};
use crate::compile::{
    compile_fourier, compile_glue, compile_oracle, compile_shift, BandList, FourierSpec, GlueSpec,
    OracleSpec, ShiftSpec,
};
use crate::emit::{
    emit_english, emit_log, emit_picture, format_real_17, Application, LogSummary, VerifyOutcome,
};
use crate::verify::{
    circuit_unitary, max_abs_diff, target_fourier, target_glue, target_oracle, target_shift,
    UnitaryMatrix, DEFAULT_QUBIT_CEILING,
};

#[derive(Parser)]
#[command(
    name = "quanforge",
    about = "Compile Fourier, state-shift, glue and banded-oracle evolution operators \
             into exact elementary-gate circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Number of qubits.
    #[arg(long)]
    nbits: usize,
    /// Output file prefix; writes <prefix>_log.txt, _eng.txt, _pic.txt.
    #[arg(long)]
    out: PathBuf,
    /// Rebuild the circuit unitary and compare it against the analytic
    /// target (cost grows as 4^nbits).
    #[arg(long)]
    verify: bool,
    /// Verification tolerance on the max entrywise deviation.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete Fourier transform on 2^nbits states.
    Fourier {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cyclic state shift |x> -> |(x + t) mod 2^nbits>.
    Shift {
        /// State shift t, with -2^nbits < t < 2^nbits; a negative shift is
        /// the inverse of the positive one.
        #[arg(long, allow_negative_numbers = true)]
        shift: i64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Glue operator exp(ig(|r1><r2| + h.c.)).
    Glue {
        /// First glued basis state.
        #[arg(long)]
        row1: u64,
        /// Second glued basis state.
        #[arg(long)]
        row2: u64,
        /// Coupling constant g.
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Banded oracle exp(iH) coupling each banded leaf k to k + 2^(nbits-1).
    Oracle {
        /// Band endpoints a1,b1,...,an,bn; integers split on any
        /// non-integer separators.
        #[arg(long, allow_hyphen_values = true)]
        bands: String,
        /// Coupling constant g.
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Run the CLI on an argv (first element is the program name); returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            eprintln!("{msg}");
            2
        }
        Err(Failure::Write(msg)) => {
            eprintln!("{msg}");
            4
        }
    }
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Write(String),
}

struct Job {
    common: CommonArgs,
    application: Application,
    circuit: Circuit,
    params: Vec<(String, String)>,
    target: Box<dyn FnOnce() -> UnitaryMatrix>,
}

/// Split the bands text into integers (digit runs, any separators) and pair
/// them in order as band endpoints.
fn parse_bands_text(text: &str) -> Result<BandList, Failure> {
    let mut values: Vec<i64> = Vec::new();
    let mut run = String::new();
    for ch in text.chars().chain(Some(' ')) {
        if ch.is_ascii_digit() {
            run.push(ch);
        } else if !run.is_empty() {
            let v = run
                .parse::<i64>()
                .map_err(|_| Failure::Invalid(format!("BadBandInteger: {run} is too large")))?;
            values.push(v);
            run.clear();
        }
    }
    if !values.len().is_multiple_of(2) {
        return Err(Failure::Invalid(format!(
            "OddBandCount: bands text must hold an even number of integers, got {}",
            values.len()
        )));
    }
    let bands = values.chunks(2).map(|pair| (pair[0], pair[1])).collect();
    Ok(BandList::new(bands))
}

fn prepare(command: Command) -> Result<Job, Failure> {
    let invalid = |e: crate::compile::SpecError| Failure::Invalid(e.to_string());
    match command {
        Command::Fourier { common } => {
            let spec = FourierSpec::new(common.nbits).map_err(invalid)?;
            let nb = spec.nb();
            Ok(Job {
                common,
                application: Application::Fourier,
                circuit: compile_fourier(&spec),
                params: vec![],
                target: Box::new(move || target_fourier(nb)),
            })
        }
        Command::Shift { shift, common } => {
            let spec = ShiftSpec::new(common.nbits, shift).map_err(invalid)?;
            let (nb, t) = (spec.nb(), spec.t());
            Ok(Job {
                common,
                application: Application::Shift,
                circuit: compile_shift(&spec),
                params: vec![("t".into(), t.to_string())],
                target: Box::new(move || target_shift(nb, t)),
            })
        }
        Command::Glue {
            row1,
            row2,
            g,
            common,
        } => {
            let spec = GlueSpec::new(common.nbits, row1, row2, g).map_err(invalid)?;
            let (nb, r1, r2) = (spec.nb(), spec.r1(), spec.r2());
            Ok(Job {
                common,
                application: Application::Glue,
                circuit: compile_glue(&spec),
                params: vec![
                    ("r1".into(), r1.to_string()),
                    ("r2".into(), r2.to_string()),
                    ("g".into(), format_real_17(g)),
                ],
                target: Box::new(move || target_glue(nb, r1, r2, g)),
            })
        }
        Command::Oracle { bands, g, common } => {
            let bands = parse_bands_text(&bands)?;
            let spec = OracleSpec::new(common.nbits, bands, g).map_err(invalid)?;
            let bands_text = if spec.bands().is_empty() {
                "none".to_string()
            } else {
                spec.bands()
                    .bands()
                    .iter()
                    .map(|(a, b)| format!("{a}-{b}"))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let target_spec = spec.clone();
            Ok(Job {
                common,
                application: Application::Oracle,
                circuit: compile_oracle(&spec),
                params: vec![
                    ("g".into(), format_real_17(g)),
                    ("bands".into(), bands_text),
                ],
                target: Box::new(move || target_oracle(&target_spec)),
            })
        }
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Write(format!("WriteFailed: {}: {e}", path.display())))
}

fn execute(command: Command) -> Result<i32, Failure> {
    let job = prepare(command)?;
    let verify = if job.common.verify {
        let reconstructed = circuit_unitary(&job.circuit).map_err(|e| match e {
            crate::verify::VerifyError::TooManyQubits { .. } => Failure::Invalid(format!(
                "TooManyQubits: --verify supports at most {DEFAULT_QUBIT_CEILING} qubits"
            )),
            other => Failure::Invalid(other.to_string()),
        })?;
        let target = (job.target)();
        let diff = max_abs_diff(&reconstructed, &target)
            .expect("target and reconstruction share one dimension");
        VerifyOutcome::MaxAbsDiff(diff)
    } else {
        VerifyOutcome::Skipped
    };
    let summary = LogSummary {
        application: job.application,
        nb: job.circuit.nb,
        params: job.params,
        counts: gate_counts(&job.circuit),
        verify,
    };
    write_file(
        &with_suffix(&job.common.out, "_log.txt"),
        &emit_log(&summary),
    )?;
    write_file(
        &with_suffix(&job.common.out, "_eng.txt"),
        &emit_english(&job.circuit),
    )?;
    write_file(
        &with_suffix(&job.common.out, "_pic.txt"),
        &emit_picture(&job.circuit),
    )?;
    if let VerifyOutcome::MaxAbsDiff(diff) = verify {
        if diff > job.common.tol {
            eprintln!(
                "VerifyFailed: max abs diff {diff:e} exceeds tolerance {:e}",
                job.common.tol
            );
            return Ok(3);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bands_text_splits_on_any_separator() {
        let b = parse_bands_text("0-2,5-5").unwrap();
        assert_eq!(b.bands(), &[(0, 2), (5, 5)]);
        let b = parse_bands_text("0 2 ; 5 .. 7").unwrap();
        assert_eq!(b.bands(), &[(0, 2), (5, 7)]);
        let b = parse_bands_text("").unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn odd_band_integer_count_is_rejected() {
        assert!(matches!(
            parse_bands_text("1,2,3"),
            Err(Failure::Invalid(_))
        ));
    }
}
