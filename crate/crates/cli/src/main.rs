//! Command-line front end: retraction, linearity fan, concave envelope,
//! coweight retraction, and the seeded verification harness. All rational
//! values in JSON output are exact strings like "-3/2"; floating point
//! appears only inside SVG coordinates.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 verification failure.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use langlands_core::coweights::{make_gl, retract_coweight, RootDatum};
use langlands_core::envelope::{
    concave_envelope_hull, concave_envelope_pav, StepFunction, Variant,
};
use langlands_core::error::Error;
use langlands_core::fan::{
    check_completeness, check_face_intersections, enumerate_fan, fan_svg_rank2,
};
use langlands_core::linalg::{parse_rational, parse_vector, rat, RatMatrix, RatVector};
use langlands_core::report::{ConeReport, CoweightReport, EnvelopeReport, RetractReport};
use langlands_core::retraction::retract;
use langlands_core::root_data::{make_system, AlphaVec, ObtuseBasis, SystemSpec};
use langlands_core::verify::{run_verify, sample_vector, CheckKind, MixRng, Profile, VerifyPlan};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "langlands",
    version,
    about = "Exact retraction onto the dominant cone of a root system"
)]
struct Cli {
    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Compact single-line JSON.
    Json,
    /// Indented JSON.
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Endpoints free.
    Gl,
    /// Both endpoints pinned to zero.
    Sl,
}

#[derive(Subcommand)]
enum Command {
    /// Retract a vector (alpha-coordinates) onto the dominant cone.
    Retract {
        /// Catalog name like A2, B3, G2.
        #[arg(long)]
        system: Option<String>,
        /// JSON file {"gram": [["2","-1"],["-1","2"]]} with a custom
        /// positive-definite Gram matrix.
        #[arg(long)]
        gram_file: Option<PathBuf>,
        /// Comma-separated rational coordinates, e.g. "1,-1" or "1/2,-3/2".
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Enumerate the linearity fan; optionally check it or draw it.
    Fan {
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        gram_file: Option<PathBuf>,
        /// Write a rank-2 fan drawing to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Run completeness and face-pattern checks instead of listing cones.
        #[arg(long)]
        check: bool,
        /// Sample count for the completeness check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Least concave majorant of a step function on {0, ..., n}.
    Envelope {
        /// Comma-separated values f(0),...,f(n); f(0) must be 0.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Gl)]
        variant: VariantArg,
    },
    /// Retract a coweight onto the dominant cone of a root datum.
    CoweightRetract {
        /// Group name like gl4.
        #[arg(long)]
        group: Option<String>,
        /// JSON file {"rank": r, "coroots": [[...]], "roots": [[...]]}.
        #[arg(long)]
        datum_file: Option<PathBuf>,
        /// Comma-separated rational coordinates of the coweight.
        #[arg(long, allow_hyphen_values = true)]
        coweight: String,
    },
    /// Run the seeded property harness and print its JSON report.
    Verify {
        /// Comma-separated catalog names, e.g. "A2,B2,G2".
        #[arg(long)]
        systems: Option<String>,
        /// Additional custom system from a Gram-matrix file.
        #[arg(long)]
        gram_file: Option<PathBuf>,
        /// Comma-separated group names, e.g. "gl2,gl4".
        #[arg(long)]
        groups: Option<String>,
        /// Additional root datum from a file.
        #[arg(long)]
        datum_file: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// "all" or a comma-separated subset of the check names.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Fixed thread count; the report is identical for any value.
        #[arg(long)]
        threads: Option<usize>,
        /// Tolerate hypothesis-violated entries on non-obtuse systems.
        #[arg(long)]
        allow_nonobtuse: bool,
        /// Include wall-clock time in the report (breaks byte-identity).
        #[arg(long)]
        timing: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    let format = cli.format;
    match run(cli.command, format) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Certificate(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit<T: Serialize>(format: Format, value: &T) {
    let text = match format {
        Format::Json => serde_json::to_string(value),
        Format::Pretty => serde_json::to_string_pretty(value),
    }
    .expect("report serialization");
    println!("{text}");
}

#[derive(Deserialize)]
struct GramFile {
    gram: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct DatumFile {
    rank: usize,
    coroots: Vec<Vec<String>>,
    roots: Vec<Vec<String>>,
    name: Option<String>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_string_rows(rows: &[Vec<String>]) -> Result<Vec<RatVector>, Error> {
    rows.iter()
        .map(|row| {
            let entries: Result<Vec<_>, _> = row.iter().map(|s| parse_rational(s)).collect();
            Ok(RatVector::new(entries?))
        })
        .collect()
}

fn load_gram(path: &Path) -> Result<RatMatrix, Error> {
    let file: GramFile = read_json(path)?;
    let rows = parse_string_rows(&file.gram)?;
    RatMatrix::from_rows(rows.into_iter().map(RatVector::into_entries).collect())
}

fn load_basis(system: Option<&str>, gram_file: Option<&Path>) -> Result<ObtuseBasis, Error> {
    let spec = match (system, gram_file) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "--system and --gram-file are mutually exclusive; pass exactly one".into(),
            ))
        }
        (Some(name), None) => SystemSpec::parse(name)?,
        (None, Some(path)) => SystemSpec::custom(load_gram(path)?),
        (None, None) => {
            return Err(Error::Parse("pass --system or --gram-file".into()));
        }
    };
    make_system(&spec)
}

fn load_datum_file(path: &Path) -> Result<RootDatum, Error> {
    let file: DatumFile = read_json(path)?;
    let coroots = parse_string_rows(&file.coroots)?;
    let roots = parse_string_rows(&file.roots)?;
    RootDatum::new(file.rank, &coroots, &roots, file.name)
}

fn parse_group(name: &str) -> Result<RootDatum, Error> {
    let n = name
        .strip_prefix("gl")
        .or_else(|| name.strip_prefix("GL"))
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("unknown group {name:?}; expected glN")))?;
    make_gl(n)
}

fn load_datum(group: Option<&str>, datum_file: Option<&Path>) -> Result<RootDatum, Error> {
    match (group, datum_file) {
        (Some(_), Some(_)) => Err(Error::Parse(
            "--group and --datum-file are mutually exclusive; pass exactly one".into(),
        )),
        (Some(name), None) => parse_group(name),
        (None, Some(path)) => load_datum_file(path),
        (None, None) => Err(Error::Parse("pass --group or --datum-file".into())),
    }
}

fn parse_input_vector(text: &str, rank: usize, what: &str) -> Result<RatVector, Error> {
    let v = parse_vector(text)?;
    if v.len() != rank {
        return Err(Error::Dimension(format!(
            "{what} has {} coordinates but the system has rank {rank}",
            v.len()
        )));
    }
    Ok(v)
}

#[derive(Serialize)]
struct FanListing {
    rank: usize,
    cone_count: usize,
    cones: Vec<ConeReport>,
}

#[derive(Serialize)]
struct FanCheck {
    simplicial: bool,
    uncovered: usize,
    face_failures: Vec<String>,
}

fn run(command: Command, format: Format) -> Result<ExitCode, Error> {
    match command {
        Command::Retract {
            system,
            gram_file,
            vector,
        } => {
            let basis = load_basis(system.as_deref(), gram_file.as_deref())?;
            let x = AlphaVec::new(parse_input_vector(&vector, basis.rank(), "--vector")?);
            let result = retract(&basis, &x)?;
            emit(format, &RetractReport::new(&result));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fan {
            system,
            gram_file,
            svg,
            check,
            samples,
            seed,
        } => {
            let basis = load_basis(system.as_deref(), gram_file.as_deref())?;
            if let Some(path) = &svg {
                let drawing = fan_svg_rank2(&basis)?;
                std::fs::write(path, drawing)
                    .map_err(|e| Error::Parse(format!("write {}: {e}", path.display())))?;
            }
            if check {
                let report = match enumerate_fan(&basis) {
                    Ok(cones) => {
                        let mut rng = MixRng::derive(seed, &[0]);
                        let points: Vec<AlphaVec> = (0..samples)
                            .map(|_| sample_vector(&basis, &mut rng, Profile::Generic))
                            .collect();
                        let completeness = check_completeness(&cones, &points);
                        let mut face_rng = MixRng::derive(seed, &[1]);
                        let faces = check_face_intersections(&cones, 40, move || {
                            let numerators = [0, 0, 1, 2];
                            let n = numerators[face_rng.below(4) as usize];
                            rat(n, face_rng.range_i64(1, 3))
                        });
                        FanCheck {
                            simplicial: true,
                            uncovered: completeness.uncovered.len(),
                            face_failures: faces
                                .failures
                                .iter()
                                .map(|f| {
                                    format!(
                                        "cones {:?} and {:?}: {} at {}",
                                        f.subset, f.other, f.reason, f.witness
                                    )
                                })
                                .collect(),
                        }
                    }
                    Err(Error::Certificate(_)) => FanCheck {
                        simplicial: false,
                        uncovered: 0,
                        face_failures: Vec::new(),
                    },
                    Err(e) => return Err(e),
                };
                let passed =
                    report.simplicial && report.uncovered == 0 && report.face_failures.is_empty();
                emit(format, &report);
                Ok(if passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(2)
                })
            } else {
                let cones = enumerate_fan(&basis)?;
                emit(
                    format,
                    &FanListing {
                        rank: basis.rank(),
                        cone_count: cones.len(),
                        cones: cones.iter().map(ConeReport::new).collect(),
                    },
                );
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Envelope { values, variant } => {
            let entries = parse_vector(&values)?;
            let kind = match variant {
                VariantArg::Gl => Variant::Gl,
                VariantArg::Sl => Variant::Sl,
            };
            let f = StepFunction::new(kind, entries.into_entries())?;
            let result = concave_envelope_pav(&f);
            if concave_envelope_hull(&f) != result.envelope {
                return Err(Error::Certificate(
                    "hull and pooling envelopes disagree".into(),
                ));
            }
            emit(format, &EnvelopeReport::new(&result));
            Ok(ExitCode::SUCCESS)
        }
        Command::CoweightRetract {
            group,
            datum_file,
            coweight,
        } => {
            let datum = load_datum(group.as_deref(), datum_file.as_deref())?;
            let lambda = parse_input_vector(&coweight, datum.rank(), "--coweight")?;
            let result = retract_coweight(&datum, &lambda)?;
            emit(format, &CoweightReport::new(&result));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            systems,
            gram_file,
            groups,
            datum_file,
            trials,
            seed,
            checks,
            threads,
            allow_nonobtuse,
            timing,
        } => {
            let mut specs = Vec::new();
            if let Some(list) = systems {
                for name in list.split(',') {
                    specs.push(SystemSpec::parse(name.trim())?);
                }
            }
            if let Some(path) = gram_file {
                specs.push(SystemSpec::custom(load_gram(&path)?));
            }
            let mut data = Vec::new();
            if let Some(list) = groups {
                for name in list.split(',') {
                    data.push(parse_group(name.trim())?);
                }
            }
            if let Some(path) = datum_file {
                data.push(load_datum_file(&path)?);
            }
            if specs.is_empty() && data.is_empty() {
                return Err(Error::Parse(
                    "nothing to verify; pass --systems, --gram-file, --groups, or --datum-file"
                        .into(),
                ));
            }
            let checks = if checks.trim() == "all" {
                CheckKind::all()
            } else {
                checks
                    .split(',')
                    .map(|name| CheckKind::parse(name.trim()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let plan = VerifyPlan {
                systems: specs,
                data,
                trials,
                seed,
                checks,
                threads,
            };
            let start = Instant::now();
            let mut report = run_verify(&plan)?;
            if timing {
                report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            let ok = report.ok(allow_nonobtuse);
            emit(format, &report);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}
