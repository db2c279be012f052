//! Golden outputs for catalog systems. Every file is regenerated from the
//! slow, independent code paths (subset enumeration for retractions, the
//! pooling pass for envelopes, partial-sum envelopes for coweights), never
//! hand-typed, so the checked-in files double as frozen oracle transcripts.

use crate::coweights::make_gl;
use crate::envelope::{
    concave_envelope_pav, coweight_to_function, function_to_coweight, StepFunction, Variant,
};
use crate::error::Result;
use crate::linalg::{rat, rat_int, RatVector, Rational};
use crate::report::{vector_strings, EnvelopeReport, RetractReport};
use crate::retraction::retract_oracle;
use crate::root_data::{make_system, AlphaVec, SystemSpec};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Serialize)]
struct RetractCase {
    input: Vec<String>,
    #[serde(flatten)]
    output: RetractReport,
}

#[derive(Serialize)]
struct EnvelopeCase {
    values: Vec<String>,
    #[serde(flatten)]
    output: EnvelopeReport,
}

#[derive(Serialize)]
struct CoweightCase {
    lambda: Vec<String>,
    value: Vec<String>,
    d: Vec<String>,
}

fn to_json<T: Serialize>(cases: &[T]) -> String {
    let mut out = serde_json::to_string_pretty(cases).expect("golden serialization");
    out.push('\n');
    out
}

/// The twelve A2 inputs: the origin, the walls, one point per cone of the
/// fan, and a few deeper points with non-unit denominators.
fn a2_inputs() -> Vec<AlphaVec> {
    let v = |a: Rational, b: Rational| AlphaVec::new(RatVector::new(vec![a, b]));
    vec![
        v(rat_int(0), rat_int(0)),
        v(rat_int(1), rat_int(1)),
        v(rat_int(2), rat_int(1)),
        v(rat_int(1), rat_int(2)),
        v(rat_int(1), rat_int(-1)),
        v(rat_int(-1), rat_int(1)),
        v(rat_int(-1), rat_int(-1)),
        v(rat_int(-2), rat_int(-5)),
        v(rat(1, 2), rat(-3, 2)),
        v(rat(-7, 3), rat(5, 6)),
        v(rat(5, 2), rat(5, 2)),
        v(rat_int(-4), rat_int(0)),
    ]
}

fn a2_retract_golden() -> Result<String> {
    let basis = make_system(&SystemSpec::parse("A2")?)?;
    let mut cases = Vec::new();
    for x in a2_inputs() {
        let result = retract_oracle(&basis, &x)?;
        cases.push(RetractCase {
            input: vector_strings(x.coords()),
            output: RetractReport::new(&result),
        });
    }
    Ok(to_json(&cases))
}

fn envelope_inputs() -> Vec<Vec<Rational>> {
    vec![
        vec![rat_int(0), rat_int(2), rat_int(1), rat_int(3)],
        vec![rat_int(0), rat_int(1), rat_int(-1), rat_int(0)],
        vec![rat_int(0), rat_int(3), rat_int(5), rat_int(6), rat_int(6)],
        vec![rat_int(0), rat_int(-1), rat_int(-3), rat_int(-2), rat_int(1)],
        vec![rat(0, 1), rat(1, 2), rat(1, 3), rat(5, 4), rat(-2, 3), rat(1, 1)],
        vec![rat_int(0), rat_int(0)],
    ]
}

fn envelope_golden() -> Result<String> {
    let mut cases = Vec::new();
    for values in envelope_inputs() {
        let f = StepFunction::new(Variant::Gl, values.clone())?;
        let result = concave_envelope_pav(&f);
        cases.push(EnvelopeCase {
            values: values.iter().map(Rational::to_string).collect(),
            output: EnvelopeReport::new(&result),
        });
    }
    Ok(to_json(&cases))
}

fn gl4_inputs() -> Vec<RatVector> {
    vec![
        RatVector::from_i64(&[0, 2, 1, 3]),
        RatVector::from_i64(&[3, 2, 1, 0]),
        RatVector::from_i64(&[0, 0, 0, 0]),
        RatVector::from_i64(&[-1, 4, -2, 3]),
        RatVector::new(vec![rat(1, 2), rat(-1, 3), rat(7, 6), rat(0, 1)]),
        RatVector::from_i64(&[5, 5, 5, 5]),
    ]
}

/// GL(4) coweight goldens computed through the envelope dictionary: take
/// partial sums, pool to the least concave majorant, read slopes back.
/// The abstract retraction never runs here, so tests that compare it
/// against these files are a genuine cross-check.
fn gl4_coweight_golden() -> Result<String> {
    let datum = make_gl(4)?;
    let mut cases = Vec::new();
    for lambda in gl4_inputs() {
        let f = coweight_to_function(&lambda)?;
        let envelope = concave_envelope_pav(&f).envelope;
        let value = function_to_coweight(&envelope);
        let d: Vec<Rational> = (0..datum.rank() - 1)
            .map(|i| {
                let mut acc = rat_int(0);
                for k in 0..=i {
                    acc += &value[k] - &lambda[k];
                }
                acc
            })
            .collect();
        cases.push(CoweightCase {
            lambda: vector_strings(&lambda),
            value: vector_strings(&value),
            d: d.iter().map(Rational::to_string).collect(),
        });
    }
    Ok(to_json(&cases))
}

/// All golden files as (file name, content) pairs.
pub fn golden_files() -> Result<Vec<(&'static str, String)>> {
    Ok(vec![
        ("a2_retract.json", a2_retract_golden()?),
        ("envelope.json", envelope_golden()?),
        ("gl4_coweight.json", gl4_coweight_golden()?),
    ])
}

/// Write the given golden files under `dir`, creating it if needed.
/// Returns the paths written; an empty list touches nothing.
pub fn write_goldens(dir: &Path, files: &[(&str, String)]) -> std::io::Result<Vec<PathBuf>> {
    if files.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, content) in files {
        let path = dir.join(name);
        fs::write(&path, content)?;
        written.push(path);
    }
    Ok(written)
}
