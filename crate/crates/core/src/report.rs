//! JSON-facing views of results. Every rational is rendered as its exact
//! decimal-free string (`"p/q"`, or `"p"` when integral) and never as a
//! float, so output survives any JSON consumer losslessly. Index sets are
//! rendered 1-based, matching how simple roots are usually numbered.

use crate::coweights::CoweightRetraction;
use crate::envelope::PavResult;
use crate::fan::FanCone;
use crate::linalg::{RatVector, Rational};
use crate::retraction::RetractionResult;
use crate::root_data::AlphaVec;
use serde::Serialize;
use std::collections::BTreeMap;

pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn vector_strings(v: &RatVector) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RetractReport {
    pub value: Vec<String>,
    /// 1-based indices of the simple roots carrying the residual.
    pub active_set: Vec<usize>,
    /// Residual coefficients keyed by the same 1-based indices.
    pub residual_coeffs: BTreeMap<usize, String>,
    pub fell_back: bool,
    pub certificate_ok: bool,
}

impl RetractReport {
    pub fn new(result: &RetractionResult) -> Self {
        Self {
            value: vector_strings(result.value.coords()),
            active_set: result.active_set.iter().map(|j| j + 1).collect(),
            residual_coeffs: result
                .residual_coeffs
                .iter()
                .map(|(j, c)| (j + 1, c.to_string()))
                .collect(),
            fell_back: result.fell_back,
            certificate_ok: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ConeReport {
    /// 1-based subset labeling the cone.
    pub subset: Vec<usize>,
    /// Generators in basis coordinates, coweights first.
    pub generators: Vec<Vec<String>>,
}

impl ConeReport {
    pub fn new(cone: &FanCone) -> Self {
        Self {
            subset: cone.subset.iter().map(|j| j + 1).collect(),
            generators: cone
                .generators
                .iter()
                .map(|g| vector_strings(g.coords()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FanReport {
    pub rank: usize,
    pub cone_count: usize,
    pub cones: Vec<ConeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completeness: Option<CompletenessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<FaceSummary>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CompletenessSummary {
    pub samples: usize,
    pub uncovered: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FaceSummary {
    pub pairs: usize,
    pub points_checked: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PoolReport {
    pub first_slope: usize,
    pub len: usize,
    pub mean: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EnvelopeReport {
    pub envelope: Vec<String>,
    pub pools: Vec<PoolReport>,
}

impl EnvelopeReport {
    pub fn new(result: &PavResult) -> Self {
        Self {
            envelope: result
                .envelope
                .values()
                .iter()
                .map(Rational::to_string)
                .collect(),
            pools: result
                .pools
                .iter()
                .map(|p| PoolReport {
                    first_slope: p.first_slope,
                    len: p.len,
                    mean: p.mean.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CoweightReport {
    pub value: Vec<String>,
    pub d: Vec<String>,
    pub certificate_ok: bool,
}

impl CoweightReport {
    pub fn new(result: &CoweightRetraction) -> Self {
        Self {
            value: vector_strings(&result.value),
            d: vector_strings(&result.d),
            certificate_ok: true,
        }
    }
}

/// Exact round-trip helpers: JSON strings back to vectors.
pub fn strings_to_vector(entries: &[String]) -> crate::error::Result<RatVector> {
    let parsed: crate::error::Result<Vec<Rational>> = entries
        .iter()
        .map(|s| crate::linalg::parse_rational(s))
        .collect();
    Ok(RatVector::new(parsed?))
}

pub fn strings_to_alpha(entries: &[String]) -> crate::error::Result<AlphaVec> {
    Ok(AlphaVec::new(strings_to_vector(entries)?))
}
