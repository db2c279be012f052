//! The retraction onto the dominant cone and its piecewise-linear structure.
//!
//! For a subset `J` of basis indices, `V_J` is the span of the roots `a_j`
//! with `j` in `J`, and `proj_subset` is the orthogonal projection onto the
//! complement of `V_J`. The space is tiled by the simplicial cones `K_J`
//! generated by the coweights `w_k` for `k` outside `J` and the negated
//! roots `-a_j` for `j` in `J`; on `K_J` the retraction is exactly that
//! projection. A result is accepted only with its certificate: the value is
//! dominant, the residual `x - value` is a nonpositive combination of roots,
//! and each root appearing in the residual pairs to zero with the value.
//! Those three conditions characterize the nearest dominant point, so a
//! checked result is correct unconditionally.

use crate::error::{Error, Result};
use crate::linalg::{rat_int, solve, RatMatrix, RatVector, Rational};
use crate::root_data::{AlphaVec, ObtuseBasis};
use itertools::Itertools;
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// Largest rank for which subset enumeration (2^rank cones) is attempted.
pub const ENUMERATION_RANK_LIMIT: usize = 16;

/// Orthogonal projection of `x` onto the complement of `V_J`, together with
/// the coefficients `c_j` of the removed part `x - value = sum c_j a_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub value: AlphaVec,
    /// Aligned with the subset passed in; entry `k` multiplies `a_{J[k]}`.
    pub coeffs: Vec<Rational>,
}

/// Outcome of a cone-membership test: the exact coordinates of `x` in the
/// generator basis of `K_J`, and whether they are all nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeMembership {
    pub inside: bool,
    /// Entry `i` multiplies `w_i` when `i` is outside `J`, and `-a_i` when
    /// `i` is in `J`.
    pub coefficients: RatVector,
}

/// A certified retraction value.
///
/// `active_set` lists the indices carrying a nonzero residual coefficient,
/// so `x - value = sum over the active set of c_j a_j` with every `c_j`
/// negative; a dominant input has an empty active set. Every root in the
/// active set pairs to zero with `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionResult {
    pub value: AlphaVec,
    pub active_set: Vec<usize>,
    pub residual_coeffs: BTreeMap<usize, Rational>,
    /// True when the active-set growth pass failed its sign check and the
    /// result came from subset enumeration instead.
    pub fell_back: bool,
}

fn validate_subset(rank: usize, subset: &[usize]) {
    for w in subset.windows(2) {
        assert!(w[0] < w[1], "subset indices must be strictly increasing");
    }
    if let Some(&last) = subset.last() {
        assert!(last < rank, "subset index {last} out of range for rank {rank}");
    }
}

/// Project `x` orthogonally onto the complement of `V_J`.
///
/// Solves the Gram system `G_JJ c = pairing(x)_J` and removes
/// `sum c_j a_j` from `x`, so the result pairs to zero with every root
/// indexed by `subset`. The subset must be strictly increasing and in
/// range.
pub fn proj_subset(basis: &ObtuseBasis, subset: &[usize], x: &AlphaVec) -> Projection {
    validate_subset(basis.rank(), subset);
    let g_jj = basis.gram().submatrix(subset, subset);
    let pairing = basis.pairing(x);
    let rhs = RatVector::new(subset.iter().map(|&j| pairing[j].clone()).collect());
    let coeffs = solve(&g_jj, &rhs)
        .expect("principal submatrix of a positive-definite matrix is invertible");
    let mut value = x.coords().clone().into_entries();
    for (k, &j) in subset.iter().enumerate() {
        value[j] = &value[j] - &coeffs[k];
    }
    Projection {
        value: AlphaVec::new(RatVector::new(value)),
        coeffs: coeffs.into_entries(),
    }
}

/// Test whether `x` lies in the cone `K_J` by solving for its coordinates
/// in the generator basis `{w_k : k outside J} U {-a_j : j in J}`.
pub fn in_cone(basis: &ObtuseBasis, subset: &[usize], x: &AlphaVec) -> ConeMembership {
    validate_subset(basis.rank(), subset);
    let n = basis.rank();
    let mut in_j = vec![false; n];
    for &j in subset {
        in_j[j] = true;
    }
    let dual = basis.dual_basis();
    let gens = RatMatrix::from_fn(n, n, |r, c| {
        if in_j[c] {
            rat_int(if r == c { -1 } else { 0 })
        } else {
            dual.at(r, c).clone()
        }
    });
    let coefficients = solve(&gens, x.coords())
        .expect("coweights off J and roots in J form a basis");
    ConeMembership {
        inside: coefficients.is_nonneg(),
        coefficients,
    }
}

/// Verify a retraction certificate exactly: `value` is dominant, the
/// difference `x - value` is supported on `active_set` with the recorded
/// nonpositive coefficients, and the pairing of `value` vanishes there.
pub fn check_certificate(
    basis: &ObtuseBasis,
    x: &AlphaVec,
    result: &RetractionResult,
) -> Result<()> {
    let fail = |msg: String| Err(Error::Certificate(msg));
    let pairing = basis.pairing(&result.value);
    if !pairing.is_nonneg() {
        return fail(format!("value {} is not dominant", result.value));
    }
    let diff = x.sub(&result.value);
    let mut seen = vec![false; basis.rank()];
    for (&j, c) in &result.residual_coeffs {
        seen[j] = true;
        if c.is_positive() {
            return fail(format!("residual coefficient {c} on index {j} is positive"));
        }
        if !pairing[j].is_zero() {
            return fail(format!("pairing does not vanish on active index {j}"));
        }
        if &diff.coords()[j] != c {
            return fail(format!("residual coefficient mismatch on index {j}"));
        }
    }
    for (j, listed) in seen.iter().enumerate() {
        if !listed && !diff.coords()[j].is_zero() {
            return fail(format!("residual has support outside the active set at {j}"));
        }
    }
    let listed: Vec<usize> = result.residual_coeffs.keys().copied().collect();
    if listed != result.active_set {
        return fail("active set does not match residual support".into());
    }
    Ok(())
}

fn certify(
    basis: &ObtuseBasis,
    x: &AlphaVec,
    value: AlphaVec,
    fell_back: bool,
) -> Result<RetractionResult> {
    let diff = x.sub(&value);
    let mut active_set = Vec::new();
    let mut residual_coeffs = BTreeMap::new();
    for (j, c) in diff.coords().iter().enumerate() {
        if !c.is_zero() {
            active_set.push(j);
            residual_coeffs.insert(j, c.clone());
        }
    }
    let result = RetractionResult {
        value,
        active_set,
        residual_coeffs,
        fell_back,
    };
    check_certificate(basis, x, &result)?;
    Ok(result)
}

/// Retract `x` onto the dominant cone.
///
/// Active-set growth: starting from the empty subset, project, and while
/// some root still pairs negatively with the projection, add the smallest
/// such index and reproject. The loop adds one index per step, so it ends
/// after at most `rank` rounds with a dominant value; if the residual sign
/// check then fails (which no catalog system has been observed to do), the
/// subset enumeration of [`retract_oracle`] supplies the answer and the
/// result is flagged `fell_back`. Works for any positive-definite Gram
/// matrix, obtuse or not.
pub fn retract(basis: &ObtuseBasis, x: &AlphaVec) -> Result<RetractionResult> {
    assert_eq!(x.len(), basis.rank(), "vector has wrong rank");
    let mut subset: Vec<usize> = Vec::new();
    let mut proj = Projection {
        value: x.clone(),
        coeffs: Vec::new(),
    };
    loop {
        let pairing = basis.pairing(&proj.value);
        match (0..basis.rank()).find(|&k| pairing[k].is_negative()) {
            Some(k) => {
                let pos = subset.partition_point(|&j| j < k);
                subset.insert(pos, k);
                proj = proj_subset(basis, &subset, x);
            }
            None => break,
        }
    }
    if proj.coeffs.iter().all(|c| !c.is_positive()) {
        certify(basis, x, proj.value, false)
    } else {
        let mut result = retract_oracle(basis, x)?;
        result.fell_back = true;
        Ok(result)
    }
}

/// Reference retraction by exhaustive search: try every subset `J` in
/// order of increasing size (lexicographic within a size) and return the
/// first projection that passes the certificate. Refuses ranks above
/// [`ENUMERATION_RANK_LIMIT`].
pub fn retract_oracle(basis: &ObtuseBasis, x: &AlphaVec) -> Result<RetractionResult> {
    assert_eq!(x.len(), basis.rank(), "vector has wrong rank");
    let n = basis.rank();
    if n > ENUMERATION_RANK_LIMIT {
        return Err(Error::GuardExceeded {
            rank: n,
            limit: ENUMERATION_RANK_LIMIT,
        });
    }
    for subset in (0..n).powerset() {
        let proj = proj_subset(basis, &subset, x);
        if basis.in_dominant(&proj.value) && proj.coeffs.iter().all(|c| !c.is_positive()) {
            return certify(basis, x, proj.value, false);
        }
    }
    Err(Error::Certificate(
        "no subset certified; the cones should cover the space".into(),
    ))
}

/// Find a subset `J` with `x` in `K_J`, searching subsets in the same
/// size-then-lexicographic order as [`retract_oracle`]. The projection for
/// the returned subset equals the retraction value.
pub fn linearity_domain(basis: &ObtuseBasis, x: &AlphaVec) -> Result<Vec<usize>> {
    assert_eq!(x.len(), basis.rank(), "vector has wrong rank");
    let n = basis.rank();
    if n > ENUMERATION_RANK_LIMIT {
        return Err(Error::GuardExceeded {
            rank: n,
            limit: ENUMERATION_RANK_LIMIT,
        });
    }
    for subset in (0..n).powerset() {
        if in_cone(basis, &subset, x).inside {
            return Ok(subset);
        }
    }
    Err(Error::Certificate(
        "no cone contains the input; the cones should cover the space".into(),
    ))
}
