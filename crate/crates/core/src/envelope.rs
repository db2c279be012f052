//! Least concave majorants of functions on `{0, ..., n}`, and the exact
//! dictionary between such functions and type-A retractions.
//!
//! A vector of the rank-(n-1) type-A space corresponds to the function
//! whose interior values are its alpha-coordinates, pinned to zero at both
//! ends; a length-n coweight corresponds to the partial-sum function,
//! pinned to zero only at the left end. Under this dictionary nonnegative
//! functions are the positive cone, concave functions are the dominant
//! cone, and the retraction becomes the least concave majorant. The
//! majorant is computed by two independent algorithms, an upper convex
//! hull and adjacent-violator slope pooling, which must agree exactly.

use crate::error::{Error, Result};
use crate::linalg::{rat_int, RatVector, Rational};
use crate::root_data::AlphaVec;
use num::{Signed, Zero};
use std::fmt;

/// Endpoint discipline for a step function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Both ends pinned: `f(0) = f(n) = 0`.
    Sl,
    /// Left end pinned: `f(0) = 0`, `f(n)` free.
    Gl,
}

/// A function `f : {0, ..., n} -> Q` with `f(0) = 0`, and `f(n) = 0` when
/// the variant is [`Variant::Sl`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    variant: Variant,
    values: Vec<Rational>,
}

impl StepFunction {
    pub fn new(variant: Variant, values: Vec<Rational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::BadFunction(
                "a step function needs at least the two endpoint values".into(),
            ));
        }
        if !values[0].is_zero() {
            return Err(Error::BadFunction("f(0) must be 0".into()));
        }
        if variant == Variant::Sl && !values.last().unwrap().is_zero() {
            return Err(Error::BadFunction("f(n) must be 0 for the SL variant".into()));
        }
        Ok(Self { variant, values })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Right endpoint of the domain `{0, ..., n}`.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Concavity as non-positive second differences, checked exactly.
    pub fn is_concave(&self) -> bool {
        slopes(&self.values).windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_nonneg(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Successive differences `f(i) - f(i-1)`, one per step.
fn slopes(values: &[Rational]) -> Vec<Rational> {
    values.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// One maximal run of pooled slopes in the adjacent-violator pass.
/// `first_slope` is 1-based (slope `i` joins `f(i-1)` to `f(i)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pool {
    pub first_slope: usize,
    pub len: usize,
    pub mean: Rational,
}

/// Hull and pooling must produce this same function; the pooling pass
/// also reports its pools.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PavResult {
    pub envelope: StepFunction,
    pub pools: Vec<Pool>,
}

/// Least concave majorant via the upper convex hull of the graph points
/// `(i, f(i))`, evaluated back at integer abscissae. Monotone-chain scan
/// with exact cross-product orientation tests; both endpoints are hull
/// vertices, so the endpoint discipline is preserved.
pub fn concave_envelope_hull(f: &StepFunction) -> StepFunction {
    StepFunction {
        variant: f.variant,
        values: upper_hull_values(&f.values),
    }
}

fn upper_hull_values(values: &[Rational]) -> Vec<Rational> {
    let n = values.len() - 1;
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..=n {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Orientation of (a, f(a)) -> (b, f(b)) -> (i, f(i)): pop b
            // unless the chain turns strictly clockwise there.
            let left = rat_int((b - a) as i64) * (&values[i] - &values[a]);
            let right = (&values[b] - &values[a]) * rat_int((i - a) as i64);
            if left >= right {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut out = Vec::with_capacity(n + 1);
    for seg in hull.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let slope = (&values[b] - &values[a]) / rat_int((b - a) as i64);
        for i in a..b {
            out.push(&values[a] + &slope * rat_int((i - a) as i64));
        }
    }
    out.push(values[n].clone());
    out
}

/// Least concave majorant via adjacent-violator pooling of the slope
/// sequence: slopes are forced non-increasing by merging each violating
/// adjacent pair of pools into one pool carrying the arithmetic mean
/// (unit weights), then the function is rebuilt by cumulative sums.
pub fn concave_envelope_pav(f: &StepFunction) -> PavResult {
    let (values, pools) = pav_values(&f.values);
    PavResult {
        envelope: StepFunction {
            variant: f.variant,
            values,
        },
        pools,
    }
}

fn pav_values(values: &[Rational]) -> (Vec<Rational>, Vec<Pool>) {
    struct RawPool {
        sum: Rational,
        len: usize,
        first_slope: usize,
    }
    let mut stack: Vec<RawPool> = Vec::new();
    for (k, s) in slopes(values).into_iter().enumerate() {
        stack.push(RawPool {
            sum: s,
            len: 1,
            first_slope: k + 1,
        });
        // Means must come out non-increasing; merge while the previous
        // pool's mean is strictly below the last one's.
        while stack.len() >= 2 {
            let prev = &stack[stack.len() - 2];
            let last = &stack[stack.len() - 1];
            if &prev.sum * rat_int(last.len as i64) < &last.sum * rat_int(prev.len as i64) {
                let last = stack.pop().unwrap();
                let prev = stack.last_mut().unwrap();
                prev.sum = &prev.sum + &last.sum;
                prev.len += last.len;
            } else {
                break;
            }
        }
    }
    let mut out = vec![Rational::zero()];
    let mut pools = Vec::with_capacity(stack.len());
    for pool in &stack {
        let mean = &pool.sum / rat_int(pool.len as i64);
        for _ in 0..pool.len {
            out.push(out.last().unwrap() + &mean);
        }
        pools.push(Pool {
            first_slope: pool.first_slope,
            len: pool.len,
            mean,
        });
    }
    (out, pools)
}

/// The function attached to a type-A vector: alpha-coordinates in the
/// interior, zero at both ends. A rank-(n-1) vector yields a function on
/// `{0, ..., n}`.
pub fn vec_to_function(v: &AlphaVec) -> StepFunction {
    let mut values = Vec::with_capacity(v.len() + 2);
    values.push(Rational::zero());
    values.extend(v.coords().iter().cloned());
    values.push(Rational::zero());
    StepFunction {
        variant: Variant::Sl,
        values,
    }
}

/// Inverse of [`vec_to_function`]: read the interior values back as
/// alpha-coordinates. Requires the SL endpoint discipline.
pub fn function_to_vec(f: &StepFunction) -> Result<AlphaVec> {
    if f.variant != Variant::Sl {
        return Err(Error::BadFunction(
            "only an SL-variant function corresponds to a type-A vector".into(),
        ));
    }
    let interior = f.values[1..f.values.len() - 1].to_vec();
    Ok(AlphaVec::new(RatVector::new(interior)))
}

/// The partial-sum function of a coweight: `f(i) = c_1 + ... + c_i`. The
/// coweight is dominant (non-increasing entries) exactly when the function
/// is concave.
pub fn coweight_to_function(coweight: &RatVector) -> Result<StepFunction> {
    if coweight.is_empty() {
        return Err(Error::BadFunction(
            "a coweight needs at least one entry".into(),
        ));
    }
    let mut values = Vec::with_capacity(coweight.len() + 1);
    values.push(Rational::zero());
    for c in coweight.iter() {
        values.push(values.last().unwrap() + c);
    }
    Ok(StepFunction {
        variant: Variant::Gl,
        values,
    })
}

/// Inverse of [`coweight_to_function`]: successive differences.
pub fn function_to_coweight(f: &StepFunction) -> RatVector {
    RatVector::new(slopes(&f.values))
}
