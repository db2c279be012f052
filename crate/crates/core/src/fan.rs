//! The cones `K_J` as a complete simplicial fan, with checks and a rank-2
//! picture.
//!
//! Each subset `J` of basis indices yields the cone generated by the
//! coweights `w_j` for `j` outside `J` and the negated roots `-a_i` for `i`
//! in `J`. These 2^rank cones tile the whole space, meet along common
//! faces, and carry the same combinatorics as the coordinate orthants. The
//! checks here make those claims falsifiable with exact arithmetic:
//! simpliciality by determinant, coverage by sampled exact membership, and
//! the face pattern by generator containment plus sampled intersection
//! points.

use crate::error::{Error, Result};
use crate::linalg::{invert_general, rat, RatMatrix, RatVector, Rational};
use crate::retraction::ENUMERATION_RANK_LIMIT;
use crate::root_data::{AlphaVec, ObtuseBasis};
use itertools::Itertools;
use num::{ToPrimitive, Zero};

/// One maximal cone of the fan, with its generator basis precomputed.
#[derive(Debug, Clone)]
pub struct FanCone {
    pub subset: Vec<usize>,
    /// Coweights `w_j` (ascending `j` outside the subset) followed by
    /// negated roots `-a_i` (ascending `i` in the subset).
    pub generators: Vec<AlphaVec>,
    /// Inverse of the generator matrix: multiplies alpha-coordinates to
    /// give generator-coordinates.
    pub change_of_basis: RatMatrix,
}

impl FanCone {
    /// Exact coordinates of `x` in the generator basis.
    pub fn coordinates(&self, x: &AlphaVec) -> RatVector {
        self.change_of_basis.mul_vec(x.coords())
    }

    pub fn contains(&self, x: &AlphaVec) -> bool {
        self.coordinates(x).is_nonneg()
    }
}

fn build_cone(basis: &ObtuseBasis, subset: Vec<usize>) -> Result<FanCone> {
    let n = basis.rank();
    let mut generators = Vec::with_capacity(n);
    for j in 0..n {
        if !subset.contains(&j) {
            generators.push(basis.omega(j));
        }
    }
    for &i in &subset {
        generators.push(basis.alpha(i).scale(&rat(-1, 1)));
    }
    let gen_matrix = RatMatrix::from_fn(n, n, |r, c| generators[c].coords()[r].clone());
    let change_of_basis = invert_general(&gen_matrix).map_err(|_| {
        Error::Certificate(format!("cone for subset {subset:?} is not simplicial"))
    })?;
    Ok(FanCone {
        subset,
        generators,
        change_of_basis,
    })
}

/// All 2^rank maximal cones, subsets in size-then-lexicographic order,
/// each verified simplicial. Ranks above [`ENUMERATION_RANK_LIMIT`] are
/// refused.
pub fn enumerate_fan(basis: &ObtuseBasis) -> Result<Vec<FanCone>> {
    let n = basis.rank();
    if n > ENUMERATION_RANK_LIMIT {
        return Err(Error::GuardExceeded {
            rank: n,
            limit: ENUMERATION_RANK_LIMIT,
        });
    }
    (0..n)
        .powerset()
        .map(|subset| build_cone(basis, subset))
        .collect()
}

/// Outcome of a sampled coverage check.
#[derive(Debug, Clone)]
pub struct CompletenessReport {
    pub samples: usize,
    pub uncovered: Vec<AlphaVec>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Check that every sample lies in at least one cone, by exact membership.
pub fn check_completeness(cones: &[FanCone], samples: &[AlphaVec]) -> CompletenessReport {
    let uncovered = samples
        .iter()
        .filter(|x| !cones.iter().any(|k| k.contains(x)))
        .cloned()
        .collect();
    CompletenessReport {
        samples: samples.len(),
        uncovered,
    }
}

/// A violation of the face pattern for one pair of cones.
#[derive(Debug, Clone)]
pub struct FaceFailure {
    pub subset: Vec<usize>,
    pub other: Vec<usize>,
    pub witness: AlphaVec,
    pub reason: String,
}

/// Outcome of the pairwise face check.
#[derive(Debug, Clone)]
pub struct FaceReport {
    pub pairs: usize,
    /// Sampled intersection points that survived the membership filter and
    /// were actually tested against the candidate face.
    pub points_checked: usize,
    pub failures: Vec<FaceFailure>,
}

impl FaceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify the coordinate-fan face pattern on every unordered pair of
/// cones: the candidate common face generated by `{w_j : j outside both
/// subsets}` and `{-a_i : i in both}` must contain exactly the points of
/// the intersection.
///
/// Two exact checks per pair: every generator of the candidate face lies
/// in both cones; and sampled points of one cone that happen to lie in the
/// other (drawn as small nonnegative generator-coordinates, zeros likely,
/// from the supplied coordinate stream) lie in the face. The stream is
/// consumed `samples_per_pair * rank` entries per pair, so any seeded
/// generator of nonnegative rationals makes the run deterministic.
pub fn check_face_intersections(
    cones: &[FanCone],
    samples_per_pair: usize,
    mut coord_stream: impl FnMut() -> Rational,
) -> FaceReport {
    let mut report = FaceReport {
        pairs: 0,
        points_checked: 0,
        failures: Vec::new(),
    };
    for (a_idx, a) in cones.iter().enumerate() {
        for b in &cones[a_idx..] {
            report.pairs += 1;
            check_face_pair(a, b, samples_per_pair, &mut coord_stream, &mut report);
        }
    }
    report
}

fn check_face_pair(
    a: &FanCone,
    b: &FanCone,
    samples_per_pair: usize,
    coord_stream: &mut impl FnMut() -> Rational,
    report: &mut FaceReport,
) {
    let n = a.generators.len();
    // Positions (in a's generator list) of the candidate face generators:
    // w_j with j outside both subsets, -a_i with i in both.
    let face_positions: Vec<usize> = (0..n)
        .filter(|&pos| {
            let outside = n - a.subset.len();
            if pos < outside {
                let j = nth_outside(&a.subset, n, pos);
                !b.subset.contains(&j)
            } else {
                b.subset.contains(&a.subset[pos - outside])
            }
        })
        .collect();
    // (a) Face generators lie in both cones.
    for &pos in &face_positions {
        let g = &a.generators[pos];
        for (cone, name) in [(a, "first"), (b, "second")] {
            if !cone.contains(g) {
                report.failures.push(FaceFailure {
                    subset: a.subset.clone(),
                    other: b.subset.clone(),
                    witness: g.clone(),
                    reason: format!("face generator escapes the {name} cone"),
                });
            }
        }
    }
    // (b) Sampled intersection points lie in the face: their coordinates
    // in a's basis must vanish off the face positions.
    for _ in 0..samples_per_pair {
        let coords: Vec<Rational> = (0..n).map(|_| coord_stream()).collect();
        let mut x = AlphaVec::zero(n);
        for (pos, t) in coords.iter().enumerate() {
            x = x.add(&a.generators[pos].scale(t));
        }
        if !b.contains(&x) {
            continue;
        }
        report.points_checked += 1;
        let in_face = coords
            .iter()
            .enumerate()
            .all(|(pos, t)| face_positions.contains(&pos) || t.is_zero());
        if !in_face {
            report.failures.push(FaceFailure {
                subset: a.subset.clone(),
                other: b.subset.clone(),
                witness: x.clone(),
                reason: "intersection point outside the candidate face".into(),
            });
        }
    }
}

/// The `pos`-th element (ascending) of the complement of `subset` in
/// `0..n`.
fn nth_outside(subset: &[usize], n: usize, pos: usize) -> usize {
    (0..n)
        .filter(|j| !subset.contains(j))
        .nth(pos)
        .expect("position within complement size")
}

/// Render the four cones of a rank-2 basis as a fixed-viewport SVG.
///
/// The basis is embedded in the plane through the Cholesky factors of the
/// Gram matrix; this rendering step is the single place where rationals
/// become floating-point decimals (12 significant digits, presentation
/// only). Cones are color-coded by subset size and the four generator rays
/// are labeled.
pub fn fan_svg_rank2(basis: &ObtuseBasis) -> Result<String> {
    if basis.rank() != 2 {
        return Err(Error::Dimension(format!(
            "fan picture needs rank 2, got {}",
            basis.rank()
        )));
    }
    let g = basis.gram();
    let g11 = to_f64(g.at(0, 0));
    let g12 = to_f64(g.at(0, 1));
    let g22 = to_f64(g.at(1, 1));
    // Cholesky embedding: a1 along the x-axis, a2 completing the frame.
    let a1 = (g11.sqrt(), 0.0);
    let a2 = (g12 / g11.sqrt(), (g22 - g12 * g12 / g11).sqrt());
    let embed = |v: &AlphaVec| -> (f64, f64) {
        let c0 = to_f64(&v.coords()[0]);
        let c1 = to_f64(&v.coords()[1]);
        (c0 * a1.0 + c1 * a2.0, c0 * a1.1 + c1 * a2.1)
    };

    const SIZE: f64 = 600.0;
    const RADIUS: f64 = 240.0;
    let center = SIZE / 2.0;
    let place = |p: (f64, f64), scale: f64| -> (f64, f64) {
        let len = (p.0 * p.0 + p.1 * p.1).sqrt();
        // SVG y grows downward.
        (
            center + p.0 / len * scale,
            center - p.1 / len * scale,
        )
    };
    let fill_for = |size: usize| match size {
        0 => "#dbeafe",
        1 => "#bbf7d0",
        _ => "#fecaca",
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = fmt12(SIZE)
    ));
    svg.push_str(&format!(
        "  <rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
        s = fmt12(SIZE)
    ));

    let cones = enumerate_fan(basis)?;
    for cone in &cones {
        let p1 = place(embed(&cone.generators[0]), RADIUS);
        let p2 = place(embed(&cone.generators[1]), RADIUS);
        // Sector sweep: each cone spans less than a half-plane, so the
        // short arc between the two rays is the right one. Positive cross
        // product in screen coordinates means clockwise from p1 to p2.
        let cross = (p1.0 - center) * (p2.1 - center) - (p1.1 - center) * (p2.0 - center);
        let sweep = if cross > 0.0 { 1 } else { 0 };
        svg.push_str(&format!(
            "  <path d=\"M {cx} {cy} L {x1} {y1} A {r} {r} 0 0 {sweep} {x2} {y2} Z\" \
             fill=\"{fill}\" stroke=\"none\"/>\n",
            cx = fmt12(center),
            cy = fmt12(center),
            x1 = fmt12(p1.0),
            y1 = fmt12(p1.1),
            r = fmt12(RADIUS),
            x2 = fmt12(p2.0),
            y2 = fmt12(p2.1),
            fill = fill_for(cone.subset.len()),
        ));
    }

    let rays = [
        (basis.omega(0), "\u{03c9}1"),
        (basis.omega(1), "\u{03c9}2"),
        (basis.alpha(0).scale(&rat(-1, 1)), "\u{2212}\u{03b1}1"),
        (basis.alpha(1).scale(&rat(-1, 1)), "\u{2212}\u{03b1}2"),
    ];
    for (v, label) in &rays {
        let tip = place(embed(v), RADIUS);
        let anchor = place(embed(v), RADIUS + 28.0);
        svg.push_str(&format!(
            "  <line x1=\"{cx}\" y1=\"{cy}\" x2=\"{x}\" y2=\"{y}\" stroke=\"#1f2937\" stroke-width=\"1.5\"/>\n",
            cx = fmt12(center),
            cy = fmt12(center),
            x = fmt12(tip.0),
            y = fmt12(tip.1),
        ));
        svg.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"18\" \
             text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#111827\">{label}</text>\n",
            x = fmt12(anchor.0),
            y = fmt12(anchor.1),
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational fits in f64 for rendering")
}

/// Format with at most 12 significant digits, no trailing zeros, stable
/// across runs.
fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    if trimmed == "-0" {
        "0".into()
    } else {
        trimmed.to_string()
    }
}
