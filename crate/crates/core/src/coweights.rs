//! Retraction onto the dominant cone at the level of rational coweights of
//! a reductive root datum.
//!
//! A datum is given by explicit matrices: coroot columns and root rows in
//! a rank-r lattice. Their pairing matrix M must have the generalized
//! Cartan pattern, be symmetrizable by a positive diagonal, and be of
//! finite type (the symmetrized matrix positive definite). The retraction
//! moves a coweight by a nonnegative combination of coroots to the least
//! dominant coweight above it; only the root pairings of the input
//! determine that combination, so the computation reduces to the abstract
//! retraction for the symmetrized Gram matrix, and any component of the
//! coweight outside the coroot span rides along unchanged.

use crate::error::{Error, Result};
use crate::linalg::{invert_general, rat_int, RatMatrix, RatVector, Rational};
use crate::retraction::retract;
use crate::root_data::{AlphaVec, ObtuseBasis};
use num::{Signed, Zero};

/// A rational coweight: one coordinate per lattice dimension.
pub type Coweight = RatVector;

/// A reductive root datum presented as matrices.
#[derive(Debug, Clone)]
pub struct RootDatum {
    name: Option<String>,
    rank: usize,
    /// r x s; column `i` is the coroot corresponding to root `i`.
    coroots: RatMatrix,
    /// s x r; row `i` is the root, read as a covector on the lattice.
    roots: RatMatrix,
    /// s x s pairing matrix `M`, entry `(i, j)` the value of root `i` on
    /// coroot `j`.
    pairing: RatMatrix,
    pairing_inv: RatMatrix,
    /// Canonical positive diagonal symmetrizer: first index of each
    /// component normalized to 1.
    symmetrizer: RatVector,
    /// Connected components of the Dynkin graph of `M`, each ascending.
    components: Vec<Vec<usize>>,
    /// Abstract basis with Gram matrix `diag(symmetrizer) * M`.
    basis: ObtuseBasis,
}

impl RootDatum {
    pub fn new(
        rank: usize,
        coroots: &[RatVector],
        roots: &[RatVector],
        name: Option<String>,
    ) -> Result<Self> {
        if coroots.len() != roots.len() {
            return Err(Error::BadRootDatum(format!(
                "{} coroots but {} roots",
                coroots.len(),
                roots.len()
            )));
        }
        let s = coroots.len();
        for v in coroots.iter().chain(roots) {
            if v.len() != rank {
                return Err(Error::BadRootDatum(format!(
                    "entry of length {} in a rank-{} lattice",
                    v.len(),
                    rank
                )));
            }
        }
        let coroot_mat = RatMatrix::from_fn(rank, s, |i, j| coroots[j][i].clone());
        let root_mat = RatMatrix::from_fn(s, rank, |i, j| roots[i][j].clone());
        let pairing = root_mat.mul(&coroot_mat);
        check_cartan_pattern(&pairing)?;
        let components = connected_components(&pairing);
        let symmetrizer = compute_symmetrizer(&pairing, &components)?;
        let gram = RatMatrix::from_fn(s, s, |i, j| &symmetrizer[i] * pairing.at(i, j));
        let basis = ObtuseBasis::new(gram).map_err(|_| {
            Error::BadRootDatum("symmetrized pairing matrix is not positive definite (the datum is not of finite type)".into())
        })?;
        let pairing_inv = invert_general(&pairing)?;
        Ok(Self {
            name,
            rank,
            coroots: coroot_mat,
            roots: root_mat,
            pairing,
            pairing_inv,
            symmetrizer,
            components,
            basis,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Lattice rank r.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots s.
    pub fn num_roots(&self) -> usize {
        self.roots.rows()
    }

    pub fn pairing_matrix(&self) -> &RatMatrix {
        &self.pairing
    }

    pub fn symmetrizer(&self) -> &RatVector {
        &self.symmetrizer
    }

    /// Irreducible factors: connected components of the Dynkin graph.
    pub fn factors(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// The symmetrized pairing matrix `diag(symmetrizer) * M`, which is
    /// the Gram matrix the retraction runs on.
    pub fn symmetrized_gram(&self) -> &RatMatrix {
        self.basis.gram()
    }

    pub fn coroot(&self, i: usize) -> RatVector {
        self.coroots.col(i)
    }

    pub fn root(&self, i: usize) -> RatVector {
        RatVector::new(self.roots.row(i).to_vec())
    }

    /// Values of every simple root on `lambda`.
    pub fn pairings(&self, lambda: &Coweight) -> RatVector {
        assert_eq!(lambda.len(), self.rank, "coweight has wrong rank");
        self.roots.mul_vec(lambda)
    }

    /// Dominance: every simple root takes a nonnegative value.
    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.pairings(lambda).is_nonneg()
    }

    /// Coroot-coordinates of the span part of `u`: the unique `d` with
    /// `u - coroots * d` killed by every root.
    fn coroot_coordinates(&self, u: &RatVector) -> RatVector {
        self.pairing_inv.mul_vec(&self.roots.mul_vec(u))
    }

    /// The order `lambda <= mu`: their difference is a nonnegative
    /// combination of coroots (and nothing else).
    pub fn leq(&self, lambda: &Coweight, mu: &Coweight) -> bool {
        let diff = mu.sub(lambda);
        let d = self.coroot_coordinates(&diff);
        if !d.is_nonneg() {
            return false;
        }
        diff.sub(&self.coroots.mul_vec(&d)).is_zero()
    }
}

fn check_cartan_pattern(m: &RatMatrix) -> Result<()> {
    let s = m.rows();
    let two = rat_int(2);
    for i in 0..s {
        if m.at(i, i) != &two {
            return Err(Error::BadRootDatum(format!(
                "pairing of root {i} with its own coroot is {}, not 2",
                m.at(i, i)
            )));
        }
        for j in 0..s {
            if i == j {
                continue;
            }
            if m.at(i, j).is_positive() {
                return Err(Error::BadRootDatum(format!(
                    "positive off-diagonal pairing at ({i}, {j})"
                )));
            }
            if m.at(i, j).is_zero() != m.at(j, i).is_zero() {
                return Err(Error::BadRootDatum(format!(
                    "pairing zero pattern is asymmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

fn connected_components(m: &RatMatrix) -> Vec<Vec<usize>> {
    let s = m.rows();
    let mut seen = vec![false; s];
    let mut components = Vec::new();
    for start in 0..s {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for (j, seen_j) in seen.iter_mut().enumerate() {
                if !*seen_j && !m.at(i, j).is_zero() {
                    *seen_j = true;
                    comp.push(j);
                    queue.push(j);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Positive diagonal `d` with `diag(d) * M` symmetric, found by
/// propagating `d_j = d_i * M_ij / M_ji` along a spanning tree of each
/// component from its first index (normalized to 1), then verified on
/// every pair so off-tree edges cannot hide an inconsistency.
fn compute_symmetrizer(m: &RatMatrix, components: &[Vec<usize>]) -> Result<RatVector> {
    let s = m.rows();
    let mut d: Vec<Option<Rational>> = vec![None; s];
    for comp in components {
        d[comp[0]] = Some(rat_int(1));
        let mut queue = vec![comp[0]];
        while let Some(i) = queue.pop() {
            for j in 0..s {
                if d[j].is_none() && !m.at(i, j).is_zero() {
                    let di = d[i].clone().expect("queued index has a value");
                    d[j] = Some(di * m.at(i, j) / m.at(j, i));
                    queue.push(j);
                }
            }
        }
    }
    let d: Vec<Rational> = d
        .into_iter()
        .map(|v| v.expect("every index reached through its component"))
        .collect();
    for i in 0..s {
        if !d[i].is_positive() {
            return Err(Error::BadRootDatum(
                "symmetrizer is not positive".into(),
            ));
        }
        for j in 0..s {
            if &d[i] * m.at(i, j) != &d[j] * m.at(j, i) {
                return Err(Error::BadRootDatum(
                    "pairing matrix is not symmetrizable by a positive diagonal".into(),
                ));
            }
        }
    }
    Ok(RatVector::new(d))
}

/// The GL(n) datum: rank n, coroots `e_i - e_{i+1}`, roots the same
/// expressions read as covectors. Its pairing matrix is the type-A Cartan
/// matrix of rank n-1; GL(1) has no roots at all.
pub fn make_gl(n: usize) -> Result<RootDatum> {
    if n == 0 {
        return Err(Error::BadRootDatum("GL(0) has no lattice".into()));
    }
    let mut vectors = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut v = vec![Rational::zero(); n];
        v[i] = rat_int(1);
        v[i + 1] = rat_int(-1);
        vectors.push(RatVector::new(v));
    }
    RootDatum::new(n, &vectors, &vectors, Some(format!("gl{n}")))
}

/// A coweight retraction together with its coroot coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoweightRetraction {
    pub value: Coweight,
    /// Nonnegative coefficients: `value = lambda + coroots * d`.
    pub d: RatVector,
}

/// Verify a coweight-level certificate exactly: `value - lambda` is the
/// recorded nonnegative coroot combination, `value` is dominant, and each
/// strictly positive coefficient pairs to zero with `value`.
pub fn check_coweight_certificate(
    datum: &RootDatum,
    lambda: &Coweight,
    result: &CoweightRetraction,
) -> Result<()> {
    let fail = |msg: String| Err(Error::Certificate(msg));
    if result.d.len() != datum.num_roots() {
        return fail("coefficient vector has wrong length".into());
    }
    if !result.d.is_nonneg() {
        return fail("a coroot coefficient is negative".into());
    }
    let rebuilt = lambda.add(&datum.coroots.mul_vec(&result.d));
    if rebuilt != result.value {
        return fail("value does not equal lambda plus the coroot combination".into());
    }
    let pairings = datum.pairings(&result.value);
    if !pairings.is_nonneg() {
        return fail("value is not dominant".into());
    }
    for (i, di) in result.d.iter().enumerate() {
        if di.is_positive() && !pairings[i].is_zero() {
            return fail(format!(
                "coefficient {i} is positive but the root pairing there is {}",
                pairings[i]
            ));
        }
    }
    Ok(())
}

fn retract_on_basis(
    datum: &RootDatum,
    basis: &ObtuseBasis,
    lambda: &Coweight,
) -> Result<CoweightRetraction> {
    let p = datum.pairings(lambda);
    // Coordinates of the coroot-span part of lambda, in coroot basis.
    let coords = datum.pairing_inv.mul_vec(&p);
    let r = retract(basis, &AlphaVec::new(coords))?;
    let mut d = vec![Rational::zero(); datum.num_roots()];
    for (&j, c) in &r.residual_coeffs {
        d[j] = -c.clone();
    }
    let d = RatVector::new(d);
    let value = lambda.add(&datum.coroots.mul_vec(&d));
    let result = CoweightRetraction { value, d };
    check_coweight_certificate(datum, lambda, &result)?;
    Ok(result)
}

/// Retract `lambda` to the least dominant coweight above it. The returned
/// coefficients are certified on every call: they are nonnegative, the
/// value is dominant, and a positive coefficient forces the corresponding
/// root pairing to vanish.
pub fn retract_coweight(datum: &RootDatum, lambda: &Coweight) -> Result<CoweightRetraction> {
    retract_on_basis(datum, &datum.basis, lambda)
}

/// Same retraction through an explicitly supplied symmetrizer, for
/// checking that the choice does not matter. The diagonal must be
/// positive and must actually symmetrize the pairing matrix.
pub fn retract_coweight_with_symmetrizer(
    datum: &RootDatum,
    diag: &RatVector,
    lambda: &Coweight,
) -> Result<CoweightRetraction> {
    let s = datum.num_roots();
    if diag.len() != s {
        return Err(Error::BadRootDatum("symmetrizer has wrong length".into()));
    }
    if !diag.iter().all(|v| v.is_positive()) {
        return Err(Error::BadRootDatum("symmetrizer must be positive".into()));
    }
    let gram = RatMatrix::from_fn(s, s, |i, j| &diag[i] * datum.pairing.at(i, j));
    if !gram.is_symmetric() {
        return Err(Error::BadRootDatum(
            "diagonal does not symmetrize the pairing matrix".into(),
        ));
    }
    let basis = ObtuseBasis::new(gram)?;
    retract_on_basis(datum, &basis, lambda)
}

/// Squared length of `u` under the invariant form that scales factor `f`
/// of the canonical symmetrized form by `factor_scalings[f]` and uses the
/// standard dot product across the central directions.
pub fn invariant_norm_sq(
    datum: &RootDatum,
    factor_scalings: &[Rational],
    u: &RatVector,
) -> Result<Rational> {
    if factor_scalings.len() != datum.components.len() {
        return Err(Error::Dimension(format!(
            "{} scalings for {} factors",
            factor_scalings.len(),
            datum.components.len()
        )));
    }
    if factor_scalings.iter().any(|s| !s.is_positive()) {
        return Err(Error::BadRootDatum("scalings must be positive".into()));
    }
    let d = datum.coroot_coordinates(u);
    let central = u.sub(&datum.coroots.mul_vec(&d));
    let gram = datum.basis.gram();
    let mut total = central.dot(&central);
    for (f, comp) in datum.components.iter().enumerate() {
        let mut part = Rational::zero();
        for &i in comp {
            for &j in comp {
                part += &d[i] * gram.at(i, j) * &d[j];
            }
        }
        total += &factor_scalings[f] * part;
    }
    Ok(total)
}

/// One sampled dominant coweight that beat the claimed minimizer.
#[derive(Debug, Clone)]
pub struct MetricFailure {
    pub competitor: Coweight,
    pub competitor_dist_sq: Rational,
    pub minimizer_dist_sq: Rational,
}

/// Outcome of the nearest-point check for one scaling assignment.
#[derive(Debug, Clone)]
pub struct MetricReport {
    pub minimizer: Coweight,
    pub checked: usize,
    pub failures: Vec<MetricFailure>,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that the retraction value is the nearest dominant coweight under
/// the scaled invariant form: every dominant sample must be at least as
/// far from `lambda`. Non-dominant samples are ignored. Running this with
/// several scaling assignments and comparing the reported minimizers is
/// the metric-independence test.
pub fn check_metric_characterization(
    datum: &RootDatum,
    lambda: &Coweight,
    factor_scalings: &[Rational],
    samples: &[Coweight],
) -> Result<MetricReport> {
    let retraction = retract_coweight(datum, lambda)?;
    let base = invariant_norm_sq(
        datum,
        factor_scalings,
        &lambda.sub(&retraction.value),
    )?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for z in samples {
        if z.len() != datum.rank() || !datum.is_dominant(z) {
            continue;
        }
        checked += 1;
        let dist = invariant_norm_sq(datum, factor_scalings, &lambda.sub(z))?;
        if dist < base {
            failures.push(MetricFailure {
                competitor: z.clone(),
                competitor_dist_sq: dist,
                minimizer_dist_sq: base.clone(),
            });
        }
    }
    Ok(MetricReport {
        minimizer: retraction.value,
        checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn rv(entries: &[i64]) -> RatVector {
        RatVector::from_i64(entries)
    }

    #[test]
    fn gl_data_have_type_a_pairing() {
        let gl1 = make_gl(1).unwrap();
        assert_eq!(gl1.rank(), 1);
        assert_eq!(gl1.num_roots(), 0);

        let gl2 = make_gl(2).unwrap();
        assert_eq!(gl2.coroot(0), rv(&[1, -1]));
        assert_eq!(gl2.pairing_matrix(), &RatMatrix::from_i64_rows(&[&[2]]));

        let gl4 = make_gl(4).unwrap();
        assert_eq!(
            gl4.pairing_matrix(),
            &RatMatrix::from_i64_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])
        );
        assert_eq!(gl4.factors(), &[vec![0, 1, 2]]);
        assert_eq!(gl4.symmetrizer(), &RatVector::from_i64(&[1, 1, 1]));
    }

    #[test]
    fn bad_data_rejected() {
        // Diagonal pairing not 2.
        assert!(RootDatum::new(1, &[rv(&[1])], &[rv(&[1])], None).is_err());
        // Positive off-diagonal pairing.
        let unit_coroots = [rv(&[1, 0]), rv(&[0, 1])];
        let acute_roots = [rv(&[2, 1]), rv(&[1, 2])];
        assert!(RootDatum::new(2, &unit_coroots, &acute_roots, None).is_err());
        // Zero pattern asymmetric: M_01 = 0 but M_10 = -1.
        let coroots = [rv(&[2, -1, 0]), rv(&[0, 2, 0])];
        let roots = [rv(&[1, 0, 0]), rv(&[0, 1, 0])];
        assert!(RootDatum::new(3, &coroots, &roots, None).is_err());
        // Mismatched counts and lengths.
        assert!(RootDatum::new(2, &[rv(&[1, -1])], &[], None).is_err());
        assert!(RootDatum::new(2, &[rv(&[1, -1, 0])], &[rv(&[1, -1])], None).is_err());
        // Affine datum: symmetrizable but not finite type.
        let affine_coroots = [rv(&[1, -1]), rv(&[-1, 1])];
        let affine_roots = [rv(&[2, 0]), rv(&[0, 2])];
        assert!(matches!(
            RootDatum::new(2, &affine_coroots, &affine_roots, None),
            Err(Error::BadRootDatum(_))
        ));
    }

    #[test]
    fn symmetrizer_handles_asymmetric_pairings() {
        // A rank-2 datum with M = [[2, -3], [-1, 2]] (one long, one short
        // root): coroots e1-ish scaled so the pairing comes out right.
        let coroots = [rv(&[1, 0]), rv(&[0, 1])];
        let roots = [rv(&[2, -3]), rv(&[-1, 2])];
        let d = RootDatum::new(2, &coroots, &roots, None).unwrap();
        assert_eq!(
            d.pairing_matrix(),
            &RatMatrix::from_i64_rows(&[&[2, -3], &[-1, 2]])
        );
        // d1 * (-3) = d2 * (-1) with d1 = 1 gives d2 = 3.
        assert_eq!(d.symmetrizer(), &RatVector::from_i64(&[1, 3]));
        // Symmetrized gram is the rank-2 gram with off-diagonal -3.
        assert_eq!(
            d.symmetrized_gram(),
            &RatMatrix::from_i64_rows(&[&[2, -3], &[-3, 6]])
        );
    }

    #[test]
    fn dominance_examples() {
        let gl3 = make_gl(3).unwrap();
        assert!(gl3.is_dominant(&RatVector::new(vec![
            rat_int(3),
            rat_int(2),
            rat_int(2)
        ])));
        assert!(!gl3.is_dominant(&rv(&[0, 1, 0])));
        // Central coweights are dominant.
        assert!(gl3.is_dominant(&rv(&[5, 5, 5])));
    }

    #[test]
    fn order_examples() {
        let gl2 = make_gl(2).unwrap();
        let lam = rv(&[0, 1]);
        assert!(gl2.leq(&lam, &lam));
        let mu = RatVector::new(vec![rat(1, 2), rat(1, 2)]);
        assert!(gl2.leq(&lam, &mu));
        assert!(!gl2.leq(&mu, &lam));
        // Difference off the coroot span.
        assert!(!gl2.leq(&rv(&[0, 0]), &rv(&[1, 1])));
    }

    #[test]
    fn retract_fixes_dominant_coweights() {
        let gl3 = make_gl(3).unwrap();
        let lam = rv(&[4, 1, 0]);
        let r = retract_coweight(&gl3, &lam).unwrap();
        assert_eq!(r.value, lam);
        assert!(r.d.is_zero());
    }

    #[test]
    fn retract_gl2_example() {
        let gl2 = make_gl(2).unwrap();
        let r = retract_coweight(&gl2, &rv(&[0, 1])).unwrap();
        assert_eq!(r.value, RatVector::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(r.d, RatVector::new(vec![rat(1, 2)]));
    }

    #[test]
    fn retract_gl4_example() {
        let gl4 = make_gl(4).unwrap();
        let r = retract_coweight(&gl4, &rv(&[0, 2, 1, 3])).unwrap();
        let expected = RatVector::new(vec![rat(3, 2), rat(3, 2), rat(3, 2), rat(3, 2)]);
        assert_eq!(r.value, expected);
        assert_eq!(
            r.d,
            RatVector::new(vec![rat(3, 2), rat_int(1), rat(3, 2)])
        );
    }

    #[test]
    fn retract_agrees_with_envelope() {
        use crate::envelope::{
            concave_envelope_hull, coweight_to_function, function_to_coweight,
        };
        let mut state = 0x5eed_u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        for n in 1..=8 {
            let datum = make_gl(n).unwrap();
            for _ in 0..25 {
                let lam = RatVector::new(
                    (0..n)
                        .map(|_| {
                            let numer = (next() >> 40) as i64 % 13 - 6;
                            let denom = (next() >> 50) as i64 % 3 + 1;
                            rat(numer, denom)
                        })
                        .collect(),
                );
                let direct = retract_coweight(&datum, &lam).unwrap().value;
                let via_envelope = function_to_coweight(&concave_envelope_hull(
                    &coweight_to_function(&lam).unwrap(),
                ));
                assert_eq!(direct, via_envelope, "gl{n} lambda {lam}");
            }
        }
    }

    #[test]
    fn central_shift_passes_through() {
        let gl3 = make_gl(3).unwrap();
        let lam = rv(&[0, 2, -1]);
        let central = RatVector::new(vec![rat(7, 2), rat(7, 2), rat(7, 2)]);
        let base = retract_coweight(&gl3, &lam).unwrap();
        let shifted = retract_coweight(&gl3, &lam.add(&central)).unwrap();
        assert_eq!(shifted.value, base.value.add(&central));
        assert_eq!(shifted.d, base.d);
    }

    #[test]
    fn symmetrizer_choice_does_not_matter() {
        let gl4 = make_gl(4).unwrap();
        let lam = rv(&[0, 2, 1, 3]);
        let base = retract_coweight(&gl4, &lam).unwrap();
        let scaled = RatVector::new(vec![rat(5, 1), rat(5, 1), rat(5, 1)]);
        let alt = retract_coweight_with_symmetrizer(&gl4, &scaled, &lam).unwrap();
        assert_eq!(base, alt);

        let bad = RatVector::new(vec![rat(1, 1), rat(2, 1), rat(1, 1)]);
        assert!(retract_coweight_with_symmetrizer(&gl4, &bad, &lam).is_err());
    }

    #[test]
    fn permuting_root_order_leaves_value_unchanged() {
        let n = 4;
        let gl4 = make_gl(n).unwrap();
        let mut coroots: Vec<RatVector> = (0..3).map(|i| gl4.coroot(i)).collect();
        let mut roots: Vec<RatVector> = (0..3).map(|i| gl4.root(i)).collect();
        coroots.reverse();
        roots.reverse();
        let reversed = RootDatum::new(n, &coroots, &roots, None).unwrap();
        let lam = rv(&[0, 2, 1, 3]);
        let a = retract_coweight(&gl4, &lam).unwrap();
        let b = retract_coweight(&reversed, &lam).unwrap();
        assert_eq!(a.value, b.value);
        let mut d_rev: Vec<Rational> = b.d.iter().cloned().collect();
        d_rev.reverse();
        assert_eq!(a.d, RatVector::new(d_rev));
    }

    #[test]
    fn least_element_among_dominant_upper_bounds() {
        let gl3 = make_gl(3).unwrap();
        let lam = rv(&[0, 2, -1]);
        let r = retract_coweight(&gl3, &lam).unwrap();
        assert_eq!(r.value, rv(&[1, 1, -1]));
        // Independently chosen dominant coweights; those that sit above
        // lambda must also sit above the retraction value.
        let candidates = [
            rv(&[2, 1, -2]),
            rv(&[3, 1, -3]),
            rv(&[2, 2, -3]),
            rv(&[1, 1, -1]),
            rv(&[4, 3, 2]),
            rv(&[1, 0, 0]),
        ];
        let mut upper_bounds = 0;
        for z in &candidates {
            assert!(gl3.is_dominant(z), "{z}");
            if gl3.leq(&lam, z) {
                upper_bounds += 1;
                assert!(gl3.leq(&r.value, z), "{z}");
            }
        }
        assert_eq!(upper_bounds, 4);
    }

    #[test]
    fn metric_check_same_minimizer_across_scalings() {
        let gl3 = make_gl(3).unwrap();
        let lam = rv(&[0, 2, -1]);
        let samples: Vec<Coweight> = vec![
            rv(&[1, 1, 0]),
            rv(&[2, 1, 1]),
            rv(&[1, 0, 0]),
            rv(&[3, 2, 2]),
            rv(&[2, 2, 2]),
            RatVector::new(vec![rat(3, 2), rat(1, 2), rat(-1, 2)]),
        ];
        let one = check_metric_characterization(&gl3, &lam, &[rat_int(1)], &samples).unwrap();
        let other =
            check_metric_characterization(&gl3, &lam, &[rat(7, 3)], &samples).unwrap();
        assert!(one.passed(), "{:?}", one.failures);
        assert!(other.passed(), "{:?}", other.failures);
        assert_eq!(one.minimizer, other.minimizer);
        assert!(one.checked >= 4);

        // Dominant input: distance zero.
        let dom = rv(&[2, 1, 0]);
        let rep = check_metric_characterization(&gl3, &dom, &[rat_int(1)], &samples).unwrap();
        assert_eq!(rep.minimizer, dom);
        assert!(rep.passed());
    }

    #[test]
    fn product_datum_scales_factors_independently() {
        // Two orthogonal rank-1 factors inside a rank-4 lattice.
        let coroots = [rv(&[1, -1, 0, 0]), rv(&[0, 0, 1, -1])];
        let roots = [rv(&[1, -1, 0, 0]), rv(&[0, 0, 1, -1])];
        let d = RootDatum::new(4, &coroots, &roots, None).unwrap();
        assert_eq!(d.factors(), &[vec![0], vec![1]]);
        let lam = rv(&[0, 1, -1, 2]);
        let samples = vec![rv(&[1, 0, 1, 0]), rv(&[1, 1, 1, 1]), rv(&[2, 0, 2, -1])];
        let flat =
            check_metric_characterization(&d, &lam, &[rat_int(1), rat_int(1)], &samples)
                .unwrap();
        let skew =
            check_metric_characterization(&d, &lam, &[rat_int(1), rat_int(5)], &samples)
                .unwrap();
        assert!(flat.passed() && skew.passed());
        assert_eq!(flat.minimizer, skew.minimizer);
        // Per-factor retraction: each A1 factor retracts on its own.
        let r = retract_coweight(&d, &lam).unwrap();
        assert_eq!(
            r.value,
            RatVector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)])
        );
    }

    #[test]
    fn certificate_rejects_tampering() {
        let gl2 = make_gl(2).unwrap();
        let lam = rv(&[0, 1]);
        let good = retract_coweight(&gl2, &lam).unwrap();

        let mut wrong_d = good.clone();
        wrong_d.d = RatVector::new(vec![rat(-1, 2)]);
        assert!(check_coweight_certificate(&gl2, &lam, &wrong_d).is_err());

        let mut not_least = good.clone();
        not_least.value = rv(&[1, 0]);
        not_least.d = RatVector::new(vec![rat_int(1)]);
        // (1,0) = (0,1) + 1*(1,-1): dominant, d >= 0, but slackness fails:
        // d > 0 while the pairing of (1,0) is 1, not 0.
        assert!(check_coweight_certificate(&gl2, &lam, &not_least).is_err());

        assert!(check_coweight_certificate(&gl2, &lam, &good).is_ok());
    }

    #[test]
    fn gl1_is_trivial() {
        let gl1 = make_gl(1).unwrap();
        let lam = RatVector::new(vec![rat(-7, 3)]);
        assert!(gl1.is_dominant(&lam));
        let r = retract_coweight(&gl1, &lam).unwrap();
        assert_eq!(r.value, lam);
        assert!(r.d.is_empty());
        assert!(gl1.leq(&lam, &lam));
        assert!(!gl1.leq(&lam, &RatVector::new(vec![rat_int(0)])));
    }
}
