//! Bases, cones, and the dominance order of a root system.
//!
//! A system is specified by its Gram matrix `G` with `G[i][j] = <a_i, a_j>`
//! for a basis `{a_i}` of simple roots. Vectors are always carried in
//! alpha-coordinates (`x = sum c_i a_i`), which makes the positive cone and
//! the dominance order coordinate-wise. The dual basis `{w_i}` (fundamental
//! coweights) is the inverse Gram matrix, column by column.
//!
//! Catalog systems use symmetrized Cartan matrices normalized so that short
//! roots have squared length 2. The retraction is invariant under global
//! positive rescaling of the Gram matrix, so this normalization is a
//! presentation convention only.

use crate::error::{Error, Result};
use crate::linalg::{
    invert_symmetric, is_positive_definite, rat_int, RatMatrix, RatVector, Rational,
};
use num::Signed;
use std::fmt;

/// A vector of `V` in alpha-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphaVec {
    coords: RatVector,
}

impl AlphaVec {
    pub fn new(coords: RatVector) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(RatVector::zeros(n))
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(RatVector::from_i64(coords))
    }

    pub fn coords(&self) -> &RatVector {
        &self.coords
    }

    pub fn into_coords(self) -> RatVector {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.add(&other.coords))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.sub(&other.coords))
    }

    pub fn scale(&self, t: &Rational) -> Self {
        Self::new(self.coords.scale(t))
    }
}

impl fmt::Display for AlphaVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coords.fmt(f)
    }
}

/// A basis `{a_i}` of a Euclidean space, given by its Gram matrix.
///
/// The Gram matrix is checked to be symmetric positive definite at
/// construction, and the dual basis is precomputed. `obtuse` records
/// whether all off-diagonal products `<a_i, a_j>` are nonpositive; the
/// order-theoretic guarantees (order preservation, least element, infimum
/// closure) hold only under that hypothesis, while the metric retraction
/// itself works for any basis.
#[derive(Debug, Clone)]
pub struct ObtuseBasis {
    labels: Vec<String>,
    gram: RatMatrix,
    dual: RatMatrix,
    obtuse: bool,
}

impl ObtuseBasis {
    pub fn new(gram: RatMatrix) -> Result<Self> {
        let labels = (1..=gram.rows()).map(|i| i.to_string()).collect();
        Self::with_labels(gram, labels)
    }

    pub fn with_labels(gram: RatMatrix, labels: Vec<String>) -> Result<Self> {
        if !is_positive_definite(&gram)? {
            return Err(Error::NotPositiveDefinite);
        }
        if labels.len() != gram.rows() {
            return Err(Error::Dimension("label count != rank".into()));
        }
        let obtuse = {
            let n = gram.rows();
            let mut ok = true;
            'outer: for i in 0..n {
                for j in 0..n {
                    if i != j && gram.at(i, j).is_positive() {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            ok
        };
        let dual = invert_symmetric(&gram)?;
        Ok(Self {
            labels,
            gram,
            dual,
            obtuse,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn is_obtuse(&self) -> bool {
        self.obtuse
    }

    /// Dual-basis matrix: column `i` holds the alpha-coordinates of `w_i`.
    /// Equals the inverse Gram matrix, so `<a_i, w_j> = delta_ij` exactly.
    pub fn dual_basis(&self) -> &RatMatrix {
        &self.dual
    }

    /// The simple root `a_i` as a coordinate vector.
    pub fn alpha(&self, i: usize) -> AlphaVec {
        let mut v = RatVector::zeros(self.rank()).into_entries();
        v[i] = rat_int(1);
        AlphaVec::new(RatVector::new(v))
    }

    /// The fundamental coweight `w_i` in alpha-coordinates.
    pub fn omega(&self, i: usize) -> AlphaVec {
        AlphaVec::new(self.dual.col(i))
    }

    /// Pairings `<x, a_i>` for all `i`; entry `i` is `(G c)_i`. By duality
    /// these are also the coordinates of `x` in the `{w_i}` basis.
    pub fn pairing(&self, x: &AlphaVec) -> RatVector {
        assert_eq!(x.len(), self.rank(), "vector has wrong rank");
        self.gram.mul_vec(x.coords())
    }

    /// Scalar product `<x, y>` computed through the Gram matrix.
    pub fn inner(&self, x: &AlphaVec, y: &AlphaVec) -> Rational {
        self.pairing(x).dot(y.coords())
    }

    /// Squared length `<x, x>`.
    pub fn norm_sq(&self, x: &AlphaVec) -> Rational {
        self.inner(x, x)
    }

    /// Membership in the dominant cone `V+` generated by the `w_i`:
    /// all pairings `<x, a_i> >= 0`.
    pub fn in_dominant(&self, x: &AlphaVec) -> bool {
        self.pairing(x).is_nonneg()
    }

    /// Membership in the positive cone generated by the `a_i`:
    /// all alpha-coordinates `>= 0`.
    pub fn in_pos_cone(&self, x: &AlphaVec) -> bool {
        x.coords().is_nonneg()
    }

    /// Dominance order: `x <= y` iff `y - x` lies in the positive cone.
    pub fn leq(&self, x: &AlphaVec, y: &AlphaVec) -> bool {
        y.coords().sub(x.coords()).is_nonneg()
    }

    /// Coordinate-wise infimum of a non-empty family, which is the greatest
    /// lower bound for the dominance order. When every member is dominant
    /// and the basis is obtuse, the infimum is again dominant; for
    /// non-obtuse bases that closure can fail.
    pub fn infimum(&self, family: &[AlphaVec]) -> Result<AlphaVec> {
        let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
        let mut acc = first.coords().clone();
        for x in rest {
            acc = acc.min_entrywise(x.coords());
        }
        Ok(AlphaVec::new(acc))
    }

    /// Checks that every `w_i` lies in the positive cone, i.e. that the
    /// dominant cone is contained in the positive cone. This holds for
    /// every obtuse basis; a `false` here would be a counterexample to
    /// that inclusion.
    pub fn check_wellknown(&self) -> bool {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                if self.dual.at(i, j).is_negative() {
                    return false;
                }
            }
        }
        true
    }
}

/// Cartan families of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Key for a catalog system or a custom Gram matrix.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub family: Family,
    pub rank: usize,
    pub custom_gram: Option<RatMatrix>,
}

impl SystemSpec {
    pub fn catalog(family: Family, rank: usize) -> Self {
        Self {
            family,
            rank,
            custom_gram: None,
        }
    }

    pub fn custom(gram: RatMatrix) -> Self {
        Self {
            family: Family::Custom,
            rank: gram.rows(),
            custom_gram: Some(gram),
        }
    }

    /// Parse a catalog name like `"A3"` or `"g2"`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut chars = name.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidSystem(format!("unknown system {name:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidSystem(format!("bad rank in {name:?}")))?;
        let spec = Self::catalog(family, rank);
        validate_catalog(family, rank)?;
        Ok(spec)
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Custom => format!("custom{}", self.rank),
            f => format!("{}{}", f, self.rank),
        }
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn validate_catalog(family: Family, rank: usize) -> Result<()> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B => rank >= 2,
        Family::C => rank >= 3,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
        Family::Custom => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSystem(format!(
            "no catalog system {family}{rank}"
        )))
    }
}

/// Build the basis a spec names: the symmetrized Cartan matrix for catalog
/// families (short roots of squared length 2), or the supplied custom Gram
/// matrix. Catalog systems are always obtuse.
pub fn make_system(spec: &SystemSpec) -> Result<ObtuseBasis> {
    if let Some(gram) = &spec.custom_gram {
        if !gram.is_square() {
            return Err(Error::Dimension("custom gram must be square".into()));
        }
        return ObtuseBasis::new(gram.clone());
    }
    validate_catalog(spec.family, spec.rank)?;
    let gram = catalog_gram(spec.family, spec.rank);
    ObtuseBasis::new(gram)
}

fn catalog_gram(family: Family, n: usize) -> RatMatrix {
    let mut g = RatMatrix::zeros(n, n);
    let set = |g: &mut RatMatrix, i: usize, j: usize, v: i64| {
        g.set(i, j, rat_int(v));
        if i != j {
            g.set(j, i, rat_int(v));
        }
    };
    match family {
        Family::A => {
            for i in 0..n {
                set(&mut g, i, i, 2);
                if i + 1 < n {
                    set(&mut g, i, i + 1, -1);
                }
            }
        }
        // Long roots first, one short root at the end; realization
        // a_i = e_i - e_{i+1}, a_n = e_n, scaled by 2.
        Family::B => {
            for i in 0..n {
                set(&mut g, i, i, if i + 1 < n { 4 } else { 2 });
                if i + 1 < n {
                    set(&mut g, i, i + 1, -2);
                }
            }
        }
        // Short roots first, one long root at the end; realization
        // a_i = e_i - e_{i+1}, a_n = 2 e_n.
        Family::C => {
            for i in 0..n {
                set(&mut g, i, i, if i + 1 < n { 2 } else { 4 });
                if i + 2 < n {
                    set(&mut g, i, i + 1, -1);
                }
            }
            set(&mut g, n - 2, n - 1, -2);
        }
        Family::D => {
            for i in 0..n {
                set(&mut g, i, i, 2);
            }
            for i in 0..n.saturating_sub(2) {
                set(&mut g, i, i + 1, -1);
            }
            set(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                set(&mut g, i, i, 2);
            }
            // Chain 1-3-4-5-...-n with node 2 attached to node 4
            // (1-based labels).
            set(&mut g, 0, 2, -1);
            for i in 2..n - 1 {
                set(&mut g, i, i + 1, -1);
            }
            set(&mut g, 1, 3, -1);
        }
        Family::F => {
            // Two long, two short: diag (4, 4, 2, 2).
            set(&mut g, 0, 0, 4);
            set(&mut g, 1, 1, 4);
            set(&mut g, 2, 2, 2);
            set(&mut g, 3, 3, 2);
            set(&mut g, 0, 1, -2);
            set(&mut g, 1, 2, -2);
            set(&mut g, 2, 3, -1);
        }
        Family::G => {
            // Short root first.
            set(&mut g, 0, 0, 2);
            set(&mut g, 1, 1, 6);
            set(&mut g, 0, 1, -3);
        }
        Family::Custom => unreachable!("custom handled by make_system"),
    }
    g
}

/// Every catalog system of rank at most `max_rank`, for exhaustive sweeps.
pub fn catalog_rank_le(max_rank: usize) -> Vec<SystemSpec> {
    let mut out = Vec::new();
    let families = [
        (Family::A, 1usize),
        (Family::B, 2),
        (Family::C, 3),
        (Family::D, 4),
    ];
    for (family, min) in families {
        for rank in min..=max_rank {
            out.push(SystemSpec::catalog(family, rank));
        }
    }
    for rank in 6..=8 {
        if rank <= max_rank {
            out.push(SystemSpec::catalog(Family::E, rank));
        }
    }
    if max_rank >= 4 {
        out.push(SystemSpec::catalog(Family::F, 4));
    }
    if max_rank >= 2 {
        out.push(SystemSpec::catalog(Family::G, 2));
    }
    out
}
