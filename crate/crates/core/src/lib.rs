//! Exact computation of the retraction onto the dominant cone of a root
//! system, together with the order theory that characterizes it: the
//! piecewise-linear structure of the retraction, least upper-set elements
//! and infima for the dominance order, the concave-envelope description
//! for the general linear group, and a coweight-level interface for
//! reductive root data. All arithmetic is over the rationals; every result
//! is exact and certificate-checked.

pub mod coweights;
pub mod envelope;
pub mod error;
pub mod fan;
pub mod goldens;
pub mod linalg;
pub mod report;
pub mod retraction;
pub mod root_data;
pub mod verify;

pub use coweights::{make_gl, retract_coweight, Coweight, RootDatum};
pub use error::{Error, Result};
pub use linalg::{RatMatrix, RatVector, Rational};
pub use retraction::{retract, retract_oracle, RetractionResult};
pub use root_data::{make_system, AlphaVec, Family, ObtuseBasis, SystemSpec};
pub use verify::{run_verify, CheckKind, MixRng, VerifyPlan, VerifyReport};
