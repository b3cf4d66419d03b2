//! Exact construction and verification of generalized conformal representations
//! of the orthogonal Lie algebras `o(2n)` and `o(2n+1)`.

pub mod algebra;
pub mod error;
pub mod highest_weight;
pub mod irreducibility;
pub mod liealg;
pub mod mixed;
pub mod report;
pub mod spectral;
pub mod suite;
pub mod weights;

pub use algebra::{charpoly, DiffOp, Poly, Rat, SparseMat, SparseVec, UniPoly};
pub use error::{Error, Result};
pub use highest_weight::{build_irrep, IrrepData};
pub use irreducibility::{classify_b, surjectivity_scan, Classification, ScanResult, Verdict};
pub use liealg::{ConfKind, ConformalBasis, OrthoBasis, Theta};
pub use mixed::{ConformalModule, ExtendedOp, GradedSlice};
pub use report::{CheckRecord, Report, Status};
pub use weights::{Series, WeightVec};
