//! Exact scalars, sparse matrices, polynomials and differential operators.

pub mod diffop;
pub mod echelon;
pub mod monomial;
pub mod poly;
pub mod rat;
pub mod sparse;
pub mod unipoly;

pub use diffop::DiffOp;
pub use echelon::Echelon;
pub use monomial::{monomial_basis, MonomialIndex};
pub use poly::{Exponent, Poly};
pub use rat::Rat;
pub use sparse::{SparseMat, SparseVec};
pub use unipoly::{charpoly, UniPoly};
