//! Orthogonal Lie algebras, conformal operators and the isomorphism between them.

pub mod conformal;
pub mod ortho;
pub mod theta;
pub mod verify;

pub use conformal::{build_conformal, ConfKind, ConformalBasis, ConformalGen, Ops};
pub use ortho::{build_ortho, Layout, OrthoBasis, OrthoElement, OrthoKind};
pub use theta::Theta;
pub use verify::{verify_bracket_tables, verify_theta_homomorphism};
