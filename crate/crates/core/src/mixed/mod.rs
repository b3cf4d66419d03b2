//! Shen's mixed product and the generalized conformal modules.

pub mod module;
pub mod shen;

pub use module::{build_slice, ConformalModule, GradedSlice, SliceAction, DEFAULT_SLICE_CAP};
pub use shen::{shen_closed_form, shen_embed, shen_general, verify_shen_monomorphism, ExtendedOp, PolyMat, SplitParts};
