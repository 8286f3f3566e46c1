//! Exact construction and brute-force verification of bent, negabent and
//! bent-negabent Boolean functions over GF(2^n).

pub mod affine;
pub mod bitmatrix;
pub mod boolfun;
pub mod bridge;
pub mod cli;
pub mod error;
pub mod field;
pub mod io;
pub mod mm;
pub mod quadratic;
pub mod spectra;
pub mod suites;

pub use affine::AffineTransform;
pub use bitmatrix::BitMatrix;
pub use boolfun::{compose_affine, from_trace_poly, Anf, BooleanFunction, UnivariatePoly};
pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, FieldElement, FieldSpec};
pub use spectra::{is_bent, is_bent_negabent, is_negabent, nega, walsh};
