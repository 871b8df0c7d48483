//! Power series and spherical series over real alternative *-algebras.
//!
//! Supported algebras are ℂ, the quaternions ℍ, the octonions 𝕆 and the
//! Clifford algebras ℝ_n with n ≤ 5. Slice functions are carried by
//! polynomial stems in a central complex variable.

// `!(a <= b)` is how NaN gets treated as a failure throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod error;
pub mod expansion;
pub mod geometry;
pub mod io;
pub mod par;
pub mod plane;
pub mod quadrature;
pub mod sampling;
pub mod series;
pub mod slice;
pub mod verify;

pub use algebra::{AlgebraKind, AlgebraSpec, ConePoint, Element, NormKind};
pub use error::{Error, Result};
pub use par::Exec;
pub use slice::{ComplexElement, PiecewiseConstantStem, SliceFunction, SliceRegular, StemPolynomial};
