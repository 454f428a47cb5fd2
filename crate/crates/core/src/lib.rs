//! Finite-field and skew-polynomial machinery for building and verifying
//! structured MDS matrices: twisted circulants, quasi-recursive companion
//! products and the related coding-theoretic criteria.

pub mod error;
pub mod field;
pub mod matrix;
pub mod mds;
pub mod replay;
pub mod search;
pub mod skew;
pub mod structured;
pub mod text;
pub mod twist;

pub use error::{Error, Result};
pub use field::{Automorphism, Elem, FieldSpec};
pub use matrix::FMatrix;
pub use mds::{is_involutory, is_mds, MdsReport};
pub use skew::SkewPoly;
pub use twist::{ThetaDerivation, TwistKind};
