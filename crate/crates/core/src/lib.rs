//! Equivariant Euler characteristics of discriminant Milnor fibres of
//! irreducible complex reflection groups, in exact arithmetic, together
//! with a brute-force monomial-group oracle for cross-validation.

pub mod error;
pub mod euler;
pub mod groups;
pub mod oracle;
pub mod report;
pub mod springer;
pub mod verify;

pub use error::{Error, Result};
