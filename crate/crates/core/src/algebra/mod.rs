//! Exact arithmetic: the cyclotomic field, multivariate forms, matrices, univariate
//! polynomials, binary forms and elimination.

pub mod binary;
pub mod cyclo;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod resultant;
pub mod upoly;

use thiserror::Error;

pub use binary::{distinct_root_count, gcd_binary, simple_root_count};
pub use cyclo::{cyclotomic_polynomial, euler_phi, field_div, make_root, CycNum, CycloField, DEFAULT_INDEX};
pub use field::Field;
pub use matrix::Matrix;
pub use poly::{vars, weighted_vars, Mono, Poly, Var, Vars};
pub use resultant::{discriminant, resultant, resultant_pair};
pub use upoly::UPoly;

pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("root of unity of order {order} does not live in Q(zeta_{index})")]
    UnsupportedRoot { order: u32, index: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("zero input")]
    ZeroInput,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
