//! Curve models, the catalog of normal forms, invariance, smoothness and genus.

mod catalog;
mod model;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::groebner::GroebnerError;
use crate::symmetry::SymmetryError;

pub use catalog::{
    instantiate_moduli, instantiate_with, load_catalog, shipped_catalog, BlockData, Coef, CremonaStep, CurveEntry,
    Expected, Extras, Generator, DEFAULT_RETRIES, MODULI_BOUND,
};
pub use model::{
    binary_vars, biform_vars, genus, genus_checked, invariance, multiplicity_at, net_vars, plane_vars, quadric_form,
    smoothness_check, Invariance, Model, Smoothness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("catalog entry {id:?} at {path}: {msg}")]
    Load { id: String, path: String, msg: String },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("{model} model cannot be acted on by a {element} element")]
    WrongRepresentation { model: &'static str, element: &'static str },
    #[error("not invariant; residual {residual}")]
    NotInvariant { residual: String },
    #[error("parameter {0} has no value")]
    FreeParameter(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("{id}: no acceptable instance in {retries} tries (last: {last})")]
    DegenerateFamily { id: String, retries: usize, last: String },
    #[error("genus undefined: {0}")]
    GenusUndefined(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}
