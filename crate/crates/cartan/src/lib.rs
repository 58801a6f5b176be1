//! Exact symbolic exterior calculus in Darboux coordinates over rational
//! polynomial coefficients: exterior derivatives, the movie Liouville form,
//! its Liouville vector field, and strict/exact pullback checks.
//!
//! No floating point anywhere; every verified statement is an algebraic
//! identity.

pub mod form;
pub mod movie;
pub mod parse;
pub mod poly;

pub use form::{DarbouxChart, OneForm, PolyVectorField, TwoForm};
pub use movie::{
    check_exact_pullback, check_strict_pullback, liouville_field, movie_fixtures, movie_form,
    verify_movie_field_formula, ExactnessResult,
};
pub use poly::Poly;

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CartanError {
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("non-Darboux primitive: d of the form is not the standard symplectic form")]
    NonDarbouxPrimitive,
    #[error("form uses coordinates outside the M factor: `{0}`")]
    NotAnMForm(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("parse error at offset {offset}: {detail}")]
    Parse { offset: usize, detail: String },
    #[error("{0}")]
    Other(String),
}
