//! Symbolic workbench for arithmetic in all finite types.
//!
//! The crate provides the term and formula language ([`syntax`]), a text
//! front end ([`frontend`]), syntactic formula classes ([`classify`]), the
//! modified realizability ([`mr`]) and Dialectica ([`dialectica`])
//! translations, the sequential-form construction for `∀x ∃y` sentences
//! ([`sequentialize`]), a normalizer for closed terms ([`eval`]), and
//! semantic spot checks of realizers ([`witness`]).

pub mod classify;
pub mod dialectica;
pub mod error;
pub mod eval;
pub mod frontend;
pub mod generate;
pub mod mr;
pub mod sequentialize;
pub mod syntax;
pub mod witness;

pub use error::{Error, ErrorClass, Result};
pub use syntax::{FiniteType, Formula, Name, Term, VarTuple};
