//! Finite types, terms and formulas: typing, substitution, alpha-equivalence,
//! fresh names, pointwise equality, and bracket abstraction.

mod alpha;
mod combinators;
mod equality;
mod formula;
mod names;
mod subst;
mod term;
mod types;

pub use alpha::{formulas_alpha_eq, terms_alpha_eq};
pub use combinators::{identity_combinator, to_combinators};
pub use equality::expand_higher_eq;
pub use formula::{check_formula, check_formula_closed_over_free, erase_dummy_foralls, Formula};
pub use names::{fresh_tuple, is_reserved, NameSupply, VarTuple, RESERVED};
pub use subst::{
    subst_formula, subst_formula_beta, subst_term, subst_term_beta, Substitution, Syntax,
};
pub use term::{constant_type, infer_type, Name, Prim, Term};
pub use types::FiniteType;

/// Free variables of a term or formula.
pub fn free_vars<S: Syntax>(node: &S) -> std::collections::BTreeSet<(Name, FiniteType)> {
    node.free_vars()
}

pub fn alpha_eq<S: Syntax>(a: &S, b: &S) -> bool {
    a.alpha_eq(b)
}
