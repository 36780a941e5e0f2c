use super::formula::Formula;
use super::names::NameSupply;
use super::term::Term;
use crate::error::{Error, Result};

/// Pointwise equality at any type: for `lhs, rhs : ρ1 -> ... -> ρk -> 0`
/// returns `∀v1:ρ1 ... ∀vk:ρk. lhs v1 ... vk = rhs v1 ... vk`.
pub fn expand_higher_eq(lhs: &Term, rhs: &Term) -> Result<Formula> {
    let lty = lhs.type_of()?;
    let rty = rhs.type_of()?;
    if lty != rty {
        return Err(Error::mismatch(rhs, &lty, &rty));
    }
    let mut supply = NameSupply::new(lhs.free_names().into_iter().chain(rhs.free_names()));
    let vars: Vec<_> = lty
        .argument_types()
        .into_iter()
        .map(|ty| (supply.fresh_like("v"), ty.clone()))
        .collect();
    let args: Vec<Term> = vars
        .iter()
        .map(|(n, ty)| Term::var(n.clone(), ty.clone()))
        .collect();
    let body = Formula::eq(
        Term::apps(lhs.clone(), args.iter().cloned()),
        Term::apps(rhs.clone(), args),
    );
    Ok(Formula::forall_block(&vars, body))
}
