//! Modified realizability.
//!
//! `mr_translate(A)` returns a tuple of fresh realizer variables `x` and the
//! formula `x mr A`:
//!
//! ```text
//! x mr P              = P                                   (P prime, x empty)
//! x, y mr (A & B)     = x mr A & y mr B
//! z, x, y mr (A | B)  = (z = 0 -> x mr A) & (~z = 0 -> y mr B)
//! x mr (A -> B)       = !y. (y mr A -> x y mr B)
//! x mr (!y. A(y))     = !y. x y mr A(y)
//! z, x mr (?y. A(y))  = x mr A(z)
//! ```
//!
//! Tuple application `x y` applies every component of `x` to all of `y`,
//! left to right. Realizers that become functions are renamed with an
//! upper-case initial (`z` becomes `Z`). When the premise of an implication
//! has no realizers the `!y` is left out.

use crate::classify::{classify, Flag, Mode};
use crate::error::{Error, Result};
use crate::syntax::{
    subst_formula, subst_formula_beta, FiniteType, Formula, NameSupply, Substitution, Term,
    VarTuple,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrResult {
    pub realizers: VarTuple,
    pub formula: Formula,
    pub source: Formula,
}

pub fn mr_types(a: &Formula) -> Vec<FiniteType> {
    match a {
        Formula::Bot | Formula::Eq(..) => vec![],
        Formula::And(x, y) => [mr_types(x), mr_types(y)].concat(),
        Formula::Or(x, y) => [vec![FiniteType::Nat], mr_types(x), mr_types(y)].concat(),
        Formula::Imp(x, y) => {
            let premise = mr_types(x);
            mr_types(y)
                .into_iter()
                .map(|tau| tau.curried_over(&premise))
                .collect()
        }
        Formula::Forall(_, rho, body) => mr_types(body)
            .into_iter()
            .map(|tau| FiniteType::arrow(rho.clone(), tau))
            .collect(),
        Formula::Exists(_, rho, body) => [vec![rho.clone()], mr_types(body)].concat(),
    }
}

pub fn mr_translate(a: &Formula) -> MrResult {
    let mut supply = NameSupply::new(a.all_names());
    let (vars, formula) = translate(a, &mut supply);
    MrResult {
        realizers: VarTuple::new(vars),
        formula,
        source: a.clone(),
    }
}

type Vars = Vec<(String, FiniteType)>;

fn nat_eq_zero(z: &str) -> Formula {
    Formula::eq(Term::nat_var(z), Term::Zero)
}

/// Replaces every realizer `x_i : τ_i` by `X_i args` where
/// `X_i : σ1 -> ... -> σk -> τ_i` and `args : σ1 ... σk`.
fn lift(
    vars: Vars,
    args: &[(String, FiniteType)],
    supply: &mut NameSupply,
) -> (Vars, Substitution) {
    let mut lifted = Vec::with_capacity(vars.len());
    let mut map = Substitution::new();
    if args.is_empty() {
        return (vars, map);
    }
    let arg_types: Vec<FiniteType> = args.iter().map(|(_, t)| t.clone()).collect();
    let arg_terms: Vec<Term> = args
        .iter()
        .map(|(n, t)| Term::var(n.clone(), t.clone()))
        .collect();
    for (name, ty) in vars {
        supply.release(&name);
        let new = supply.fresh_lifted(&name);
        let new_ty = ty.curried_over(&arg_types);
        map.insert(
            name,
            Term::apps(Term::var(new.clone(), new_ty.clone()), arg_terms.clone()),
        );
        lifted.push((new, new_ty));
    }
    (lifted, map)
}

fn translate(a: &Formula, supply: &mut NameSupply) -> (Vars, Formula) {
    match a {
        Formula::Bot | Formula::Eq(..) => (vec![], a.clone()),
        Formula::And(l, r) => {
            let (x, l) = translate(l, supply);
            let (y, r) = translate(r, supply);
            ([x, y].concat(), Formula::and(l, r))
        }
        Formula::Or(l, r) => {
            let z = supply.fresh_like("z");
            let (x, l) = translate(l, supply);
            let (y, r) = translate(r, supply);
            let f = Formula::and(
                Formula::imp(nat_eq_zero(&z), l),
                Formula::imp(Formula::not(nat_eq_zero(&z)), r),
            );
            ([vec![(z, FiniteType::Nat)], x, y].concat(), f)
        }
        Formula::Imp(l, r) => {
            let (y, l) = translate(l, supply);
            let (x, r) = translate(r, supply);
            let (x, map) = lift(x, &y, supply);
            let body = Formula::imp(l, subst_formula(&r, &map));
            (x, Formula::forall_block(&y, body))
        }
        Formula::Forall(n, rho, body) => {
            let (x, body) = translate(body, supply);
            let bound = [(n.clone(), rho.clone())];
            let (x, map) = lift(x, &bound, supply);
            (
                x,
                Formula::forall(n.clone(), rho.clone(), subst_formula(&body, &map)),
            )
        }
        Formula::Exists(n, rho, body) => {
            let z = supply.fresh_like("z");
            let map = Substitution::from([(n.clone(), Term::var(z.clone(), rho.clone()))]);
            let (x, body) = translate(&subst_formula(body, &map), supply);
            ([vec![(z, rho.clone())], x].concat(), body)
        }
    }
}

/// `t mr A`: the translation with each realizer replaced by the matching
/// term. β-redexes created by the replacement are contracted.
pub fn mr_apply_terms(a: &Formula, terms: &[Term]) -> Result<Formula> {
    let r = mr_translate(a);
    if r.realizers.len() != terms.len() {
        return Err(Error::ArityMismatch {
            expected: r.realizers.len(),
            actual: terms.len(),
        });
    }
    let mut map = Substitution::new();
    for ((name, ty), t) in r.realizers.vars().iter().zip(terms) {
        let actual = t.type_of()?;
        if &actual != ty {
            return Err(Error::mismatch(t, ty, actual));
        }
        map.insert(name.clone(), t.clone());
    }
    Ok(subst_formula_beta(&r.formula, &map))
}

/// `(t mr A) -> A` for `A` in Γ1.
pub fn gamma1_soundness_formula(a: &Formula, terms: &[Term], mode: Mode) -> Result<Formula> {
    let report = classify(a, mode);
    if let Some(w) = report.witnesses.get(&Flag::Gamma1) {
        return Err(Error::NotGamma1 {
            subformula: w.subformula.to_string(),
        });
    }
    Ok(Formula::imp(mr_apply_terms(a, terms)?, a.clone()))
}
