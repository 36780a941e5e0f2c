use std::collections::{BTreeMap, BTreeSet};

use super::formula::Formula;
use super::names::NameSupply;
use super::term::{Name, Term};
use super::types::FiniteType;
use crate::error::{Error, Result};

/// A simultaneous substitution of terms for variable names.
pub type Substitution = BTreeMap<Name, Term>;

type TermSubst = fn(&Term, &Substitution) -> Term;

/// Restricts `map` to the variables substitution can reach under a binder of
/// `bound` over `body`, and renames the binder when it would capture a free
/// variable of a replacement. Returns `None` when nothing needs substituting.
fn enter_binder(
    bound: &str,
    ty: &FiniteType,
    body_free: &BTreeSet<Name>,
    map: &Substitution,
) -> Option<(Name, Substitution)> {
    let mut inner: Substitution = map
        .iter()
        .filter(|(k, _)| k.as_str() != bound && body_free.contains(*k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if inner.is_empty() {
        return None;
    }
    let repl_free: BTreeSet<Name> = inner.values().flat_map(|t| t.free_names()).collect();
    if !repl_free.contains(bound) {
        return Some((bound.to_string(), inner));
    }
    let mut supply = NameSupply::new(
        repl_free
            .iter()
            .chain(body_free.iter())
            .chain(inner.keys())
            .cloned(),
    );
    let renamed = supply.fresh_like(bound);
    inner.insert(bound.to_string(), Term::var(renamed.clone(), ty.clone()));
    Some((renamed, inner))
}

/// Simultaneous capture-avoiding substitution in a term.
pub fn subst_term(t: &Term, map: &Substitution) -> Term {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        Term::Var(n, _) => map.get(n).cloned().unwrap_or_else(|| t.clone()),
        Term::Zero | Term::Proj(..) | Term::Subst(..) | Term::Rec(_) | Term::Prim(_) => t.clone(),
        Term::Succ(_) => {
            let (k, base) = t.peel_succ();
            Term::succ_n(k, subst_term(base, map))
        }
        Term::Add(a, b) => Term::add(subst_term(a, map), subst_term(b, map)),
        Term::Mul(a, b) => Term::mul(subst_term(a, map), subst_term(b, map)),
        Term::App(a, b) => Term::app(subst_term(a, map), subst_term(b, map)),
        Term::Lam(x, ty, body) => match enter_binder(x, ty, &body.free_names(), map) {
            None => t.clone(),
            Some((x, inner)) => Term::lam(x, ty.clone(), subst_term(body, &inner)),
        },
    }
}

/// Substitution that also contracts the β-redexes it creates: wherever a
/// substituted λ-term lands in head position, it is applied to its
/// arguments. Redexes already present in `t` or in the replacements are
/// left alone.
pub fn subst_term_beta(t: &Term, map: &Substitution) -> Term {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        Term::App(..) => {
            let (head, args) = t.spine();
            let args: Vec<Term> = args.into_iter().map(|a| subst_term_beta(a, map)).collect();
            match head {
                Term::Var(n, _) if map.contains_key(n) => beta_apply(map[n].clone(), args),
                _ => Term::apps(subst_term_beta(head, map), args),
            }
        }
        Term::Var(n, _) => map.get(n).cloned().unwrap_or_else(|| t.clone()),
        Term::Zero | Term::Proj(..) | Term::Subst(..) | Term::Rec(_) | Term::Prim(_) => t.clone(),
        Term::Succ(_) => {
            let (k, base) = t.peel_succ();
            Term::succ_n(k, subst_term_beta(base, map))
        }
        Term::Add(a, b) => Term::add(subst_term_beta(a, map), subst_term_beta(b, map)),
        Term::Mul(a, b) => Term::mul(subst_term_beta(a, map), subst_term_beta(b, map)),
        Term::Lam(x, ty, body) => match enter_binder(x, ty, &body.free_names(), map) {
            None => t.clone(),
            Some((x, inner)) => Term::lam(x, ty.clone(), subst_term_beta(body, &inner)),
        },
    }
}

fn beta_apply(mut head: Term, args: Vec<Term>) -> Term {
    let mut args = args.into_iter();
    while let Some(arg) = args.next() {
        match head {
            Term::Lam(x, _, body) => {
                head = subst_term_beta(&body, &Substitution::from([(x, arg)]));
            }
            other => return Term::apps(Term::app(other, arg), args),
        }
    }
    head
}

fn subst_formula_with(a: &Formula, map: &Substitution, on_term: TermSubst) -> Formula {
    if map.is_empty() {
        return a.clone();
    }
    let rec = |f: &Formula| subst_formula_with(f, map, on_term);
    match a {
        Formula::Bot => Formula::Bot,
        Formula::Eq(l, r) => Formula::Eq(on_term(l, map), on_term(r, map)),
        Formula::And(x, y) => Formula::and(rec(x), rec(y)),
        Formula::Or(x, y) => Formula::or(rec(x), rec(y)),
        Formula::Imp(x, y) => Formula::imp(rec(x), rec(y)),
        Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
            match enter_binder(x, ty, &body.free_names(), map) {
                None => a.clone(),
                Some((x, inner)) => {
                    let body = subst_formula_with(body, &inner, on_term);
                    if matches!(a, Formula::Forall(..)) {
                        Formula::forall(x, ty.clone(), body)
                    } else {
                        Formula::exists(x, ty.clone(), body)
                    }
                }
            }
        }
    }
}

/// Simultaneous capture-avoiding substitution in a formula.
pub fn subst_formula(a: &Formula, map: &Substitution) -> Formula {
    subst_formula_with(a, map, subst_term)
}

/// [`subst_formula`] with β-contraction of the redexes the substitution creates.
pub fn subst_formula_beta(a: &Formula, map: &Substitution) -> Formula {
    subst_formula_with(a, map, subst_term_beta)
}

/// Type of the free occurrences of `var` in a host, if any.
fn free_type(free: BTreeSet<(Name, FiniteType)>, var: &str) -> Option<FiniteType> {
    free.into_iter().find(|(n, _)| n == var).map(|(_, t)| t)
}

/// Common operations on terms and formulas.
pub trait Syntax: Sized {
    fn free_vars(&self) -> BTreeSet<(Name, FiniteType)>;

    fn subst_all(&self, map: &Substitution) -> Self;

    /// Equality up to renaming of bound variables.
    fn alpha_eq(&self, other: &Self) -> bool;

    /// Capture-avoiding `self[var := replacement]`. The replacement must have
    /// the type `var` is used at.
    fn substitute(&self, var: &str, replacement: &Term) -> Result<Self> {
        if let Some(expected) = free_type(self.free_vars(), var) {
            let actual = replacement.type_of()?;
            if actual != expected {
                return Err(Error::mismatch(replacement, expected, actual));
            }
        }
        Ok(self.subst_all(&Substitution::from([(
            var.to_string(),
            replacement.clone(),
        )])))
    }
}

impl Syntax for Term {
    fn free_vars(&self) -> BTreeSet<(Name, FiniteType)> {
        Term::free_vars(self)
    }

    fn subst_all(&self, map: &Substitution) -> Term {
        subst_term(self, map)
    }

    fn alpha_eq(&self, other: &Term) -> bool {
        super::alpha::terms_alpha_eq(self, other)
    }
}

impl Syntax for Formula {
    fn free_vars(&self) -> BTreeSet<(Name, FiniteType)> {
        Formula::free_vars(self)
    }

    fn subst_all(&self, map: &Substitution) -> Formula {
        subst_formula(self, map)
    }

    fn alpha_eq(&self, other: &Formula) -> bool {
        super::alpha::formulas_alpha_eq(self, other)
    }
}
