use std::collections::BTreeSet;

use super::term::{infer_type, Name, Term};
use super::types::FiniteType;
use crate::error::{Error, Result};

/// Formulas. Equations are between terms of type `0` only; `¬A` is `A -> ⊥`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Eq(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Name, FiniteType, Box<Formula>),
    Exists(Name, FiniteType, Box<Formula>),
}

impl Formula {
    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    pub fn forall(name: impl Into<Name>, ty: FiniteType, body: Formula) -> Formula {
        Formula::Forall(name.into(), ty, Box::new(body))
    }

    pub fn exists(name: impl Into<Name>, ty: FiniteType, body: Formula) -> Formula {
        Formula::Exists(name.into(), ty, Box::new(body))
    }

    /// Wraps `body` in `∀v1 ... ∀vk`, outermost first.
    pub fn forall_block(vars: &[(Name, FiniteType)], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, (n, ty)| {
            Formula::forall(n.clone(), ty.clone(), acc)
        })
    }

    pub fn exists_block(vars: &[(Name, FiniteType)], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, (n, ty)| {
            Formula::exists(n.clone(), ty.clone(), acc)
        })
    }

    /// ⊥ and type-0 equations.
    pub fn is_prime(&self) -> bool {
        matches!(self, Formula::Bot | Formula::Eq(..))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Bot | Formula::Eq(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn has_disjunction(&self) -> bool {
        match self {
            Formula::Bot | Formula::Eq(..) => false,
            Formula::Or(..) => true,
            Formula::And(a, b) | Formula::Imp(a, b) => a.has_disjunction() || b.has_disjunction(),
            Formula::Forall(_, _, a) | Formula::Exists(_, _, a) => a.has_disjunction(),
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Bot | Formula::Eq(..) => vec![],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![a, b],
            Formula::Forall(_, _, a) | Formula::Exists(_, _, a) => vec![a],
        }
    }

    /// Follows a child-index path from this node.
    pub fn at_path(&self, path: &[usize]) -> Option<&Formula> {
        path.iter()
            .try_fold(self, |f, &i| f.children().get(i).copied())
    }

    pub fn free_vars(&self) -> BTreeSet<(Name, FiniteType)> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        self.free_vars().into_iter().map(|(n, _)| n).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free<'a>(
        &'a self,
        bound: &mut Vec<&'a str>,
        out: &mut BTreeSet<(Name, FiniteType)>,
    ) {
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(n, _, a) | Formula::Exists(n, _, a) => {
                bound.push(n);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every identifier in the formula, bound or free, including λ-binders.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) => {
                l.collect_names(out);
                r.collect_names(out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Forall(n, _, a) | Formula::Exists(n, _, a) => {
                out.insert(n.clone());
                a.collect_names(out);
            }
        }
    }

    /// Visits every term occurring in an equation.
    pub fn for_each_term<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) => {
                f(l);
                f(r);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.for_each_term(f);
                b.for_each_term(f);
            }
            Formula::Forall(_, _, a) | Formula::Exists(_, _, a) => a.for_each_term(f),
        }
    }

    /// Rebuilds the formula with `f` applied to every equation side.
    /// `f` must not capture variables bound by the formula.
    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Eq(l, r) => Formula::Eq(f(l), f(r)),
            Formula::And(a, b) => Formula::and(a.map_terms(f), b.map_terms(f)),
            Formula::Or(a, b) => Formula::or(a.map_terms(f), b.map_terms(f)),
            Formula::Imp(a, b) => Formula::imp(a.map_terms(f), b.map_terms(f)),
            Formula::Forall(n, ty, a) => Formula::forall(n.clone(), ty.clone(), a.map_terms(f)),
            Formula::Exists(n, ty, a) => Formula::exists(n.clone(), ty.clone(), a.map_terms(f)),
        }
    }

    /// Types of all binders (formula and λ) and variable occurrences.
    pub fn variable_types(&self) -> Vec<FiniteType> {
        let mut out = Vec::new();
        self.collect_variable_types(&mut out);
        out
    }

    fn collect_variable_types(&self, out: &mut Vec<FiniteType>) {
        match self {
            Formula::Forall(_, ty, a) | Formula::Exists(_, ty, a) => {
                out.push(ty.clone());
                a.collect_variable_types(out);
            }
            Formula::Eq(l, r) => {
                l.variable_types(out);
                r.variable_types(out);
            }
            _ => {
                for c in self.children() {
                    c.collect_variable_types(out);
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(l, r) => 1 + l.size() + r.size(),
            _ => 1 + self.children().iter().map(|c| c.size()).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Strips a maximal leading block of `∀` (or `∃` when `existential`).
    pub fn strip_block(&self, existential: bool) -> (Vec<(Name, FiniteType)>, &Formula) {
        let mut vars = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Formula::Forall(n, ty, body) if !existential => {
                    vars.push((n.clone(), ty.clone()));
                    cur = body;
                }
                Formula::Exists(n, ty, body) if existential => {
                    vars.push((n.clone(), ty.clone()));
                    cur = body;
                }
                _ => return (vars, cur),
            }
        }
    }
}

/// Type-checks a formula in `ctx`: equation sides must have type `0` and
/// every free variable must be declared.
pub fn check_formula(a: &Formula, ctx: &[(Name, FiniteType)]) -> Result<()> {
    let mut ctx = ctx.to_vec();
    check_in(a, &mut ctx)
}

fn check_in(a: &Formula, ctx: &mut Vec<(Name, FiniteType)>) -> Result<()> {
    match a {
        Formula::Bot => Ok(()),
        Formula::Eq(l, r) => {
            for side in [l, r] {
                let ty = infer_type(side, ctx)?;
                if !ty.is_nat() {
                    return Err(Error::mismatch(side, FiniteType::Nat, ty));
                }
            }
            Ok(())
        }
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Imp(x, y) => {
            check_in(x, ctx)?;
            check_in(y, ctx)
        }
        Formula::Forall(n, ty, body) | Formula::Exists(n, ty, body) => {
            ctx.push((n.clone(), ty.clone()));
            let r = check_in(body, ctx);
            ctx.pop();
            r
        }
    }
}

/// Type-checks a formula against the annotations on its own free variables.
pub fn check_formula_closed_over_free(a: &Formula) -> Result<()> {
    let ctx: Vec<_> = a.free_vars().into_iter().collect();
    check_formula(a, &ctx)
}

/// Removes every `∀x` whose variable does not occur free in its body.
pub fn erase_dummy_foralls(a: &Formula) -> Formula {
    match a {
        Formula::Bot | Formula::Eq(..) => a.clone(),
        Formula::And(x, y) => Formula::and(erase_dummy_foralls(x), erase_dummy_foralls(y)),
        Formula::Or(x, y) => Formula::or(erase_dummy_foralls(x), erase_dummy_foralls(y)),
        Formula::Imp(x, y) => Formula::imp(erase_dummy_foralls(x), erase_dummy_foralls(y)),
        Formula::Exists(n, ty, body) => {
            Formula::exists(n.clone(), ty.clone(), erase_dummy_foralls(body))
        }
        Formula::Forall(n, ty, body) => {
            let body = erase_dummy_foralls(body);
            if body.free_names().contains(n) {
                Formula::forall(n.clone(), ty.clone(), body)
            } else {
                body
            }
        }
    }
}
