//! Bracket abstraction: eliminates λ in favour of the projection (K) and
//! substitution (S) combinators.

use super::term::{Prim, Term};
use super::types::FiniteType;
use crate::error::Result;

/// Rewrites `t` into an equivalent λ-free term of the same type.
pub fn to_combinators(t: &Term) -> Result<Term> {
    t.type_of()?;
    Ok(compile(t))
}

/// `Σ_{δ,δ->δ,δ} Π_{δ,δ->δ} Π_{δ,δ} : δ -> δ`
pub fn identity_combinator(delta: &FiniteType) -> Term {
    let dd = FiniteType::arrow(delta.clone(), delta.clone());
    Term::apps(
        Term::Subst(delta.clone(), dd.clone(), delta.clone()),
        [
            Term::Proj(delta.clone(), dd),
            Term::Proj(delta.clone(), delta.clone()),
        ],
    )
}

fn compile(t: &Term) -> Term {
    match t {
        Term::Lam(x, ty, body) => abstract_var(x, ty, &compile(body)),
        Term::Succ(_) => {
            let (k, base) = t.peel_succ();
            Term::succ_n(k, compile(base))
        }
        Term::Add(a, b) => Term::add(compile(a), compile(b)),
        Term::Mul(a, b) => Term::mul(compile(a), compile(b)),
        Term::App(a, b) => Term::app(compile(a), compile(b)),
        _ => t.clone(),
    }
}

fn type_of(t: &Term) -> FiniteType {
    t.type_of().expect("subterm of a well-typed term")
}

fn occurs_free(x: &str, t: &Term) -> bool {
    t.free_names().contains(x)
}

/// `[x:δ] m` for λ-free `m`.
fn abstract_var(x: &str, delta: &FiniteType, m: &Term) -> Term {
    if !occurs_free(x, m) {
        return Term::app(Term::Proj(type_of(m), delta.clone()), m.clone());
    }
    match m {
        Term::Var(..) => identity_combinator(delta),
        Term::Succ(a) => abstract_var(x, delta, &Term::app(Term::Prim(Prim::Succ), (**a).clone())),
        Term::Add(a, b) => abstract_var(
            x,
            delta,
            &Term::apps(Term::Prim(Prim::Add), [(**a).clone(), (**b).clone()]),
        ),
        Term::Mul(a, b) => abstract_var(
            x,
            delta,
            &Term::apps(Term::Prim(Prim::Mul), [(**a).clone(), (**b).clone()]),
        ),
        Term::App(p, q) => {
            if matches!(q.as_ref(), Term::Var(n, _) if n == x) && !occurs_free(x, p) {
                return (**p).clone();
            }
            let rho = type_of(q);
            let tau = type_of(m);
            Term::apps(
                Term::Subst(delta.clone(), rho, tau),
                [abstract_var(x, delta, p), abstract_var(x, delta, q)],
            )
        }
        Term::Lam(..) => unreachable!("compile removes inner abstractions first"),
        Term::Zero | Term::Proj(..) | Term::Subst(..) | Term::Rec(_) | Term::Prim(_) => {
            unreachable!("constants have no free variables")
        }
    }
}
