//! Alpha-equivalence by comparing binder depths of bound occurrences.

use super::formula::Formula;
use super::term::Term;

struct Envs<'a> {
    left: Vec<&'a str>,
    right: Vec<&'a str>,
}

impl<'a> Envs<'a> {
    fn same_var(&self, a: &str, b: &str) -> bool {
        let ia = self.left.iter().rposition(|n| *n == a);
        let ib = self.right.iter().rposition(|n| *n == b);
        match (ia, ib) {
            (Some(i), Some(j)) => i == j,
            (None, None) => a == b,
            _ => false,
        }
    }

    fn under<R>(&mut self, a: &'a str, b: &'a str, f: impl FnOnce(&mut Self) -> R) -> R {
        self.left.push(a);
        self.right.push(b);
        let r = f(self);
        self.left.pop();
        self.right.pop();
        r
    }
}

fn term_eq<'a>(a: &'a Term, b: &'a Term, env: &mut Envs<'a>) -> bool {
    match (a, b) {
        (Term::Var(x, tx), Term::Var(y, ty)) => tx == ty && env.same_var(x, y),
        (Term::Zero, Term::Zero) => true,
        (Term::Succ(x), Term::Succ(y)) => term_eq(x, y, env),
        (Term::Add(a1, a2), Term::Add(b1, b2))
        | (Term::Mul(a1, a2), Term::Mul(b1, b2))
        | (Term::App(a1, a2), Term::App(b1, b2)) => term_eq(a1, b1, env) && term_eq(a2, b2, env),
        (Term::Proj(..), Term::Proj(..))
        | (Term::Subst(..), Term::Subst(..))
        | (Term::Rec(_), Term::Rec(_))
        | (Term::Prim(_), Term::Prim(_)) => a == b,
        (Term::Lam(x, tx, bx), Term::Lam(y, ty, by)) => {
            tx == ty && env.under(x, y, |env| term_eq(bx, by, env))
        }
        _ => false,
    }
}

fn formula_eq<'a>(a: &'a Formula, b: &'a Formula, env: &mut Envs<'a>) -> bool {
    match (a, b) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Eq(l1, r1), Formula::Eq(l2, r2)) => term_eq(l1, l2, env) && term_eq(r1, r2, env),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            formula_eq(a1, b1, env) && formula_eq(a2, b2, env)
        }
        (Formula::Forall(x, tx, bx), Formula::Forall(y, ty, by))
        | (Formula::Exists(x, tx, bx), Formula::Exists(y, ty, by)) => {
            tx == ty && env.under(x, y, |env| formula_eq(bx, by, env))
        }
        _ => false,
    }
}

pub fn terms_alpha_eq(a: &Term, b: &Term) -> bool {
    term_eq(
        a,
        b,
        &mut Envs {
            left: vec![],
            right: vec![],
        },
    )
}

pub fn formulas_alpha_eq(a: &Formula, b: &Formula) -> bool {
    formula_eq(
        a,
        b,
        &mut Envs {
            left: vec![],
            right: vec![],
        },
    )
}
