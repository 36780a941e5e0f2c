//! Gödel's Dialectica interpretation `A^D = ?x. !y. A_D`.
//!
//! With `A^D = ?x !y A_D` and `B^D = ?u !v B_D`:
//!
//! ```text
//! P^D          = P                                            (P prime)
//! (A & B)^D    = ?x ?u !y !v (A_D & B_D)
//! (A | B)^D    = ?z ?x ?u !y !v ((z = 0 & A_D) | (z = 1 & B_D))
//! (!z A(z))^D  = ?X !z !y A_D(X z, y, z)
//! (?z A(z))^D  = ?z ?x !y A_D(x, y, z)
//! (A -> B)^D   = ?U ?Y !x !v (A_D(x, Y x v) -> B_D(U x, v))
//! ```
//!
//! Quantifier blocks are handled one binder at a time, which gives the
//! same tuples as treating the block at once.

use crate::syntax::{subst_formula, FiniteType, Formula, NameSupply, Substitution, Term, VarTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DResult {
    pub exists_tuple: VarTuple,
    pub forall_tuple: VarTuple,
    pub matrix: Formula,
    pub source: Formula,
}

impl DResult {
    /// `?x. !y. A_D` as a single formula.
    pub fn to_formula(&self) -> Formula {
        Formula::exists_block(
            self.exists_tuple.vars(),
            Formula::forall_block(self.forall_tuple.vars(), self.matrix.clone()),
        )
    }
}

/// Types of the ∃-tuple and the ∀-tuple.
pub fn d_types(a: &Formula) -> (Vec<FiniteType>, Vec<FiniteType>) {
    match a {
        Formula::Bot | Formula::Eq(..) => (vec![], vec![]),
        Formula::And(l, r) => {
            let ((x, y), (u, v)) = (d_types(l), d_types(r));
            ([x, u].concat(), [y, v].concat())
        }
        Formula::Or(l, r) => {
            let ((x, y), (u, v)) = (d_types(l), d_types(r));
            ([vec![FiniteType::Nat], x, u].concat(), [y, v].concat())
        }
        Formula::Forall(_, rho, body) => {
            let (x, y) = d_types(body);
            let x = x
                .into_iter()
                .map(|xi| FiniteType::arrow(rho.clone(), xi))
                .collect();
            (x, [vec![rho.clone()], y].concat())
        }
        Formula::Exists(_, rho, body) => {
            let (x, y) = d_types(body);
            ([vec![rho.clone()], x].concat(), y)
        }
        Formula::Imp(l, r) => {
            let ((x, y), (u, v)) = (d_types(l), d_types(r));
            let xv = [x.clone(), v.clone()].concat();
            let us = u.into_iter().map(|uj| uj.curried_over(&x));
            let ys = y.into_iter().map(|yi| yi.curried_over(&xv));
            (us.chain(ys).collect(), [x, v].concat())
        }
    }
}

pub fn d_translate(a: &Formula) -> DResult {
    let mut supply = NameSupply::new(a.free_names());
    let t = translate(a, &mut supply);
    DResult {
        exists_tuple: VarTuple::new(t.exists),
        forall_tuple: VarTuple::new(t.forall),
        matrix: t.matrix,
        source: a.clone(),
    }
}

type Vars = Vec<(String, FiniteType)>;

struct Translated {
    exists: Vars,
    forall: Vars,
    matrix: Formula,
}

fn var_terms(vars: &[(String, FiniteType)]) -> Vec<Term> {
    vars.iter()
        .map(|(n, t)| Term::var(n.clone(), t.clone()))
        .collect()
}

/// Turns each `w : τ` into `W : σ1 -> ... -> σk -> τ` applied to `args`.
fn lift(
    vars: Vars,
    args: &[(String, FiniteType)],
    supply: &mut NameSupply,
    map: &mut Substitution,
) -> Vars {
    if args.is_empty() {
        return vars;
    }
    let arg_types: Vec<FiniteType> = args.iter().map(|(_, t)| t.clone()).collect();
    vars.into_iter()
        .map(|(name, ty)| {
            supply.release(&name);
            let new = supply.fresh_lifted(&name);
            let new_ty = ty.curried_over(&arg_types);
            map.insert(
                name,
                Term::apps(Term::var(new.clone(), new_ty.clone()), var_terms(args)),
            );
            (new, new_ty)
        })
        .collect()
}

/// Claims a tuple name for a binder, renaming it in the body if needed.
fn claim(
    name: &str,
    ty: &FiniteType,
    body: &Formula,
    supply: &mut NameSupply,
) -> (String, Formula) {
    let fresh = supply.fresh_like(name);
    if fresh == name {
        return (fresh, body.clone());
    }
    let map = Substitution::from([(name.to_string(), Term::var(fresh.clone(), ty.clone()))]);
    (fresh, subst_formula(body, &map))
}

fn translate(a: &Formula, supply: &mut NameSupply) -> Translated {
    match a {
        Formula::Bot | Formula::Eq(..) => Translated {
            exists: vec![],
            forall: vec![],
            matrix: a.clone(),
        },
        Formula::And(l, r) => {
            let (l, r) = (translate(l, supply), translate(r, supply));
            Translated {
                exists: [l.exists, r.exists].concat(),
                forall: [l.forall, r.forall].concat(),
                matrix: Formula::and(l.matrix, r.matrix),
            }
        }
        Formula::Or(l, r) => {
            let z = supply.fresh_like("z");
            let (l, r) = (translate(l, supply), translate(r, supply));
            let tag = |n| Formula::eq(Term::nat_var(z.clone()), Term::numeral(n));
            let matrix = Formula::or(
                Formula::and(tag(0), l.matrix),
                Formula::and(tag(1), r.matrix),
            );
            Translated {
                exists: [vec![(z.clone(), FiniteType::Nat)], l.exists, r.exists].concat(),
                forall: [l.forall, r.forall].concat(),
                matrix,
            }
        }
        Formula::Forall(n, rho, body) => {
            let (z, body) = claim(n, rho, body, supply);
            let inner = translate(&body, supply);
            let mut map = Substitution::new();
            let exists = lift(inner.exists, &[(z.clone(), rho.clone())], supply, &mut map);
            Translated {
                exists,
                forall: [vec![(z, rho.clone())], inner.forall].concat(),
                matrix: subst_formula(&inner.matrix, &map),
            }
        }
        Formula::Exists(n, rho, body) => {
            let (z, body) = claim(n, rho, body, supply);
            let inner = translate(&body, supply);
            Translated {
                exists: [vec![(z, rho.clone())], inner.exists].concat(),
                forall: inner.forall,
                matrix: inner.matrix,
            }
        }
        Formula::Imp(l, r) => {
            let (l, r) = (translate(l, supply), translate(r, supply));
            let (x, v) = (l.exists, r.forall);
            let xv = [x.clone(), v.clone()].concat();
            let mut u_map = Substitution::new();
            let us = lift(r.exists, &x, supply, &mut u_map);
            let mut y_map = Substitution::new();
            let ys = lift(l.forall, &xv, supply, &mut y_map);
            let matrix = Formula::imp(
                subst_formula(&l.matrix, &y_map),
                subst_formula(&r.matrix, &u_map),
            );
            Translated {
                exists: [us, ys].concat(),
                forall: xv,
                matrix,
            }
        }
    }
}
