use std::collections::BTreeSet;

use super::types::FiniteType;
use crate::error::{Error, Result};

pub type Name = String;

/// Curried arithmetic constants, used where successor, addition or
/// multiplication must appear unapplied (e.g. after bracket abstraction).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prim {
    Succ,
    Add,
    Mul,
}

impl Prim {
    pub fn arity(self) -> usize {
        match self {
            Prim::Succ => 1,
            Prim::Add | Prim::Mul => 2,
        }
    }

    pub fn ty(self) -> FiniteType {
        let nat = FiniteType::Nat;
        match self {
            Prim::Succ => FiniteType::one(),
            Prim::Add | Prim::Mul => FiniteType::arrow(nat, FiniteType::one()),
        }
    }
}

/// Terms of the finite-type language.
///
/// Variables carry their type; binders carry the type of the bound variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Name, FiniteType),
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    /// Π_{ρ,τ} : ρ -> τ -> ρ
    Proj(FiniteType, FiniteType),
    /// Σ_{δ,ρ,τ} : (δ -> ρ -> τ) -> (δ -> ρ) -> δ -> τ
    Subst(FiniteType, FiniteType, FiniteType),
    /// R_σ : 0 -> σ -> (0 -> σ -> σ) -> σ
    Rec(FiniteType),
    Prim(Prim),
    App(Box<Term>, Box<Term>),
    Lam(Name, FiniteType, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<Name>, ty: FiniteType) -> Term {
        Term::Var(name.into(), ty)
    }

    pub fn nat_var(name: impl Into<Name>) -> Term {
        Term::Var(name.into(), FiniteType::Nat)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application `head a1 ... an`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn lam(name: impl Into<Name>, ty: FiniteType, body: Term) -> Term {
        Term::Lam(name.into(), ty, Box::new(body))
    }

    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    /// Reads back a `S ... S 0` chain.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    cur = inner;
                }
                _ => return None,
            }
        }
    }

    /// Strips a chain of successors: `S^k t` gives `(k, t)`.
    pub fn peel_succ(&self) -> (u64, &Term) {
        let mut k = 0;
        let mut cur = self;
        while let Term::Succ(inner) = cur {
            k += 1;
            cur = inner;
        }
        (k, cur)
    }

    /// `S^k t`.
    pub fn succ_n(k: u64, t: Term) -> Term {
        (0..k).fold(t, |t, _| Term::succ(t))
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Infers the type, trusting the annotations on free variables.
    pub fn type_of(&self) -> Result<FiniteType> {
        infer(self, &mut Vec::new(), false)
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<(Name, FiniteType)> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        self.free_vars().into_iter().map(|(n, _)| n).collect()
    }

    pub(crate) fn collect_free<'a>(
        &'a self,
        bound: &mut Vec<&'a str>,
        out: &mut BTreeSet<(Name, FiniteType)>,
    ) {
        match self {
            Term::Var(n, ty) => {
                if !bound.contains(&n.as_str()) {
                    out.insert((n.clone(), ty.clone()));
                }
            }
            Term::Lam(n, _, body) => {
                bound.push(n);
                body.collect_free(bound, out);
                bound.pop();
            }
            _ => self.for_each_child(|c| c.collect_free(bound, out)),
        }
    }

    /// Every identifier occurring in the term, bound or free.
    pub fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(n, _) => {
                out.insert(n.clone());
            }
            Term::Lam(n, _, body) => {
                out.insert(n.clone());
                body.collect_names(out);
            }
            _ => self.for_each_child(|c| c.collect_names(out)),
        }
    }

    /// Visits immediate subterms left to right.
    pub fn for_each_child<'a>(&'a self, mut f: impl FnMut(&'a Term)) {
        match self {
            Term::Succ(_) => f(self.peel_succ().1),
            Term::Add(a, b) | Term::Mul(a, b) | Term::App(a, b) => {
                f(a);
                f(b);
            }
            Term::Lam(_, _, body) => f(body),
            Term::Var(..)
            | Term::Zero
            | Term::Proj(..)
            | Term::Subst(..)
            | Term::Rec(_)
            | Term::Prim(_) => {}
        }
    }

    /// True if the term contains a λ-abstraction.
    pub fn has_lambda(&self) -> bool {
        match self {
            Term::Lam(..) => true,
            _ => {
                let mut found = false;
                self.for_each_child(|c| found |= c.has_lambda());
                found
            }
        }
    }

    /// Types of all recursor constants occurring in the term.
    pub fn recursor_types(&self, out: &mut Vec<FiniteType>) {
        match self {
            Term::Rec(sigma) => out.push(sigma.clone()),
            _ => self.for_each_child(|c| c.recursor_types(out)),
        }
    }

    /// Types of all variables, bound or free.
    pub fn variable_types(&self, out: &mut Vec<FiniteType>) {
        match self {
            Term::Var(_, ty) => out.push(ty.clone()),
            Term::Lam(_, ty, body) => {
                out.push(ty.clone());
                body.variable_types(out);
            }
            _ => self.for_each_child(|c| c.variable_types(out)),
        }
    }

    pub fn size(&self) -> usize {
        if let Term::Succ(_) = self {
            let (k, base) = self.peel_succ();
            return k as usize + base.size();
        }
        let mut n = 1;
        self.for_each_child(|c| n += c.size());
        n
    }
}

/// Type of a term constant (combinator, recursor, or curried primitive).
pub fn constant_type(t: &Term) -> Option<FiniteType> {
    use FiniteType as T;
    match t {
        Term::Proj(rho, tau) => Some(T::arrow(rho.clone(), T::arrow(tau.clone(), rho.clone()))),
        Term::Subst(delta, rho, tau) => {
            let x = T::arrow(delta.clone(), T::arrow(rho.clone(), tau.clone()));
            let y = T::arrow(delta.clone(), rho.clone());
            let z = T::arrow(delta.clone(), tau.clone());
            Some(T::arrow(x, T::arrow(y, z)))
        }
        Term::Rec(sigma) => {
            let step = T::arrow(T::Nat, T::arrow(sigma.clone(), sigma.clone()));
            Some(T::arrow(
                T::Nat,
                T::arrow(sigma.clone(), T::arrow(step, sigma.clone())),
            ))
        }
        Term::Prim(p) => Some(p.ty()),
        _ => None,
    }
}

/// Infers the type of `t` in context `ctx`; every free variable must be
/// declared in `ctx` with a type matching its annotation.
pub fn infer_type(t: &Term, ctx: &[(Name, FiniteType)]) -> Result<FiniteType> {
    infer(t, &mut ctx.to_vec(), true)
}

fn infer(t: &Term, ctx: &mut Vec<(Name, FiniteType)>, require_decl: bool) -> Result<FiniteType> {
    let expect_nat = |sub: &Term, ctx: &mut Vec<(Name, FiniteType)>| -> Result<()> {
        let ty = infer(sub, ctx, require_decl)?;
        if ty.is_nat() {
            Ok(())
        } else {
            Err(Error::mismatch(sub, FiniteType::Nat, ty))
        }
    };
    match t {
        Term::Var(name, ty) => match ctx.iter().rev().find(|(n, _)| n == name) {
            Some((_, declared)) if declared != ty => Err(Error::mismatch(t, declared, ty)),
            Some(_) => Ok(ty.clone()),
            None if require_decl => Err(Error::UnboundVariable { name: name.clone() }),
            None => Ok(ty.clone()),
        },
        Term::Zero => Ok(FiniteType::Nat),
        Term::Succ(_) => {
            expect_nat(t.peel_succ().1, ctx)?;
            Ok(FiniteType::Nat)
        }
        Term::Add(a, b) | Term::Mul(a, b) => {
            expect_nat(a, ctx)?;
            expect_nat(b, ctx)?;
            Ok(FiniteType::Nat)
        }
        Term::Proj(..) | Term::Subst(..) | Term::Rec(_) | Term::Prim(_) => {
            Ok(constant_type(t).expect("constant"))
        }
        Term::App(f, a) => {
            let fty = infer(f, ctx, require_decl)?;
            let aty = infer(a, ctx, require_decl)?;
            match fty {
                FiniteType::Arrow(dom, cod) if *dom == aty => Ok(*cod),
                FiniteType::Arrow(dom, _) => Err(Error::mismatch(a, dom, aty)),
                FiniteType::Nat => Err(Error::mismatch(f, "a function type", FiniteType::Nat)),
            }
        }
        Term::Lam(name, ty, body) => {
            ctx.push((name.clone(), ty.clone()));
            let body_ty = infer(body, ctx, require_decl);
            ctx.pop();
            Ok(FiniteType::arrow(ty.clone(), body_ty?))
        }
    }
}
