//! Seeded random generation of well-typed formulas and closed terms, for
//! property tests and demo corpora.
//!
//! Variable names come from a small pool so that generated formulas often
//! shadow and reuse names.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{FiniteType, Formula, Name, Term};

const NAMES: &[&str] = &["x", "y", "z", "u", "v", "w", "n", "k", "f", "g"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Full,
    ExistsFree,
}

/// A deterministic generator: equal seeds give equal output.
pub struct Generator {
    rng: ChaCha8Rng,
    scope: Vec<(Name, FiniteType)>,
    binder_types: Vec<FiniteType>,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        let nat = FiniteType::Nat;
        let one = FiniteType::one();
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            scope: Vec::new(),
            binder_types: vec![
                nat.clone(),
                nat.clone(),
                nat.clone(),
                one.clone(),
                one.clone(),
                FiniteType::arrow(one, nat.clone()),
                FiniteType::arrow(nat.clone(), FiniteType::arrow(nat.clone(), nat)),
            ],
        }
    }

    /// Restricts quantified variables to types 0 and 1.
    pub fn low_types(mut self) -> Generator {
        self.binder_types = vec![FiniteType::Nat, FiniteType::Nat, FiniteType::one()];
        self
    }

    /// A closed formula of depth at most `max_depth` using every connective.
    pub fn formula(&mut self, max_depth: usize) -> Formula {
        self.scope.clear();
        self.gen_formula(max_depth.max(1), Shape::Full)
    }

    /// A closed formula built from primes with `!`, `&` and `->` only.
    pub fn exists_free_formula(&mut self, max_depth: usize) -> Formula {
        self.scope.clear();
        self.gen_formula(max_depth.max(1), Shape::ExistsFree)
    }

    /// A closed term of type 0, possibly with λs, combinators and recursors.
    pub fn closed_nat_term(&mut self, max_depth: usize) -> Term {
        self.scope.clear();
        self.term_of(&FiniteType::Nat, max_depth.max(1))
    }

    fn pick_name(&mut self) -> Name {
        NAMES.choose(&mut self.rng).expect("nonempty").to_string()
    }

    fn gen_formula(&mut self, depth: usize, shape: Shape) -> Formula {
        if depth <= 1 {
            return self.prime();
        }
        let d = depth - 1;
        let choice = match shape {
            Shape::Full => self.rng.gen_range(0..8),
            Shape::ExistsFree => [0, 1, 3, 4, 6][self.rng.gen_range(0..5)],
        };
        match choice {
            0 => self.prime(),
            1 => Formula::and(self.gen_formula(d, shape), self.gen_formula(d, shape)),
            2 => Formula::or(self.gen_formula(d, shape), self.gen_formula(d, shape)),
            3 => Formula::imp(self.gen_formula(d, shape), self.gen_formula(d, shape)),
            4 | 5 => {
                let name = self.pick_name();
                let ty = self
                    .binder_types
                    .choose(&mut self.rng)
                    .expect("nonempty")
                    .clone();
                self.scope.push((name.clone(), ty.clone()));
                let body = self.gen_formula(d, shape);
                self.scope.pop();
                if choice == 4 {
                    Formula::forall(name, ty, body)
                } else {
                    Formula::exists(name, ty, body)
                }
            }
            6 => Formula::not(self.gen_formula(d, shape)),
            _ => {
                // extra weight on existentials over type 0
                let name = self.pick_name();
                self.scope.push((name.clone(), FiniteType::Nat));
                let body = self.gen_formula(d, shape);
                self.scope.pop();
                Formula::exists(name, FiniteType::Nat, body)
            }
        }
    }

    fn prime(&mut self) -> Formula {
        if self.rng.gen_ratio(1, 8) {
            return Formula::Bot;
        }
        let l = self.term_of(&FiniteType::Nat, 3);
        let r = self.term_of(&FiniteType::Nat, 3);
        Formula::eq(l, r)
    }

    fn vars_of(&self, ty: &FiniteType) -> Vec<Term> {
        // innermost binding of each name only
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for (n, t) in self.scope.iter().rev() {
            if seen.contains(n) {
                continue;
            }
            seen.push(n.clone());
            if t == ty {
                out.push(Term::var(n.clone(), t.clone()));
            }
        }
        out
    }

    /// Variables whose type ends in `ty`, with the argument types to supply.
    fn heads_for(&self, ty: &FiniteType) -> Vec<(Term, Vec<FiniteType>)> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for (n, t) in self.scope.iter().rev() {
            if seen.contains(n) {
                continue;
            }
            seen.push(n.clone());
            let mut args = Vec::new();
            let mut cur = t;
            while let FiniteType::Arrow(dom, cod) = cur {
                args.push((**dom).clone());
                cur = cod;
                if cur == ty {
                    out.push((Term::var(n.clone(), t.clone()), args.clone()));
                }
            }
        }
        out
    }

    fn term_of(&mut self, ty: &FiniteType, depth: usize) -> Term {
        let vars = self.vars_of(ty);
        if depth <= 1 {
            if let Some(v) = vars.choose(&mut self.rng) {
                if self.rng.gen_bool(0.6) {
                    return v.clone();
                }
            }
            return self.leaf(ty);
        }
        let d = depth - 1;
        match ty {
            FiniteType::Nat => match self.rng.gen_range(0..10) {
                0 | 1 => match vars.choose(&mut self.rng) {
                    Some(v) => v.clone(),
                    None => self.leaf(ty),
                },
                2 => self.leaf(ty),
                3 => Term::succ(self.term_of(ty, d)),
                4 => Term::add(self.term_of(ty, d), self.term_of(ty, d)),
                5 => Term::mul(self.term_of(ty, 2.min(d)), self.term_of(ty, 2.min(d))),
                6 => self.application(ty, d),
                7 => self.recursion(d),
                8 => {
                    // a β-redex
                    let name = self.pick_name();
                    let arg_ty = FiniteType::Nat;
                    let arg = self.term_of(&arg_ty, d);
                    self.scope.push((name.clone(), arg_ty.clone()));
                    let body = self.term_of(ty, d);
                    self.scope.pop();
                    Term::app(Term::lam(name, arg_ty, body), arg)
                }
                _ => self.combinator_app(d),
            },
            FiniteType::Arrow(dom, cod) => match self.rng.gen_range(0..4) {
                0 => match vars.choose(&mut self.rng) {
                    Some(v) => v.clone(),
                    None => self.leaf(ty),
                },
                1 => {
                    let c = self.term_of(cod, d);
                    Term::app(Term::Proj((**cod).clone(), (**dom).clone()), c)
                }
                _ => {
                    let name = self.pick_name();
                    self.scope.push((name.clone(), (**dom).clone()));
                    let body = self.term_of(cod, d);
                    self.scope.pop();
                    Term::lam(name, (**dom).clone(), body)
                }
            },
        }
    }

    fn leaf(&mut self, ty: &FiniteType) -> Term {
        match ty {
            FiniteType::Nat => Term::numeral(self.rng.gen_range(0..4)),
            FiniteType::Arrow(dom, cod) if **dom == FiniteType::Nat && cod.is_nat() => [
                Term::Prim(crate::syntax::Prim::Succ),
                Term::app(Term::Prim(crate::syntax::Prim::Add), Term::numeral(1)),
                Term::app(
                    Term::Proj(FiniteType::Nat, FiniteType::Nat),
                    Term::numeral(2),
                ),
            ]
            .choose(&mut self.rng)
            .expect("nonempty")
            .clone(),
            FiniteType::Arrow(dom, cod) => {
                let c = self.leaf(cod);
                Term::app(Term::Proj((**cod).clone(), (**dom).clone()), c)
            }
        }
    }

    fn application(&mut self, ty: &FiniteType, depth: usize) -> Term {
        let heads = self.heads_for(ty);
        let Some((head, args)) = heads.choose(&mut self.rng).cloned() else {
            return self.leaf(ty);
        };
        let args: Vec<Term> = args.iter().map(|a| self.term_of(a, depth)).collect();
        Term::apps(head, args)
    }

    /// `rec[0] n a f` or `rec[1] n g h m`, kept small enough to evaluate.
    fn recursion(&mut self, depth: usize) -> Term {
        let nat = FiniteType::Nat;
        let n = Term::numeral(self.rng.gen_range(0..4));
        if self.rng.gen_bool(0.7) {
            let base = self.term_of(&nat, depth.min(2));
            let (k, r) = (self.pick_name(), self.pick_name());
            self.scope.push((k.clone(), nat.clone()));
            self.scope.push((r.clone(), nat.clone()));
            let body = if self.rng.gen_bool(0.5) {
                Term::succ(Term::nat_var(r.clone()))
            } else {
                self.term_of(&nat, depth.min(2))
            };
            self.scope.truncate(self.scope.len() - 2);
            let step = Term::lam(k, nat.clone(), Term::lam(r, nat.clone(), body));
            Term::apps(Term::Rec(nat), [n, base, step])
        } else {
            let one = FiniteType::one();
            let base = self.term_of(&one, depth.min(2));
            let (k, g) = (self.pick_name(), self.pick_name());
            self.scope.push((k.clone(), nat.clone()));
            self.scope.push((g.clone(), one.clone()));
            let body = self.term_of(&one, depth.min(2));
            self.scope.truncate(self.scope.len() - 2);
            let step = Term::lam(k, nat.clone(), Term::lam(g, one.clone(), body));
            let m = self.term_of(&nat, 1);
            Term::apps(Term::Rec(one), [n, base, step, m])
        }
    }

    /// `subst[0,0,0] f g m` or `proj[0,0] a b`.
    fn combinator_app(&mut self, depth: usize) -> Term {
        let nat = FiniteType::Nat;
        if self.rng.gen_bool(0.5) {
            let a = self.term_of(&nat, depth);
            let b = self.term_of(&nat, depth);
            return Term::apps(Term::Proj(nat.clone(), nat), [a, b]);
        }
        let two = FiniteType::arrow(nat.clone(), FiniteType::one());
        let f = self.term_of(&two, depth);
        let g = self.term_of(&FiniteType::one(), depth);
        let m = self.term_of(&nat, depth);
        Term::apps(Term::Subst(nat.clone(), nat.clone(), nat), [f, g, m])
    }
}

/// `count` formulas from consecutive seeds starting at `seed`.
pub fn formula_corpus(seed: u64, count: usize, max_depth: usize) -> Vec<Formula> {
    (0..count as u64)
        .map(|i| Generator::new(seed.wrapping_add(i)).formula(max_depth))
        .collect()
}

/// `count` strictly ∃-free formulas from consecutive seeds.
pub fn exists_free_corpus(seed: u64, count: usize, max_depth: usize) -> Vec<Formula> {
    (0..count as u64)
        .map(|i| Generator::new(seed.wrapping_add(i)).exists_free_formula(max_depth))
        .collect()
}
