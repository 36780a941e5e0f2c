//! Normal-order evaluation of terms and decision of closed quantifier-free
//! formulas.
//!
//! Reduction rules:
//!
//! ```text
//! (\x. b) a          --> b[x := a]
//! proj a b           --> a
//! subst x y z        --> x z (y z)
//! rec 0 a f          --> a
//! rec (S n) a f      --> f n (rec n a f)
//! (S) a              --> S a
//! (+) a b, (*) a b   --> a + b, a * b
//! m + n, m * n       --> numeral      (m, n numerals)
//! ```
//!
//! The leftmost-outermost redex is contracted first. Arithmetic on
//! numerals is charged one step per unfolding of the recursive defining
//! equations (`x + S y = S (x + y)`, `x * S y = x * y + x`), so the step
//! budget also bounds the size of numerals built.

use std::num::NonZeroU64;

use crate::error::{Error, Result};
use crate::syntax::{subst_term, FiniteType, Formula, Prim, Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub max_steps: NonZeroU64,
    /// Record every intermediate term.
    pub trace: bool,
}

impl EvalConfig {
    pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

    pub fn with_max_steps(max_steps: NonZeroU64) -> EvalConfig {
        EvalConfig {
            max_steps,
            trace: false,
        }
    }

    pub fn traced(self) -> EvalConfig {
        EvalConfig {
            trace: true,
            ..self
        }
    }
}

impl Default for EvalConfig {
    fn default() -> EvalConfig {
        EvalConfig::with_max_steps(NonZeroU64::new(Self::DEFAULT_MAX_STEPS).expect("nonzero"))
    }
}

/// Result of running a term to normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub steps: u64,
    /// The input followed by every intermediate term, when tracing.
    pub trace: Vec<Term>,
}

/// Renders a trace one term per line, steps marked with `-->`.
pub fn format_trace(trace: &[Term]) -> String {
    let mut out = String::new();
    for (i, t) in trace.iter().enumerate() {
        if i > 0 {
            out.push_str("--> ");
        }
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

/// Step accounting shared across the terms of one evaluation.
struct Machine {
    cfg: EvalConfig,
    used: u64,
    /// Set when an arithmetic step would overrun the budget.
    exhausted: bool,
}

impl Machine {
    fn new(cfg: EvalConfig) -> Machine {
        Machine {
            cfg,
            used: 0,
            exhausted: false,
        }
    }

    fn remaining(&self) -> u64 {
        self.cfg.max_steps.get() - self.used
    }

    fn out_of_budget(&self, partial: &Term) -> Error {
        Error::StepBudgetExceeded {
            budget: self.cfg.max_steps.get(),
            partial: partial.to_string(),
        }
    }

    fn normalize(&mut self, t: &Term) -> Result<Normalized> {
        let ty = t.type_of()?;
        let start = self.used;
        let mut cur = t.clone();
        let mut trace = Vec::new();
        if self.cfg.trace {
            trace.push(cur.clone());
        }
        loop {
            let mut cost = 1;
            let Some(next) = self.step_costed(&cur, &mut cost) else {
                if self.exhausted {
                    return Err(self.out_of_budget(&cur));
                }
                break;
            };
            if cost > self.remaining() {
                return Err(self.out_of_budget(&cur));
            }
            self.used += cost;
            if self.cfg.trace {
                let next_ty = next.type_of()?;
                if next_ty != ty {
                    return Err(Error::mismatch(&next, &ty, next_ty));
                }
                trace.push(next.clone());
            }
            cur = next;
        }
        Ok(Normalized {
            term: cur,
            steps: self.used - start,
            trace,
        })
    }

    fn step_costed(&mut self, t: &Term, cost: &mut u64) -> Option<Term> {
        if self.exhausted {
            return None;
        }
        match t {
            Term::Var(..)
            | Term::Zero
            | Term::Proj(..)
            | Term::Subst(..)
            | Term::Rec(_)
            | Term::Prim(_) => None,
            Term::Lam(x, ty, body) => self
                .step_costed(body, cost)
                .map(|b| Term::lam(x.clone(), ty.clone(), b)),
            Term::Succ(_) => {
                let (k, base) = t.peel_succ();
                self.step_costed(base, cost).map(|b| Term::succ_n(k, b))
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                let is_add = matches!(t, Term::Add(..));
                if let (Some(m), Some(n)) = (a.as_numeral(), b.as_numeral()) {
                    return self.arith(is_add, m, n, cost);
                }
                let rebuild = |x: Term, y: Term| {
                    if is_add {
                        Term::add(x, y)
                    } else {
                        Term::mul(x, y)
                    }
                };
                if let Some(a2) = self.step_costed(a, cost) {
                    return Some(rebuild(a2, (**b).clone()));
                }
                self.step_costed(b, cost)
                    .map(|b2| rebuild((**a).clone(), b2))
            }
            Term::App(..) => self.step_spine(t, cost),
        }
    }

    fn arith(&mut self, is_add: bool, m: u64, n: u64, cost: &mut u64) -> Option<Term> {
        let (m, n) = (u128::from(m), u128::from(n));
        let (value, unfoldings) = if is_add {
            (m + n, n)
        } else {
            (m * n, n + m * n)
        };
        let total = u128::from(*cost) + unfoldings;
        if total > u128::from(self.remaining()) {
            self.exhausted = true;
            return None;
        }
        *cost = total as u64;
        Some(Term::numeral(value as u64))
    }

    fn step_spine(&mut self, t: &Term, cost: &mut u64) -> Option<Term> {
        let (head, args) = t.spine();
        let rest = |from: usize| {
            args[from..]
                .iter()
                .map(|a| (*a).clone())
                .collect::<Vec<_>>()
        };
        let contracted = match head {
            Term::Lam(x, _, body) => {
                let map = Substitution::from([(x.clone(), args[0].clone())]);
                Some((subst_term(body, &map), 1))
            }
            Term::Proj(..) if args.len() >= 2 => Some((args[0].clone(), 2)),
            Term::Subst(..) if args.len() >= 3 => {
                let (x, y, z) = (args[0], args[1], args[2]);
                let yz = Term::app(y.clone(), z.clone());
                Some((Term::apps(x.clone(), [z.clone(), yz]), 3))
            }
            Term::Rec(sigma) if args.len() >= 3 => match args[0] {
                Term::Zero => Some((args[1].clone(), 3)),
                Term::Succ(m) => {
                    let inner = Term::apps(
                        Term::Rec(sigma.clone()),
                        [(**m).clone(), args[1].clone(), args[2].clone()],
                    );
                    Some((Term::apps(args[2].clone(), [(**m).clone(), inner]), 3))
                }
                _ => None,
            },
            Term::Prim(p) if args.len() >= p.arity() => {
                let a = args[0].clone();
                let r = match p {
                    Prim::Succ => Term::succ(a),
                    Prim::Add => Term::add(a, args[1].clone()),
                    Prim::Mul => Term::mul(a, args[1].clone()),
                };
                Some((r, p.arity()))
            }
            _ => None,
        };
        if let Some((r, used)) = contracted {
            return Some(Term::apps(r, rest(used)));
        }
        // No redex at the head: reduce the arguments left to right. The head
        // itself is a variable or a constant here.
        for (i, a) in args.iter().enumerate() {
            if let Some(a2) = self.step_costed(a, cost) {
                let mut new_args = rest(0);
                new_args[i] = a2;
                return Some(Term::apps(head.clone(), new_args));
            }
        }
        None
    }
}

/// Reduces `t` to normal form. Open terms are allowed; reduction stops at
/// variable heads.
pub fn normalize(t: &Term, cfg: EvalConfig) -> Result<Term> {
    Machine::new(cfg).normalize(t).map(|n| n.term)
}

/// Like [`normalize`], also reporting the step count and (if enabled) the trace.
pub fn normalize_traced(t: &Term, cfg: EvalConfig) -> Result<Normalized> {
    Machine::new(cfg).normalize(t)
}

fn nat_value(m: &mut Machine, t: &Term) -> Result<u64> {
    if !t.is_closed() {
        return Err(not_closed("term", t.free_names()));
    }
    let ty = t.type_of()?;
    if !ty.is_nat() {
        return Err(Error::mismatch(t, FiniteType::Nat, ty));
    }
    let n = m.normalize(t)?;
    n.term.as_numeral().ok_or_else(|| Error::ShapeUnsupported {
        reason: format!("normal form `{}` is not a numeral", n.term),
    })
}

fn not_closed(what: &'static str, names: std::collections::BTreeSet<String>) -> Error {
    Error::NotClosed {
        what,
        vars: names.into_iter().collect::<Vec<_>>().join(", "),
    }
}

/// Value of a closed term of type `0`.
pub fn eval_nat(t: &Term, cfg: EvalConfig) -> Result<u64> {
    nat_value(&mut Machine::new(cfg), t)
}

/// Truth value of a closed quantifier-free formula. The step budget is
/// shared by all equations in the formula.
pub fn decide_qf(a: &Formula, cfg: EvalConfig) -> Result<bool> {
    if let Some(q) = first_quantified(a) {
        return Err(Error::NotQuantifierFree {
            subformula: q.to_string(),
        });
    }
    if !a.is_closed() {
        return Err(not_closed("formula", a.free_names()));
    }
    decide(&mut Machine::new(cfg), a)
}

fn first_quantified(a: &Formula) -> Option<&Formula> {
    match a {
        Formula::Forall(..) | Formula::Exists(..) => Some(a),
        _ => a.children().into_iter().find_map(first_quantified),
    }
}

fn decide(m: &mut Machine, a: &Formula) -> Result<bool> {
    Ok(match a {
        Formula::Bot => false,
        Formula::Eq(l, r) => nat_value(m, l)? == nat_value(m, r)?,
        Formula::And(x, y) => {
            let (x, y) = (decide(m, x)?, decide(m, y)?);
            x && y
        }
        Formula::Or(x, y) => {
            let (x, y) = (decide(m, x)?, decide(m, y)?);
            x || y
        }
        Formula::Imp(x, y) => {
            let (x, y) = (decide(m, x)?, decide(m, y)?);
            !x || y
        }
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("checked quantifier-free"),
    })
}
