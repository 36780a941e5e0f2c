//! Pretty printer with minimal parenthesization.
//!
//! Term levels: λ 0, `+` 1, `*` 2, application 3, atom 4.
//! Formula levels: `->` 1, `|` 2, `&` 3, `~`/quantifier 4, atom 5.
//! `+`, `*`, `&`, `|` associate left, `->` right. Binders extend as far
//! right as possible, so a quantifier is parenthesized unless it is the
//! last thing printed at its level.

use std::fmt::{self, Write};

use crate::syntax::{Formula, Prim, Term};

fn term_level(t: &Term) -> u8 {
    match t {
        Term::Lam(..) => 0,
        Term::Add(..) => 1,
        Term::Mul(..) => 2,
        Term::App(..) => 3,
        Term::Succ(_) if t.as_numeral().is_none() => 3,
        _ => 4,
    }
}

pub(crate) fn write_term(out: &mut impl Write, t: &Term, min: u8) -> fmt::Result {
    if term_level(t) < min {
        out.write_char('(')?;
        write_term(out, t, 0)?;
        return out.write_char(')');
    }
    if let Some(n) = t.as_numeral() {
        return write!(out, "{n}");
    }
    match t {
        Term::Var(n, _) => out.write_str(n),
        Term::Zero => out.write_char('0'),
        Term::Succ(a) => {
            out.write_str("S ")?;
            // `S` takes an atom or another successor chain.
            let level = if matches!(a.as_ref(), Term::Succ(_)) {
                3
            } else {
                4
            };
            write_term(out, a, level)
        }
        Term::Add(a, b) => {
            write_term(out, a, 1)?;
            out.write_str(" + ")?;
            write_term(out, b, 2)
        }
        Term::Mul(a, b) => {
            write_term(out, a, 2)?;
            out.write_str(" * ")?;
            write_term(out, b, 3)
        }
        Term::App(f, a) => {
            write_term(out, f, 3)?;
            out.write_char(' ')?;
            write_term(out, a, 4)
        }
        Term::Lam(x, ty, body) => {
            write!(out, "\\{x}:{ty}. ")?;
            write_term(out, body, 0)
        }
        Term::Proj(r, s) => write!(out, "proj[{r},{s}]"),
        Term::Subst(d, r, s) => write!(out, "subst[{d},{r},{s}]"),
        Term::Rec(s) => write!(out, "rec[{s}]"),
        Term::Prim(Prim::Succ) => out.write_str("(S)"),
        Term::Prim(Prim::Add) => out.write_str("(+)"),
        Term::Prim(Prim::Mul) => out.write_str("(*)"),
    }
}

fn formula_level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(_, b) if **b == Formula::Bot => 4,
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Forall(..) | Formula::Exists(..) => 4,
        Formula::Bot | Formula::Eq(..) => 5,
    }
}

fn is_binder(f: &Formula) -> bool {
    matches!(f, Formula::Forall(..) | Formula::Exists(..))
}

pub(crate) fn write_formula(
    out: &mut impl Write,
    f: &Formula,
    min: u8,
    rightmost: bool,
) -> fmt::Result {
    if formula_level(f) < min || (is_binder(f) && !rightmost) {
        out.write_char('(')?;
        write_formula(out, f, 0, true)?;
        return out.write_char(')');
    }
    match f {
        Formula::Bot => out.write_str("bot"),
        Formula::Eq(l, r) => {
            write_term(out, l, 0)?;
            out.write_str(" = ")?;
            write_term(out, r, 0)
        }
        Formula::Imp(a, b) if **b == Formula::Bot => {
            out.write_char('~')?;
            write_formula(out, a, 4, rightmost)
        }
        Formula::Imp(a, b) => {
            write_formula(out, a, 2, false)?;
            out.write_str(" -> ")?;
            write_formula(out, b, 1, rightmost)
        }
        Formula::Or(a, b) => {
            write_formula(out, a, 2, false)?;
            out.write_str(" | ")?;
            write_formula(out, b, 3, rightmost)
        }
        Formula::And(a, b) => {
            write_formula(out, a, 3, false)?;
            out.write_str(" & ")?;
            write_formula(out, b, 4, rightmost)
        }
        Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
            let q = if matches!(f, Formula::Forall(..)) {
                '!'
            } else {
                '?'
            };
            write!(out, "{q}{x}:{ty}. ")?;
            write_formula(out, body, 0, true)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0, true)
    }
}
