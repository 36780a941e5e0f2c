//! Sequential forms of `!x. ?y. A(x, y)` sentences and a report of which
//! uniformization results have their hypotheses met.
//!
//! A sequence `<x_n>` of objects of type `ρ` is a function of type `0 -> ρ`,
//! so the sequential form is
//!
//! ```text
//! !X:(0->ρ). ?Y:(0->τ). !n:0. A(X n, Y n)
//! ```

use std::fmt;

use crate::classify::{classify, Mode};
use crate::error::{Error, Result};
use crate::syntax::{
    subst_formula, subst_formula_beta, FiniteType, Formula, Name, NameSupply, Substitution, Term,
};

/// The parts of `!x:ρ. ?y:τ. A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub x: (Name, FiniteType),
    pub y: (Name, FiniteType),
    pub matrix: Formula,
}

impl Decomposition {
    pub fn to_formula(&self) -> Formula {
        let (x, rho) = &self.x;
        let (y, tau) = &self.y;
        Formula::forall(
            x.clone(),
            rho.clone(),
            Formula::exists(y.clone(), tau.clone(), self.matrix.clone()),
        )
    }
}

/// Splits off the leading `!x. ?y.` pair of a sentence. Longer blocks are
/// not paired up: `!x. !x'. ?y. A` is rejected.
pub fn decompose_forall_exists(s: &Formula) -> Result<Decomposition> {
    let shape_error = |position: &str, found: &Formula| Error::NotForallExists {
        position: position.into(),
        found: found.to_string(),
    };
    let Formula::Forall(x, rho, body) = s else {
        return Err(shape_error("/", s));
    };
    let Formula::Exists(y, tau, matrix) = body.as_ref() else {
        return Err(shape_error("/0", body));
    };
    if !s.is_closed() {
        return Err(Error::NotClosed {
            what: "sentence",
            vars: s.free_names().into_iter().collect::<Vec<_>>().join(", "),
        });
    }
    Ok(Decomposition {
        x: (x.clone(), rho.clone()),
        y: (y.clone(), tau.clone()),
        matrix: (**matrix).clone(),
    })
}

/// `!X. ?Y. !n. A(X n, Y n)` with its pieces kept apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialForm {
    pub xs: (Name, FiniteType),
    pub ys: (Name, FiniteType),
    pub index: Name,
    /// `A(X n, Y n)`.
    pub matrix: Formula,
}

impl SequentialForm {
    pub fn formula(&self) -> Formula {
        let (xs, xs_ty) = &self.xs;
        let (ys, ys_ty) = &self.ys;
        Formula::forall(
            xs.clone(),
            xs_ty.clone(),
            Formula::exists(
                ys.clone(),
                ys_ty.clone(),
                Formula::forall(self.index.clone(), FiniteType::Nat, self.matrix.clone()),
            ),
        )
    }

    /// The matrix with the sequences and the index replaced by the given
    /// terms. Redexes created by the replacement are contracted.
    pub fn instance(&self, xs: &Term, ys: &Term, n: &Term) -> Formula {
        let map = Substitution::from([
            (self.xs.0.clone(), xs.clone()),
            (self.ys.0.clone(), ys.clone()),
            (self.index.clone(), n.clone()),
        ]);
        subst_formula_beta(&self.matrix, &map)
    }
}

pub fn sequential_form(s: &Formula) -> Result<SequentialForm> {
    let d = decompose_forall_exists(s)?;
    let mut supply = NameSupply::new(s.all_names());
    let xs = supply.fresh_lifted(&d.x.0);
    let ys = supply.fresh_lifted(&d.y.0);
    let index = supply.fresh_like("n");
    let seq_ty = |ty: &FiniteType| FiniteType::arrow(FiniteType::Nat, ty.clone());
    let (xs_ty, ys_ty) = (seq_ty(&d.x.1), seq_ty(&d.y.1));
    let n = Term::nat_var(index.clone());
    let map = Substitution::from([
        (
            d.x.0.clone(),
            Term::app(Term::var(xs.clone(), xs_ty.clone()), n.clone()),
        ),
        (
            d.y.0.clone(),
            Term::app(Term::var(ys.clone(), ys_ty.clone()), n),
        ),
    ]);
    Ok(SequentialForm {
        xs: (xs, xs_ty),
        ys: (ys, ys_ty),
        index,
        matrix: subst_formula(&d.matrix, &map),
    })
}

pub fn sequentialize(s: &Formula) -> Result<Formula> {
    sequential_form(s).map(|f| f.formula())
}

/// The uniformization results, named by the interpretation used in their
/// proof and whether recursion is restricted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    /// Γ1 sentences, full finite-type arithmetic, via modified realizability.
    Realizability,
    /// Γ1 sentences, recursion restricted to type 0.
    RealizabilityRestricted,
    /// Γ2 sentences, weakly extensional arithmetic, via Dialectica.
    Dialectica,
    /// Γ2 sentences, recursion restricted to type 0.
    DialecticaRestricted,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [
        Theorem::Realizability,
        Theorem::RealizabilityRestricted,
        Theorem::Dialectica,
        Theorem::DialecticaRestricted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Realizability => "mr",
            Theorem::RealizabilityRestricted => "mr-restricted",
            Theorem::Dialectica => "dialectica",
            Theorem::DialecticaRestricted => "dialectica-restricted",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which hypotheses a sentence satisfies. Says nothing about whether the
/// sentence is provable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub mode: Mode,
    pub gamma1: bool,
    pub gamma2: bool,
    /// Every variable has type 0 or 1.
    pub second_order_fragment: bool,
    /// Some recursor of type other than 0 occurs.
    pub uses_full_recursors: bool,
    pub applicable: Vec<Theorem>,
    /// The conclusion may be stated over the second-order base system.
    pub rca_replacement: bool,
}

pub fn is_second_order_fragment(s: &Formula) -> bool {
    s.variable_types().iter().all(|t| t.level() <= 1)
}

pub fn uses_full_recursors(s: &Formula) -> bool {
    let mut recs = Vec::new();
    s.for_each_term(&mut |t| t.recursor_types(&mut recs));
    recs.iter().any(|sigma| !sigma.is_nat())
}

pub fn applicable_theorems(s: &Formula, mode: Mode) -> Result<TheoremReport> {
    let d = decompose_forall_exists(s)?;
    let classes = classify(s, mode);
    let second_order_fragment = is_second_order_fragment(s);
    let full_rec = uses_full_recursors(s);
    let (g1, g2) = (classes.in_gamma1, classes.in_gamma2);
    let applicable = Theorem::ALL
        .into_iter()
        .filter(|t| match t {
            Theorem::Realizability => g1,
            Theorem::RealizabilityRestricted => g1 && !full_rec,
            Theorem::Dialectica => g2,
            Theorem::DialecticaRestricted => g2 && !full_rec,
        })
        .collect();
    let one = FiniteType::one();
    Ok(TheoremReport {
        mode,
        gamma1: g1,
        gamma2: g2,
        second_order_fragment,
        uses_full_recursors: full_rec,
        applicable,
        rca_replacement: d.x.1 == one && d.y.1 == one && second_order_fragment,
    })
}
