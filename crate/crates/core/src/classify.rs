//! Syntactic formula classes: quantifier-free, ∃-free, purely universal,
//! Γ1, Γ2, and negative formulas.
//!
//! In [`Mode::Liberal`] a quantifier-free subformula counts as prime when
//! testing ∃-freeness, so e.g. a disjunction of equations is ∃-free. In
//! [`Mode::Strict`] the test is purely syntactic.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    #[default]
    Strict,
    Liberal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Liberal => "liberal",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    QuantifierFree,
    ExistsFree,
    PurelyUniversal,
    Gamma1,
    Gamma2,
    Negative,
}

impl Flag {
    pub const ALL: [Flag; 6] = [
        Flag::QuantifierFree,
        Flag::ExistsFree,
        Flag::PurelyUniversal,
        Flag::Gamma1,
        Flag::Gamma2,
        Flag::Negative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::QuantifierFree => "quantifier_free",
            Flag::ExistsFree => "exists_free",
            Flag::PurelyUniversal => "purely_universal",
            Flag::Gamma1 => "in_gamma1",
            Flag::Gamma2 => "in_gamma2",
            Flag::Negative => "negative",
        }
    }
}

/// Path of child indices from the root (0 = left/body, 1 = right).
pub type Path = Vec<usize>;

pub fn format_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "/".into();
    }
    path.iter().map(|i| format!("/{i}")).collect()
}

/// The subformula that made a flag false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub path: Path,
    pub subformula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub mode: Mode,
    pub quantifier_free: bool,
    pub exists_free: bool,
    pub purely_universal: bool,
    pub in_gamma1: bool,
    pub in_gamma2: bool,
    pub negative: bool,
    /// One entry per false flag.
    pub witnesses: BTreeMap<Flag, Witness>,
}

impl ClassificationReport {
    pub fn flag(&self, flag: Flag) -> bool {
        match flag {
            Flag::QuantifierFree => self.quantifier_free,
            Flag::ExistsFree => self.exists_free,
            Flag::PurelyUniversal => self.purely_universal,
            Flag::Gamma1 => self.in_gamma1,
            Flag::Gamma2 => self.in_gamma2,
            Flag::Negative => self.negative,
        }
    }
}

type Check = std::result::Result<(), Path>;

fn descend(path: &[usize], i: usize) -> Path {
    let mut p = path.to_vec();
    p.push(i);
    p
}

fn check_children(a: &Formula, path: &[usize], f: &impl Fn(&Formula, &[usize]) -> Check) -> Check {
    for (i, c) in a.children().into_iter().enumerate() {
        f(c, &descend(path, i))?;
    }
    Ok(())
}

fn first_quantifier(a: &Formula, path: &[usize]) -> Check {
    match a {
        Formula::Forall(..) | Formula::Exists(..) => Err(path.to_vec()),
        _ => check_children(a, path, &first_quantifier),
    }
}

fn exists_free_at(a: &Formula, path: &[usize], mode: Mode) -> Check {
    if mode == Mode::Liberal && a.is_quantifier_free() {
        return Ok(());
    }
    match a {
        Formula::Bot | Formula::Eq(..) => Ok(()),
        Formula::Or(..) | Formula::Exists(..) => Err(path.to_vec()),
        Formula::And(..) | Formula::Imp(..) | Formula::Forall(..) => {
            check_children(a, path, &|c, p| exists_free_at(c, p, mode))
        }
    }
}

fn purely_universal_at(a: &Formula, path: &[usize]) -> Check {
    let (block, matrix) = a.strip_block(false);
    let mut inner = path.to_vec();
    inner.extend(std::iter::repeat_n(0, block.len()));
    first_quantifier(matrix, &inner)
}

/// Γ1 and Γ2 share clauses (1) and (2); they differ in what an implication
/// premise must be once its leading ∃-block is removed.
fn gamma_at(a: &Formula, path: &[usize], premise_ok: &impl Fn(&Formula) -> bool) -> Check {
    match a {
        Formula::Bot | Formula::Eq(..) => Ok(()),
        Formula::And(..) | Formula::Or(..) | Formula::Forall(..) | Formula::Exists(..) => {
            check_children(a, path, &|c, p| gamma_at(c, p, premise_ok))
        }
        Formula::Imp(premise, conclusion) => {
            let (_, rest) = premise.strip_block(true);
            if !premise_ok(rest) {
                return Err(path.to_vec());
            }
            gamma_at(conclusion, &descend(path, 1), premise_ok)
        }
    }
}

fn negative_at(a: &Formula, path: &[usize]) -> Check {
    match a {
        Formula::Bot => Ok(()),
        Formula::Imp(p, b) if p.is_prime() && **b == Formula::Bot => Ok(()),
        Formula::And(..) | Formula::Imp(..) | Formula::Forall(..) => {
            check_children(a, path, &negative_at)
        }
        Formula::Eq(..) | Formula::Or(..) | Formula::Exists(..) => Err(path.to_vec()),
    }
}

pub fn is_exists_free(a: &Formula, mode: Mode) -> bool {
    exists_free_at(a, &[], mode).is_ok()
}

pub fn is_purely_universal(a: &Formula) -> bool {
    purely_universal_at(a, &[]).is_ok()
}

pub fn in_gamma1(a: &Formula, mode: Mode) -> bool {
    gamma_at(a, &[], &|p| is_exists_free(p, mode)).is_ok()
}

pub fn in_gamma2(a: &Formula) -> bool {
    gamma_at(a, &[], &is_purely_universal).is_ok()
}

/// Built from negated primes and ⊥ by ∀, ∧ and →.
pub fn is_negative(a: &Formula) -> bool {
    negative_at(a, &[]).is_ok()
}

pub fn classify(a: &Formula, mode: Mode) -> ClassificationReport {
    let root: &[usize] = &[];
    let results = [
        (Flag::QuantifierFree, first_quantifier(a, root)),
        (Flag::ExistsFree, exists_free_at(a, root, mode)),
        (Flag::PurelyUniversal, purely_universal_at(a, root)),
        (
            Flag::Gamma1,
            gamma_at(a, root, &|p| is_exists_free(p, mode)),
        ),
        (Flag::Gamma2, gamma_at(a, root, &is_purely_universal)),
        (Flag::Negative, negative_at(a, root)),
    ];
    let mut witnesses = BTreeMap::new();
    for (flag, r) in &results {
        if let Err(path) = r {
            let subformula = a.at_path(path).expect("path into formula").clone();
            witnesses.insert(
                *flag,
                Witness {
                    path: path.clone(),
                    subformula,
                },
            );
        }
    }
    let ok = |f: Flag| !witnesses.contains_key(&f);
    ClassificationReport {
        mode,
        quantifier_free: ok(Flag::QuantifierFree),
        exists_free: ok(Flag::ExistsFree),
        purely_universal: ok(Flag::PurelyUniversal),
        in_gamma1: ok(Flag::Gamma1),
        in_gamma2: ok(Flag::Gamma2),
        negative: ok(Flag::Negative),
        witnesses,
    }
}

/// Replaces every prime subformula `P` of a (strictly) ∃-free formula with
/// `(P -> ⊥) -> ⊥`.
pub fn double_negate_primes(a: &Formula) -> Result<Formula> {
    if let Err(path) = exists_free_at(a, &[], Mode::Strict) {
        let sub = a.at_path(&path).expect("path into formula");
        return Err(Error::NotExistsFree {
            subformula: sub.to_string(),
        });
    }
    Ok(negate_primes(a))
}

fn negate_primes(a: &Formula) -> Formula {
    match a {
        Formula::Bot | Formula::Eq(..) => Formula::not(Formula::not(a.clone())),
        Formula::And(x, y) => Formula::and(negate_primes(x), negate_primes(y)),
        Formula::Imp(x, y) => Formula::imp(negate_primes(x), negate_primes(y)),
        Formula::Forall(n, ty, body) => Formula::forall(n.clone(), ty.clone(), negate_primes(body)),
        Formula::Or(..) | Formula::Exists(..) => unreachable!("checked ∃-free"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn universal_identity() {
        let r = classify(&f("!x:0. x = x"), Mode::Strict);
        assert!(r.exists_free && r.purely_universal && r.in_gamma1 && r.in_gamma2);
        assert!(!r.quantifier_free);
        assert_eq!(r.witnesses[&Flag::QuantifierFree].path, Vec::<usize>::new());
    }

    #[test]
    fn existential_premise() {
        let r = classify(&f("(?x:0. x = 0) -> bot"), Mode::Strict);
        assert!(r.in_gamma1);
        assert!(r.in_gamma2);
        assert!(!r.exists_free);
        assert_eq!(r.witnesses[&Flag::ExistsFree].path, vec![0]);
    }

    #[test]
    fn qf_disjunction_modes() {
        let a = f("(0=0) | (0=S 0)");
        let strict = classify(&a, Mode::Strict);
        assert!(strict.quantifier_free && !strict.exists_free);
        let liberal = classify(&a, Mode::Liberal);
        assert!(liberal.quantifier_free && liberal.exists_free);
    }

    #[test]
    fn gamma2_not_gamma1_in_strict_mode() {
        // disjunction inside a universal premise
        let a = f("(!x:0. x = 0 | x = 1) -> bot");
        let strict = classify(&a, Mode::Strict);
        assert!(strict.in_gamma2 && !strict.in_gamma1);
        assert_eq!(strict.witnesses[&Flag::Gamma1].path, Vec::<usize>::new());
        let liberal = classify(&a, Mode::Liberal);
        assert!(liberal.in_gamma2 && liberal.in_gamma1);
    }

    #[test]
    fn gamma1_not_gamma2() {
        let a = f("((!y:0. y = y) -> 0 = 0) -> bot");
        for mode in [Mode::Strict, Mode::Liberal] {
            let r = classify(&a, mode);
            assert!(r.in_gamma1 && !r.in_gamma2);
        }
    }

    #[test]
    fn nested_existential_premise_is_outside_both() {
        let a = f("((?y:0. y = 0) -> 0 = 0) -> bot");
        let r = classify(&a, Mode::Strict);
        assert!(!r.in_gamma1 && !r.in_gamma2);
    }

    #[test]
    fn double_negation() {
        let got = double_negate_primes(&f("0 = 0")).unwrap();
        assert_eq!(got, f("((0=0 -> bot) -> bot)"));
        let got = double_negate_primes(&f("!x:0. x = x")).unwrap();
        assert_eq!(got, f("!x:0. ((x=x -> bot) -> bot)"));
        assert!(is_negative(&got));
        assert!(matches!(
            double_negate_primes(&f("?x:0. x=0")),
            Err(Error::NotExistsFree { .. })
        ));
    }

    #[test]
    fn negative_class() {
        assert!(is_negative(&f("bot")));
        assert!(is_negative(&f("~0 = 0")));
        assert!(!is_negative(&f("0 = 0")));
        assert!(is_negative(&f("!x:0. ~x = 0 & (~~x = x -> bot)")));
        assert!(!is_negative(&f("~0 = 0 | bot")));
    }

    #[test]
    fn purely_universal_blocks() {
        assert!(is_purely_universal(&f("0 = 0 | 0 = 1")));
        assert!(is_purely_universal(&f("!x:0. !y:0. x = y -> y = x")));
        assert!(!is_purely_universal(&f("!x:0. (!y:0. x = y) -> bot")));
        let r = classify(&f("!x:0. ?y:0. x = y"), Mode::Strict);
        assert_eq!(r.witnesses[&Flag::PurelyUniversal].path, vec![0]);
    }
}
