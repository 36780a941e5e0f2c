//! Checking candidate witnesses and realizers on finite ranges of numerals.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::eval::{decide_qf, EvalConfig};
use crate::mr::mr_apply_terms;
use crate::sequentialize::decompose_forall_exists;
use crate::syntax::{subst_formula, FiniteType, Formula, Name, Substitution, Term};

/// Most instances a single check may decide.
pub const INSTANCE_CAP: u64 = 10_000;

/// An inclusive range `lo..hi` of natural numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    lo: u64,
    hi: u64,
}

impl Range {
    pub fn new(lo: u64, hi: u64) -> Option<Range> {
        (lo <= hi).then_some(Range { lo, hi })
    }

    pub fn lo(self) -> u64 {
        self.lo
    }

    pub fn hi(self) -> u64 {
        self.hi
    }

    pub fn len(self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains_range(self, other: Range) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn iter(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expected a range `a..b` with a <= b, got `{0}`")]
pub struct RangeParseError(String);

impl FromStr for Range {
    type Err = RangeParseError;

    fn from_str(s: &str) -> std::result::Result<Range, RangeParseError> {
        let err = || RangeParseError(s.to_string());
        let (a, b) = s.split_once("..").ok_or_else(err)?;
        let lo = a.trim().parse().map_err(|_| err())?;
        let hi = b.trim().parse().map_err(|_| err())?;
        Range::new(lo, hi).ok_or_else(err)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// One instance that decided to false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub inputs: Vec<(Name, u64)>,
    pub instance: Formula,
    pub decision: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub checked: u64,
    /// In lexicographic order of the inputs.
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
    pub range: Range,
}

impl WitnessReport {
    fn from_failures(checked: u64, failures: Vec<Failure>, range: Range) -> WitnessReport {
        let verdict = if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        WitnessReport {
            checked,
            failures,
            verdict,
            range,
        }
    }
}

fn first_quantifier(a: &Formula) -> Option<&Formula> {
    match a {
        Formula::Forall(..) | Formula::Exists(..) => Some(a),
        _ => a.children().into_iter().find_map(first_quantifier),
    }
}

/// Checks `A(n, t n)` for every `n` in the range, where `s = !x:0. ?y:0. A`
/// with `A` quantifier-free and `t : 0 -> 0` closed.
pub fn check_witness(
    s: &Formula,
    t: &Term,
    range: Range,
    cfg: EvalConfig,
) -> Result<WitnessReport> {
    let d = decompose_forall_exists(s)?;
    for (name, ty) in [&d.x, &d.y] {
        if !ty.is_nat() {
            return Err(Error::ShapeUnsupported {
                reason: format!("`{name}` has type {ty}; only type 0 can be sampled"),
            });
        }
    }
    if let Some(q) = first_quantifier(&d.matrix) {
        return Err(Error::NotQuantifierFree {
            subformula: q.to_string(),
        });
    }
    let want = FiniteType::one();
    let ty = t.type_of()?;
    if ty != want {
        return Err(Error::mismatch(t, want, ty));
    }
    if !t.is_closed() {
        return Err(Error::NotClosed {
            what: "term",
            vars: t.free_names().into_iter().collect::<Vec<_>>().join(", "),
        });
    }
    let mut failures = Vec::new();
    for n in range.iter() {
        let map = Substitution::from([
            (d.x.0.clone(), Term::numeral(n)),
            (d.y.0.clone(), Term::app(t.clone(), Term::numeral(n))),
        ]);
        let instance = subst_formula(&d.matrix, &map);
        if !decide_qf(&instance, cfg)? {
            failures.push(Failure {
                inputs: vec![(d.x.0.clone(), n)],
                instance,
                decision: false,
            });
        }
    }
    Ok(WitnessReport::from_failures(range.len(), failures, range))
}

/// Decides every instance of `t mr A`, which must be a block of type-0
/// universal quantifiers over a quantifier-free matrix. Each bound variable
/// ranges over `range`.
pub fn check_mr_witness(
    a: &Formula,
    terms: &[Term],
    range: Range,
    cfg: EvalConfig,
) -> Result<WitnessReport> {
    let realized = mr_apply_terms(a, terms)?;
    let (block, matrix) = realized.strip_block(false);
    if let Some((name, ty)) = block.iter().find(|(_, ty)| !ty.is_nat()) {
        return Err(Error::ShapeUnsupported {
            reason: format!("quantifier `!{name}:{ty}` is not over type 0"),
        });
    }
    if let Some(q) = first_quantifier(matrix) {
        return Err(Error::ShapeUnsupported {
            reason: format!("`{q}` is not a leading universal over type 0"),
        });
    }
    let count = u128::from(range.len()).checked_pow(block.len() as u32);
    let count = count.unwrap_or(u128::MAX);
    if count > u128::from(INSTANCE_CAP) {
        return Err(Error::InstanceCapExceeded {
            count,
            cap: INSTANCE_CAP,
        });
    }
    // Bound names may repeat (`!x. !x. A`); later binders shadow earlier ones.
    let mut values = vec![range.lo(); block.len()];
    let mut failures = Vec::new();
    let mut checked = 0;
    loop {
        let mut map = Substitution::new();
        for ((name, _), v) in block.iter().zip(&values) {
            map.insert(name.clone(), Term::numeral(*v));
        }
        let instance = subst_formula(matrix, &map);
        checked += 1;
        if !decide_qf(&instance, cfg)? {
            failures.push(Failure {
                inputs: block
                    .iter()
                    .map(|(n, _)| n.clone())
                    .zip(values.clone())
                    .collect(),
                instance,
                decision: false,
            });
        }
        // advance the odometer, last position fastest
        let mut i = block.len();
        loop {
            if i == 0 {
                return Ok(WitnessReport::from_failures(checked, failures, range));
            }
            i -= 1;
            if values[i] < range.hi() {
                values[i] += 1;
                break;
            }
            values[i] = range.lo();
        }
    }
}
