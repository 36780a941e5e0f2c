use std::collections::BTreeSet;
use std::fmt;

use super::term::{Name, Term};
use super::types::FiniteType;

/// Words the surface syntax reserves; never handed out as variable names.
pub const RESERVED: &[&str] = &["S", "bot", "proj", "subst", "rec", "var", "formula", "term"];

pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

/// A deterministic supply of fresh identifiers.
///
/// Every name handed out, and every name the supply was seeded with, is
/// considered taken until released. Two supplies seeded identically hand
/// out identical sequences.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    taken: BTreeSet<Name>,
}

impl NameSupply {
    pub fn new<I, S>(avoid: I) -> NameSupply
    where
        I: IntoIterator<Item = S>,
        S: Into<Name>,
    {
        let mut taken: BTreeSet<Name> = avoid.into_iter().map(Into::into).collect();
        taken.extend(RESERVED.iter().map(|s| s.to_string()));
        NameSupply { taken }
    }

    pub fn is_taken(&self, name: &str) -> bool {
        self.taken.contains(name)
    }

    pub fn reserve(&mut self, name: impl Into<Name>) {
        self.taken.insert(name.into());
    }

    /// Makes a previously issued name available again.
    pub fn release(&mut self, name: &str) {
        if !is_reserved(name) {
            self.taken.remove(name);
        }
    }

    /// `base0`, `base1`, ...: the first counter-suffixed name not taken.
    pub fn fresh_indexed(&mut self, base: &str) -> Name {
        let name = (0u64..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.taken.contains(n))
            .expect("unbounded counter");
        self.taken.insert(name.clone());
        name
    }

    /// `hint` itself if free, else `hint'`, `hint''`, ... Trailing primes on
    /// the hint are dropped first so repeated freshening does not pile up.
    pub fn fresh_like(&mut self, hint: &str) -> Name {
        let base = hint.trim_end_matches('\'');
        let base = if base.is_empty() { "v" } else { base };
        let mut name = base.to_string();
        while self.taken.contains(&name) {
            name.push('\'');
        }
        self.taken.insert(name.clone());
        name
    }

    /// Like [`fresh_like`](Self::fresh_like) with the first letter upper-cased,
    /// the naming used for lifted (function-typed) tuple components.
    pub fn fresh_lifted(&mut self, hint: &str) -> Name {
        let mut chars = hint.chars();
        let upper: String = match chars.next() {
            Some(c) => c.to_uppercase().chain(chars).collect(),
            None => "V".into(),
        };
        self.fresh_like(&upper)
    }
}

/// An ordered tuple of distinct typed variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarTuple(Vec<(Name, FiniteType)>);

impl VarTuple {
    pub fn new(vars: Vec<(Name, FiniteType)>) -> VarTuple {
        debug_assert!(
            {
                let names: BTreeSet<_> = vars.iter().map(|(n, _)| n).collect();
                names.len() == vars.len()
            },
            "duplicate names in tuple"
        );
        VarTuple(vars)
    }

    pub fn empty() -> VarTuple {
        VarTuple(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> &[(Name, FiniteType)] {
        &self.0
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }

    pub fn types(&self) -> Vec<FiniteType> {
        self.0.iter().map(|(_, t)| t.clone()).collect()
    }

    pub fn terms(&self) -> Vec<Term> {
        self.0
            .iter()
            .map(|(n, t)| Term::var(n.clone(), t.clone()))
            .collect()
    }

    pub fn has_distinct_names(&self) -> bool {
        let names: BTreeSet<_> = self.names().collect();
        names.len() == self.len()
    }

    /// True if no name of the tuple is in `avoid`.
    pub fn is_fresh_for(&self, avoid: &BTreeSet<Name>) -> bool {
        self.names().all(|n| !avoid.contains(n))
    }

    pub fn into_vec(self) -> Vec<(Name, FiniteType)> {
        self.0
    }
}

impl fmt::Display for VarTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (n, ty)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n} : {ty}")?;
        }
        write!(f, "]")
    }
}

/// Fresh variables `z0, z1, ...` of the given types, avoiding `avoid`.
pub fn fresh_tuple(types: &[FiniteType], avoid: &BTreeSet<Name>) -> VarTuple {
    let mut supply = NameSupply::new(avoid.iter().cloned());
    VarTuple::new(
        types
            .iter()
            .map(|ty| (supply.fresh_indexed("z"), ty.clone()))
            .collect(),
    )
}
