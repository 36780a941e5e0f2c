use std::fmt;

/// A finite type: the base type `0` of natural numbers, or a function type.
///
/// Type `1` is not a separate variant; [`FiniteType::one`] builds `0 -> 0`
/// so the abbreviation and its expansion compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiniteType {
    Nat,
    Arrow(Box<FiniteType>, Box<FiniteType>),
}

impl FiniteType {
    pub fn arrow(domain: FiniteType, codomain: FiniteType) -> FiniteType {
        FiniteType::Arrow(Box::new(domain), Box::new(codomain))
    }

    /// The type `1`, i.e. `0 -> 0`.
    pub fn one() -> FiniteType {
        FiniteType::arrow(FiniteType::Nat, FiniteType::Nat)
    }

    /// `σ1 -> ... -> σk -> self`, curried left to right.
    pub fn curried_over<'a, I>(self, domains: I) -> FiniteType
    where
        I: IntoIterator<Item = &'a FiniteType>,
        I::IntoIter: DoubleEndedIterator,
    {
        domains
            .into_iter()
            .rev()
            .fold(self, |acc, dom| FiniteType::arrow(dom.clone(), acc))
    }

    /// level(0) = 0, level(ρ -> τ) = max(level(ρ) + 1, level(τ)).
    pub fn level(&self) -> usize {
        match self {
            FiniteType::Nat => 0,
            FiniteType::Arrow(dom, cod) => (dom.level() + 1).max(cod.level()),
        }
    }

    pub fn is_nat(&self) -> bool {
        matches!(self, FiniteType::Nat)
    }

    /// Splits `ρ1 -> ... -> ρk -> 0` into its argument types.
    pub fn argument_types(&self) -> Vec<&FiniteType> {
        let mut args = Vec::new();
        let mut cur = self;
        while let FiniteType::Arrow(dom, cod) = cur {
            args.push(dom.as_ref());
            cur = cod;
        }
        args
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::Nat => write!(f, "0"),
            FiniteType::Arrow(dom, cod) => write!(f, "({dom}->{cod})"),
        }
    }
}
