//! Concrete syntax for types, terms and formulas.
//!
//! ```text
//! type    := "0" | "1" | "(" type "->" type ")"
//! term    := ident | decimal | "S" term | term "+" term | term "*" term
//!          | "proj[" type "," type "]" | "subst[" type "," type "," type "]"
//!          | "rec[" type "]" | "(S)" | "(+)" | "(*)"
//!          | term term | "\" ident ":" type "." term | "(" term ")"
//! formula := "bot" | term "=" term | term "=(" type ")" term
//!          | formula "&" formula | formula "|" formula | formula "->" formula
//!          | "~" formula | "!" ident ":" type "." formula
//!          | "?" ident ":" type "." formula | "(" formula ")"
//! ```
//!
//! Equations between higher-type terms are expanded pointwise while
//! parsing. Free variables must be declared with `var x : τ.` first.
//!
//! Files hold `#` comments, `var` declarations, and named items
//! `formula NAME := ... .` / `term NAME := ... .`.

mod lexer;
mod parser;
mod printer;

pub use lexer::line_col;

use parser::Parser;

use crate::error::Result;
use crate::syntax::{FiniteType, Formula, Name, Term};

/// Source text together with where it came from.
#[derive(Clone, Debug)]
pub struct SourceText {
    pub text: String,
    pub origin: String,
}

impl SourceText {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> SourceText {
        SourceText {
            text: text.into(),
            origin: origin.into(),
        }
    }

    /// 1-based line and column of a byte offset.
    pub fn position(&self, offset: usize) -> (usize, usize) {
        line_col(&self.text, offset)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Type,
    Term,
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Type(FiniteType),
    Term(Term),
    Formula(Formula),
}

impl std::fmt::Display for Node {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Node::Type(t) => t.fmt(f),
            Node::Term(t) => t.fmt(f),
            Node::Formula(a) => a.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemBody {
    Formula(Formula),
    Term(Term),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub name: Name,
    /// Line of the `formula`/`term` keyword.
    pub line: usize,
    pub body: ItemBody,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub origin: String,
    pub vars: Vec<(Name, FiniteType)>,
    pub items: Vec<Item>,
}

impl Document {
    pub fn item(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|it| it.name == name)
    }
}

/// Parses one node. The text may start with `var` declarations.
pub fn parse(kind: Kind, src: &SourceText) -> Result<Node> {
    let mut p = Parser::new(&src.text, &[])?;
    p.parse_preamble()?;
    let node = match kind {
        Kind::Type => Node::Type(p.parse_type()?),
        Kind::Term => Node::Term(p.parse_term()?),
        Kind::Formula => Node::Formula(p.parse_formula()?),
    };
    p.expect_eof()?;
    Ok(node)
}

pub fn parse_type(text: &str) -> Result<FiniteType> {
    let mut p = Parser::new(text, &[])?;
    let t = p.parse_type()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a term whose free variables are declared in `vars` (or in a
/// leading `var` preamble).
pub fn parse_term_in(text: &str, vars: &[(Name, FiniteType)]) -> Result<Term> {
    let mut p = Parser::new(text, vars)?;
    p.parse_preamble()?;
    let t = p.parse_term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_formula_in(text: &str, vars: &[(Name, FiniteType)]) -> Result<Formula> {
    let mut p = Parser::new(text, vars)?;
    p.parse_preamble()?;
    let f = p.parse_formula()?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term> {
    parse_term_in(text, &[])
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_in(text, &[])
}

pub fn parse_document(src: &SourceText) -> Result<Document> {
    let mut p = Parser::new(&src.text, &[])?;
    let (vars, items) = p.parse_document()?;
    Ok(Document::from_parts(src.origin.clone(), vars, items))
}

/// Printed form of any node; identical to its `Display` output.
pub fn print(node: &Node) -> String {
    node.to_string()
}
