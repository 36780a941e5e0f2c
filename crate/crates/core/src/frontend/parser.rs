use super::lexer::{line_col, syntax_error, tokenize, Tok, Token};
use super::{Document, Item, ItemBody};
use crate::error::{Error, Result};
use crate::syntax::{expand_higher_eq, is_reserved, FiniteType, Formula, Name, Prim, Term};

/// Declared variables, in declaration order.
type Context = Vec<(Name, FiniteType)>;

pub(crate) struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<(Name, FiniteType)>,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str, declared: &[(Name, FiniteType)]) -> Result<Parser<'a>> {
        Ok(Parser {
            text,
            toks: tokenize(text)?,
            pos: 0,
            scope: declared.to_vec(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        syntax_error(self.text, self.offset(), message)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn locate(&self, offset: usize, err: Error) -> Error {
        if matches!(err, Error::Syntax { .. } | Error::Located { .. }) {
            return err;
        }
        let (line, column) = line_col(self.text, offset);
        Error::Located {
            line,
            column,
            inner: Box::new(err),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn expect_eof(&mut self) -> Result<()> {
        self.expect(Tok::Eof)
    }

    fn binder_name(&mut self) -> Result<Name> {
        match self.peek().clone() {
            Tok::Ident(name) if !is_reserved(&name) => {
                self.advance();
                Ok(name)
            }
            Tok::Ident(name) => Err(self.error(format!("`{name}` is reserved"))),
            _ => Err(self.unexpected("an identifier")),
        }
    }

    // ---- types ----

    pub fn parse_type(&mut self) -> Result<FiniteType> {
        match self.peek().clone() {
            Tok::Num(0) => {
                self.advance();
                Ok(FiniteType::Nat)
            }
            Tok::Num(1) => {
                self.advance();
                Ok(FiniteType::one())
            }
            Tok::LParen => {
                self.advance();
                self.paren_type_body()
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    /// The part of a parenthesized type after `(`: `τ1 -> ... -> τn )`.
    fn paren_type_body(&mut self) -> Result<FiniteType> {
        let mut parts = vec![self.parse_type()?];
        while *self.peek() == Tok::Arrow {
            self.advance();
            parts.push(self.parse_type()?);
        }
        self.expect(Tok::RParen)?;
        let last = parts.pop().expect("at least one type");
        Ok(parts
            .into_iter()
            .rev()
            .fold(last, |acc, dom| FiniteType::arrow(dom, acc)))
    }

    // ---- terms ----

    pub fn parse_term(&mut self) -> Result<Term> {
        Ok(self.term()?.0)
    }

    fn term(&mut self) -> Result<(Term, FiniteType)> {
        if *self.peek() == Tok::Backslash {
            self.advance();
            let name = self.binder_name()?;
            self.expect(Tok::Colon)?;
            let ty = self.parse_type()?;
            self.expect(Tok::Dot)?;
            self.scope.push((name.clone(), ty.clone()));
            let body = self.term();
            self.scope.pop();
            let (body, body_ty) = body?;
            return Ok((
                Term::lam(name, ty.clone(), body),
                FiniteType::arrow(ty, body_ty),
            ));
        }
        self.sum()
    }

    fn require_nat(&self, offset: usize, t: &Term, ty: &FiniteType) -> Result<()> {
        if ty.is_nat() {
            Ok(())
        } else {
            Err(self.locate(offset, Error::mismatch(t, FiniteType::Nat, ty)))
        }
    }

    fn sum(&mut self) -> Result<(Term, FiniteType)> {
        let start = self.offset();
        let (mut acc, ty) = self.product()?;
        if *self.peek() == Tok::Plus {
            self.require_nat(start, &acc, &ty)?;
        }
        while *self.peek() == Tok::Plus {
            self.advance();
            let at = self.offset();
            let (rhs, rty) = self.product()?;
            self.require_nat(at, &rhs, &rty)?;
            acc = Term::add(acc, rhs);
        }
        Ok((acc, ty))
    }

    fn product(&mut self) -> Result<(Term, FiniteType)> {
        let start = self.offset();
        let (mut acc, ty) = self.application()?;
        if *self.peek() == Tok::Star {
            self.require_nat(start, &acc, &ty)?;
        }
        while *self.peek() == Tok::Star {
            self.advance();
            let at = self.offset();
            let (rhs, rty) = self.application()?;
            self.require_nat(at, &rhs, &rty)?;
            acc = Term::mul(acc, rhs);
        }
        Ok((acc, ty))
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !matches!(s.as_str(), "S" | "bot" | "var" | "formula" | "term"),
            Tok::Num(_) | Tok::LParen => true,
            _ => false,
        }
    }

    fn application(&mut self) -> Result<(Term, FiniteType)> {
        let (mut head, mut ty) = if self.is_keyword("S") {
            self.succ_chain()?
        } else {
            self.atom()?
        };
        while self.starts_atom() {
            let at = self.offset();
            let (arg, aty) = self.atom()?;
            ty = match ty {
                FiniteType::Arrow(dom, cod) if *dom == aty => *cod,
                FiniteType::Arrow(dom, _) => {
                    return Err(self.locate(at, Error::mismatch(&arg, dom, aty)))
                }
                FiniteType::Nat => {
                    return Err(self.locate(
                        at,
                        Error::mismatch(&head, "a function type", FiniteType::Nat),
                    ))
                }
            };
            head = Term::app(head, arg);
        }
        Ok((head, ty))
    }

    /// `S` followed by an atom or another `S` chain.
    fn succ_chain(&mut self) -> Result<(Term, FiniteType)> {
        if self.is_keyword("S") {
            self.advance();
            let at = self.offset();
            let (arg, ty) = self.succ_chain()?;
            self.require_nat(at, &arg, &ty)?;
            Ok((Term::succ(arg), FiniteType::Nat))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<(Term, FiniteType)> {
        let start = self.offset();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.advance();
                Ok((Term::numeral(n), FiniteType::Nat))
            }
            Tok::LParen => {
                let prim = match (self.peek_at(1), self.peek_at(2)) {
                    (Tok::Plus, Tok::RParen) => Some(Prim::Add),
                    (Tok::Star, Tok::RParen) => Some(Prim::Mul),
                    (Tok::Ident(s), Tok::RParen) if s == "S" => Some(Prim::Succ),
                    _ => None,
                };
                if let Some(p) = prim {
                    self.pos += 3;
                    return Ok((Term::Prim(p), p.ty()));
                }
                self.advance();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) => match name.as_str() {
                "proj" => {
                    self.advance();
                    self.expect(Tok::LBrack)?;
                    let rho = self.parse_type()?;
                    self.expect(Tok::Comma)?;
                    let tau = self.parse_type()?;
                    self.expect(Tok::RBrack)?;
                    let t = Term::Proj(rho, tau);
                    let ty = crate::syntax::constant_type(&t).expect("constant");
                    Ok((t, ty))
                }
                "subst" => {
                    self.advance();
                    self.expect(Tok::LBrack)?;
                    let delta = self.parse_type()?;
                    self.expect(Tok::Comma)?;
                    let rho = self.parse_type()?;
                    self.expect(Tok::Comma)?;
                    let tau = self.parse_type()?;
                    self.expect(Tok::RBrack)?;
                    let t = Term::Subst(delta, rho, tau);
                    let ty = crate::syntax::constant_type(&t).expect("constant");
                    Ok((t, ty))
                }
                "rec" => {
                    self.advance();
                    self.expect(Tok::LBrack)?;
                    let sigma = self.parse_type()?;
                    self.expect(Tok::RBrack)?;
                    let t = Term::Rec(sigma);
                    let ty = crate::syntax::constant_type(&t).expect("constant");
                    Ok((t, ty))
                }
                _ if is_reserved(&name) => Err(self.unexpected("a term")),
                _ => {
                    self.advance();
                    match self.scope.iter().rev().find(|(n, _)| *n == name) {
                        Some((_, ty)) => Ok((Term::var(name.clone(), ty.clone()), ty.clone())),
                        None => Err(self.locate(start, Error::UnboundVariable { name })),
                    }
                }
            },
            _ => Err(self.unexpected("a term")),
        }
    }

    // ---- formulas ----

    pub fn parse_formula(&mut self) -> Result<Formula> {
        self.implication()
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.advance();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.advance();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Tilde => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Bang | Tok::Question => {
                let universal = *self.peek() == Tok::Bang;
                self.advance();
                let name = self.binder_name()?;
                self.expect(Tok::Colon)?;
                let ty = self.parse_type()?;
                self.expect(Tok::Dot)?;
                self.scope.push((name.clone(), ty.clone()));
                let body = self.parse_formula();
                self.scope.pop();
                let body = body?;
                Ok(if universal {
                    Formula::forall(name, ty, body)
                } else {
                    Formula::exists(name, ty, body)
                })
            }
            _ => self.formula_atom(),
        }
    }

    fn formula_atom(&mut self) -> Result<Formula> {
        if self.is_keyword("bot") {
            self.advance();
            return Ok(Formula::Bot);
        }
        if *self.peek() != Tok::LParen {
            return self.equation();
        }
        // `(` opens either a formula or a term; try the formula reading first.
        let saved_pos = self.pos;
        let saved_scope = self.scope.len();
        let as_formula = (|| {
            self.advance();
            let f = self.parse_formula()?;
            self.expect(Tok::RParen)?;
            Ok(f)
        })();
        match as_formula {
            Ok(f) if !matches!(self.peek(), Tok::Eq | Tok::EqTyped | Tok::Plus | Tok::Star) => {
                Ok(f)
            }
            other => {
                self.pos = saved_pos;
                self.scope.truncate(saved_scope);
                match self.equation() {
                    Ok(f) => Ok(f),
                    Err(eq_err) => match other {
                        Err(f_err) if error_position(&f_err) > error_position(&eq_err) => {
                            Err(f_err)
                        }
                        _ => Err(eq_err),
                    },
                }
            }
        }
    }

    fn equation(&mut self) -> Result<Formula> {
        let start = self.offset();
        let (lhs, lty) = self.term()?;
        let asserted = match self.peek() {
            Tok::Eq => {
                self.advance();
                None
            }
            Tok::EqTyped => {
                self.advance();
                Some(self.paren_type_body()?)
            }
            _ => return Err(self.unexpected("`=`")),
        };
        let rhs_at = self.offset();
        let (rhs, rty) = self.term()?;
        if let Some(ty) = &asserted {
            if *ty != lty {
                return Err(self.locate(start, Error::mismatch(&lhs, ty, &lty)));
            }
        }
        if lty != rty {
            return Err(self.locate(rhs_at, Error::mismatch(&rhs, &lty, &rty)));
        }
        if lty.is_nat() {
            Ok(Formula::eq(lhs, rhs))
        } else {
            expand_higher_eq(&lhs, &rhs).map_err(|e| self.locate(start, e))
        }
    }

    // ---- files ----

    /// `var x : τ.` declarations at the current position.
    pub fn parse_preamble(&mut self) -> Result<()> {
        while self.is_keyword("var") {
            self.var_decl()?;
        }
        Ok(())
    }

    fn var_decl(&mut self) -> Result<()> {
        self.advance();
        let at = self.offset();
        let name = self.binder_name()?;
        self.expect(Tok::Colon)?;
        let ty = self.parse_type()?;
        self.expect(Tok::Dot)?;
        if self.scope.iter().any(|(n, _)| *n == name) {
            return Err(syntax_error(
                self.text,
                at,
                format!("variable `{name}` declared twice"),
            ));
        }
        self.scope.push((name, ty));
        Ok(())
    }

    pub fn parse_document(&mut self) -> Result<(Context, Vec<Item>)> {
        let mut items: Vec<Item> = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(kw) if kw == "var" => self.var_decl()?,
                Tok::Ident(kw) if kw == "formula" || kw == "term" => {
                    let (line, _) = line_col(self.text, self.offset());
                    self.advance();
                    let name_at = self.offset();
                    let name = self.binder_name()?;
                    if items.iter().any(|it| it.name == name) {
                        return Err(syntax_error(
                            self.text,
                            name_at,
                            format!("item `{name}` defined twice"),
                        ));
                    }
                    self.expect(Tok::Define)?;
                    let body = if kw == "formula" {
                        ItemBody::Formula(self.parse_formula()?)
                    } else {
                        ItemBody::Term(self.parse_term()?)
                    };
                    self.expect(Tok::Dot)?;
                    items.push(Item { name, line, body });
                }
                _ => return Err(self.unexpected("`var`, `formula` or `term`")),
            }
        }
        Ok((self.scope.clone(), items))
    }
}

fn error_position(e: &Error) -> (usize, usize) {
    match e {
        Error::Syntax { line, column, .. } | Error::Located { line, column, .. } => {
            (*line, *column)
        }
        _ => (0, 0),
    }
}

impl Document {
    pub(crate) fn from_parts(
        origin: String,
        vars: Vec<(Name, FiniteType)>,
        items: Vec<Item>,
    ) -> Document {
        Document {
            origin,
            vars,
            items,
        }
    }
}
