//! Text grammar for polynomials, 1-forms and vector fields:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := int ['/' int] | var ['^' ['-'] int] | 'd(' var ')' | 'D(' var ')' | '(' expr ')' ['^' int]
//! ```
//!
//! `d(x)` is the differential `dx`, `D(x)` the derivation `d/dx`; a term
//! carries at most one of them. Juxtaposition multiplies, so `(x + y)d(z)`
//! and `(x + y)*d(z)` agree. Negative powers are accepted only on variables
//! the context flags as Laurent.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExponentVec, Poly, Polynomial, Rational, Rationals};
use crate::foliation::{OneForm, PolyContext, VectorField};

/// The basis element a term is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// `d(x_i)`.
    Differential(usize),
    /// `D(x_i)`.
    Derivation(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprKind {
    Polynomial,
    OneForm,
    VectorField,
    Mixed,
}

/// A normalized sum of terms `coefficient * monomial * [basis]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprAst {
    nvars: usize,
    terms: BTreeMap<(Option<Basis>, ExponentVec), Rational>,
}

impl ExprAst {
    fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    fn single(nvars: usize, basis: Option<Basis>, e: ExponentVec, c: Rational) -> Self {
        let mut out = Self::zero(nvars);
        out.add_term(basis, e, c);
        out
    }

    fn add_term(&mut self, basis: Option<Basis>, e: ExponentVec, c: Rational) {
        let key = (basis, e);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn add(mut self, other: Self, sign: i64) -> Self {
        for ((b, e), c) in other.terms {
            self.add_term(b, e, if sign < 0 { -c } else { c });
        }
        self
    }

    fn mul(&self, other: &Self) -> std::result::Result<Self, String> {
        let mut out = Self::zero(self.nvars);
        for ((b1, e1), c1) in &self.terms {
            for ((b2, e2), c2) in &other.terms {
                let basis = match (b1, b2) {
                    (None, b) | (b, None) => *b,
                    (Some(Basis::Differential(_)), Some(Basis::Derivation(_)))
                    | (Some(Basis::Derivation(_)), Some(Basis::Differential(_))) => {
                        return Err("mixed d and D in one term".into())
                    }
                    _ => return Err("at most one basis symbol per term".into()),
                };
                out.add_term(basis, e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Option<Basis>, &ExponentVec, &Rational)> {
        self.terms.iter().map(|((b, e), c)| (*b, e, c))
    }

    /// The kind shared by all terms; the zero expression counts as a polynomial.
    pub fn kind(&self) -> ExprKind {
        let mut kinds = self.terms.keys().map(|(b, _)| match b {
            None => ExprKind::Polynomial,
            Some(Basis::Differential(_)) => ExprKind::OneForm,
            Some(Basis::Derivation(_)) => ExprKind::VectorField,
        });
        let Some(first) = kinds.next() else {
            return ExprKind::Polynomial;
        };
        if kinds.all(|k| k == first) {
            first
        } else {
            ExprKind::Mixed
        }
    }

    fn component(&self, basis: Option<Basis>) -> Polynomial {
        Poly::from_terms(
            Rationals,
            self.nvars,
            None,
            self.terms.iter().filter(|((b, _), _)| *b == basis).map(|((_, e), c)| (e.clone(), c.clone())),
        )
    }

    fn expect_kind(&self, want: ExprKind) -> Result<()> {
        let k = self.kind();
        if k == want || self.is_zero() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("expected a {want:?} expression, found {k:?}")))
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        self.expect_kind(ExprKind::Polynomial)?;
        Ok(self.component(None))
    }

    pub fn to_one_form(&self, ctx: &Arc<PolyContext>) -> Result<OneForm> {
        self.expect_kind(ExprKind::OneForm)?;
        let comps = (0..self.nvars).map(|i| self.component(Some(Basis::Differential(i)))).collect();
        OneForm::new(ctx.clone(), comps)
    }

    pub fn to_vector_field(&self, ctx: &Arc<PolyContext>) -> Result<VectorField> {
        self.expect_kind(ExprKind::VectorField)?;
        let comps = (0..self.nvars).map(|i| self.component(Some(Basis::Derivation(i)))).collect();
        VectorField::new(ctx.clone(), comps)
    }

    pub fn from_polynomial(f: &Polynomial) -> Self {
        Self::from_components(f.nvars(), [(None, f)])
    }

    pub fn from_one_form(w: &OneForm) -> Self {
        Self::from_components(w.ctx().nvars(), w.comps().iter().enumerate().map(|(i, c)| (Some(Basis::Differential(i)), c)))
    }

    pub fn from_vector_field(v: &VectorField) -> Self {
        Self::from_components(v.ctx().nvars(), v.comps().iter().enumerate().map(|(i, c)| (Some(Basis::Derivation(i)), c)))
    }

    fn from_components<'a>(nvars: usize, parts: impl IntoIterator<Item = (Option<Basis>, &'a Polynomial)>) -> Self {
        let mut out = Self::zero(nvars);
        for (b, f) in parts {
            for (e, c) in f.terms() {
                out.add_term(b, e.clone(), c.clone());
            }
        }
        out
    }

    /// Text in the grammar: terms grouped by basis in variable order, highest
    /// monomial first within a group.
    pub fn render(&self, ctx: &PolyContext) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|((b1, e1), _), ((b2, e2), _)| b1.cmp(b2).then_with(|| e2.cmp(e1)));
        let mut out = String::new();
        for (k, ((b, e), c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let mono = e.as_slice().iter().enumerate().filter(|(_, &p)| p != 0).map(|(i, &p)| {
                if p == 1 {
                    ctx.name(i).to_string()
                } else {
                    format!("{}^{}", ctx.name(i), p)
                }
            });
            factors.extend(mono);
            match b {
                Some(Basis::Differential(i)) => factors.push(format!("d({})", ctx.name(*i))),
                Some(Basis::Derivation(i)) => factors.push(format!("D({})", ctx.name(*i))),
                None => {}
            }
            if !abs.is_one() || factors.is_empty() {
                let num = if abs.is_integer() { abs.numer().to_string() } else { format!("{}/{}", abs.numer(), abs.denom()) };
                factors.insert(0, num);
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

pub fn render_polynomial(f: &Polynomial, ctx: &PolyContext) -> String {
    ExprAst::from_polynomial(f).render(ctx)
}

pub fn render_one_form(w: &OneForm) -> String {
    ExprAst::from_one_form(w).render(w.ctx())
}

pub fn render_vector_field(v: &VectorField) -> String {
    ExprAst::from_vector_field(v).render(v.ctx())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::Parse { pos, msg: format!("unexpected character {ch:?}") }),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ctx: &'a PolyContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.at += 1;
            }
            Some(Tok::Plus) => self.at += 1,
            _ => {}
        }
        let mut acc = ExprAst::zero(self.ctx.nvars()).add(self.term()?, sign);
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.at += 1;
            acc = acc.add(self.term()?, sign);
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let f = self.factor()?;
            acc = acc.mul(&f).map_err(|msg| Error::Parse { pos, msg })?;
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v: i64 = i64::try_from(&n).map_err(|_| Error::Parse { pos: self.pos(), msg: "exponent too large".into() })?;
                Ok(if neg { -v } else { v })
            }
            _ => {
                self.at -= 1;
                self.err("expected an integer exponent")
            }
        }
    }

    fn exponent(&mut self) -> Result<Option<(usize, i64)>> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.at += 1;
        let pos = self.pos();
        let k = if self.peek() == Some(&Tok::LParen) {
            self.at += 1;
            let k = self.integer()?;
            self.expect(Tok::RParen, "')'")?;
            k
        } else {
            self.integer()?
        };
        if k.unsigned_abs() > i32::MAX as u64 {
            return Err(Error::Parse { pos, msg: "exponent too large".into() });
        }
        Ok(Some((pos, k)))
    }

    fn variable(&mut self) -> Result<usize> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => match self.ctx.index_of(&name) {
                Some(i) => {
                    self.at += 1;
                    Ok(i)
                }
                None => self.err(format!("unknown variable {name}")),
            },
            _ => self.err("expected a variable"),
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let n = self.ctx.nvars();
        let zero = ExponentVec::zero(n);
        match self.peek().cloned() {
            Some(Tok::Num(num)) => {
                self.at += 1;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    match self.bump() {
                        Some(Tok::Num(den)) if !den.is_zero() => value /= Rational::from_integer(den),
                        Some(Tok::Num(_)) => {
                            self.at -= 1;
                            return self.err("zero denominator");
                        }
                        _ => {
                            self.at -= 1;
                            return self.err("expected a denominator");
                        }
                    }
                }
                Ok(ExprAst::single(n, None, zero, value))
            }
            Some(Tok::Ident(name)) if (name == "d" || name == "D") && self.peek2() == Some(&Tok::LParen) => {
                self.at += 2;
                let i = self.variable()?;
                self.expect(Tok::RParen, "')'")?;
                let basis = if name == "d" { Basis::Differential(i) } else { Basis::Derivation(i) };
                Ok(ExprAst::single(n, Some(basis), zero, Rational::one()))
            }
            Some(Tok::Ident(_)) => {
                let i = self.variable()?;
                let k = match self.exponent()? {
                    Some((pos, k)) => {
                        if k < 0 && !self.ctx.is_laurent(i) {
                            return Err(Error::Parse { pos, msg: format!("negative power of non-Laurent variable {}", self.ctx.name(i)) });
                        }
                        k as i32
                    }
                    None => 1,
                };
                let mut e = vec![0; n];
                e[i] = k;
                Ok(ExprAst::single(n, None, ExponentVec::new(e), Rational::one()))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                match self.exponent()? {
                    None => Ok(inner),
                    Some((pos, k)) if k < 0 => Err(Error::Parse { pos, msg: "negative power of a parenthesized expression".into() }),
                    Some((pos, k)) => {
                        let mut acc = ExprAst::single(n, None, zero, Rational::one());
                        for _ in 0..k {
                            acc = acc.mul(&inner).map_err(|msg| Error::Parse { pos, msg })?;
                        }
                        Ok(acc)
                    }
                }
            }
            Some(_) => self.err("expected a number, variable, d(..), D(..) or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str, ctx: &PolyContext) -> Result<ExprAst> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, at: 0, end: text.len(), ctx };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

pub fn parse_polynomial(text: &str, ctx: &PolyContext) -> Result<Polynomial> {
    parse_expr(text, ctx)?.to_polynomial()
}

pub fn parse_one_form(text: &str, ctx: &Arc<PolyContext>) -> Result<OneForm> {
    parse_expr(text, ctx)?.to_one_form(ctx)
}

pub fn parse_vector_field(text: &str, ctx: &Arc<PolyContext>) -> Result<VectorField> {
    parse_expr(text, ctx)?.to_vector_field(ctx)
}
