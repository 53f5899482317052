//! The text grammar shared by input files, JSON-embedded polynomials and
//! test fixtures.
//!
//! ```text
//! # GKOS example, m = 1
//! states x1; controls u1
//! ode: x1' = 1
//! eq: u1 - x1^2
//! eq: u1^2
//! ```
//!
//! Variables are `x<k>` (states), `u<k>` (controls) and `y<k>` (auxiliary).
//! Derivatives are written `x1'`, `x1''` or `x1^(3)`; powers `x1^2`.
//! Coefficients are integers or `a/b`. Multiplication is always explicit.
//! Statements are separated by `;` or newlines, and `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::diffcore::order_of;
use crate::ring::{DiffPoly, DiffVar, Family, JetVar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Undeclared,
    NonSemiexplicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind:?} error at {line}:{col}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(DiffVar),
    Keyword(&'static str),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Prime,
    Colon,
    Equals,
    Comma,
    Sep,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const KEYWORDS: [&str; 7] = ["states", "controls", "aux", "ode", "eq", "diff", "claim"];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let simple = match c {
                '#' => break,
                ' ' | '\t' | '\r' => {
                    i += 1;
                    continue;
                }
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                '^' => Some(Tok::Caret),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '\'' => Some(Tok::Prime),
                ':' => Some(Tok::Colon),
                '=' => Some(Tok::Equals),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Sep),
                _ => None,
            };
            if let Some(tok) = simple {
                out.push(Token { tok, line: line_no, col });
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: line_no, col });
                continue;
            }
            if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if let Some(k) = KEYWORDS.iter().find(|&&k| k == word) {
                    out.push(Token { tok: Tok::Keyword(k), line: line_no, col });
                    continue;
                }
                let var = word
                    .chars()
                    .next()
                    .and_then(Family::from_prefix)
                    .zip(word[1..].parse::<u32>().ok().filter(|&k| k >= 1 && !word[1..].starts_with('0')));
                match var {
                    Some((family, index)) => {
                        out.push(Token { tok: Tok::Var(DiffVar::new(family, index)), line: line_no, col })
                    }
                    None => {
                        return Err(ParseError {
                            kind: ParseErrorKind::Lexical,
                            line: line_no,
                            col,
                            message: format!("unknown identifier `{word}` (expected x<k>, u<k> or y<k>)"),
                        })
                    }
                }
                continue;
            }
            return Err(ParseError {
                kind: ParseErrorKind::Lexical,
                line: line_no,
                col,
                message: format!("unexpected character `{c}`"),
            });
        }
        out.push(Token { tok: Tok::Sep, line: line_no, col: chars.len() + 1 });
    }
    let (line, col) = out.last().map(|t| (t.line, t.col)).unwrap_or((1, 1));
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

/// One equation line of a document, in source order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equation {
    /// `ode: x_i' = rhs`, the generator `x_i' − rhs`.
    Ode(DiffVar, DiffPoly),
    /// `eq: g`, an algebraic constraint `g = 0`.
    Eq(DiffPoly),
    /// `diff: f`, a general-order equation `f = 0`.
    Diff(DiffPoly),
}

impl Equation {
    pub fn generator(&self) -> DiffPoly {
        match self {
            Equation::Ode(x, rhs) => &DiffPoly::var(x.jet(1)) - rhs,
            Equation::Eq(p) | Equation::Diff(p) => p.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputDocument {
    pub states: Vec<DiffVar>,
    pub controls: Vec<DiffVar>,
    pub aux: Vec<DiffVar>,
    pub equations: Vec<Equation>,
    pub claim: Option<DiffPoly>,
}

impl InputDocument {
    /// Generators in document order; ode lines contribute `x' − rhs`.
    pub fn generators(&self) -> Vec<DiffPoly> {
        self.equations.iter().map(Equation::generator).collect()
    }

    pub fn has_diff_lines(&self) -> bool {
        self.equations.iter().any(|e| matches!(e, Equation::Diff(_)))
    }

    fn declared(&self, v: DiffVar) -> bool {
        self.states.contains(&v) || self.controls.contains(&v) || self.aux.contains(&v)
    }
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[DiffVar]| vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        if !self.states.is_empty() {
            writeln!(f, "states {}", list(&self.states))?;
        }
        if !self.controls.is_empty() {
            writeln!(f, "controls {}", list(&self.controls))?;
        }
        if !self.aux.is_empty() {
            writeln!(f, "aux {}", list(&self.aux))?;
        }
        for e in &self.equations {
            match e {
                Equation::Ode(x, rhs) => writeln!(f, "ode: {x}' = {rhs}")?,
                Equation::Eq(p) => writeln!(f, "eq: {p}")?,
                Equation::Diff(p) => writeln!(f, "diff: {p}")?,
            }
        }
        if let Some(c) = &self.claim {
            writeln!(f, "claim: {c}")?;
        }
        Ok(())
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// `None` accepts any variable (standalone polynomials).
    declared: Option<BTreeSet<DiffVar>>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { kind, line, col, message: message.into() }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax, message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let v = u32::try_from(&n).map_err(|_| self.syntax("integer too large"))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.syntax("expected a nonnegative integer")),
        }
    }

    fn expr(&mut self) -> Result<DiffPoly, ParseError> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        match self.peek() {
            Tok::Var(_) | Tok::Int(_) | Tok::LParen => {
                Err(self.syntax("implicit multiplication is not allowed; use `*`"))
            }
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<DiffPoly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            if *self.peek() == Tok::LParen {
                return Err(self.syntax("derivative `^(j)` must follow a variable; exponents are plain integers"));
            }
            let e = self.uint()?;
            base = base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffPoly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = match self.peek().clone() {
                        Tok::Int(d) => d,
                        _ => return Err(self.syntax("expected a denominator after `/`")),
                    };
                    if d == BigInt::from(0) {
                        return Err(self.syntax("zero denominator"));
                    }
                    self.bump();
                    return Ok(DiffPoly::constant(Rational::new(n, d)));
                }
                Ok(DiffPoly::constant(Rational::from_integer(n)))
            }
            Tok::Var(_) => Ok(DiffPoly::var(self.jet()?)),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::End | Tok::Sep => Err(self.syntax("unexpected end of expression")),
            other => Err(self.syntax(format!("unexpected token {other:?}"))),
        }
    }

    fn jet(&mut self) -> Result<JetVar, ParseError> {
        let (line, col) = self.here();
        let Tok::Var(v) = self.peek().clone() else {
            return Err(self.syntax("expected a variable"));
        };
        if let Some(declared) = &self.declared {
            if !declared.contains(&v) {
                return Err(ParseError {
                    kind: ParseErrorKind::Undeclared,
                    line,
                    col,
                    message: format!("`{v}` is not declared"),
                });
            }
        }
        self.bump();
        let mut order = 0;
        while *self.peek() == Tok::Prime {
            self.bump();
            order += 1;
        }
        let is_deriv = order == 0
            && *self.peek() == Tok::Caret
            && self.toks.get(self.pos + 1).is_some_and(|t| t.tok == Tok::LParen);
        if is_deriv {
            self.bump();
            self.bump();
            order = self.uint()?;
            self.expect(Tok::RParen, "`)` closing the derivative order")?;
        }
        Ok(v.jet(order))
    }

    fn at_statement_end(&self) -> bool {
        matches!(self.peek(), Tok::Sep | Tok::End)
    }

    fn var_list(&mut self, family: Family) -> Result<Vec<DiffVar>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Var(v) if v.family == family => {
                    self.bump();
                    out.push(v);
                }
                Tok::Var(v) => {
                    return Err(self.syntax(format!("`{v}` cannot be declared here (expected {}<k>)", family.prefix())))
                }
                _ => return Err(self.syntax("expected a variable name")),
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    /// `lhs` or `lhs = rhs` (meaning `lhs − rhs`).
    fn equation_body(&mut self) -> Result<DiffPoly, ParseError> {
        let lhs = self.expr()?;
        if *self.peek() == Tok::Equals {
            self.bump();
            let rhs = self.expr()?;
            return Ok(&lhs - &rhs);
        }
        Ok(lhs)
    }
}

/// Parses a complete input document.
pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let toks = lex(text)?;
    let mut doc = InputDocument::default();
    let mut p = Parser { toks, pos: 0, declared: Some(BTreeSet::new()) };
    loop {
        match p.peek().clone() {
            Tok::End => break,
            Tok::Sep => {
                p.bump();
            }
            Tok::Keyword(k) => {
                p.bump();
                match k {
                    "states" | "controls" | "aux" => {
                        let family = match k {
                            "states" => Family::State,
                            "controls" => Family::Control,
                            _ => Family::Aux,
                        };
                        let vars = p.var_list(family)?;
                        for v in &vars {
                            if doc.declared(*v) {
                                return Err(p.syntax(format!("`{v}` declared twice")));
                            }
                        }
                        p.declared.as_mut().expect("document mode").extend(vars.iter().copied());
                        match family {
                            Family::State => doc.states.extend(vars),
                            Family::Control => doc.controls.extend(vars),
                            Family::Aux => doc.aux.extend(vars),
                        }
                    }
                    "ode" => {
                        p.expect(Tok::Colon, "`:` after `ode`")?;
                        let (line, col) = p.here();
                        let lhs = p.jet()?;
                        let non_semi = |message: String| ParseError {
                            kind: ParseErrorKind::NonSemiexplicit,
                            line,
                            col,
                            message,
                        };
                        if lhs.der_order() != 1 || !doc.states.contains(&lhs.var()) {
                            return Err(non_semi(format!(
                                "ode left side must be the first derivative of a declared state, got `{lhs}`"
                            )));
                        }
                        if doc.equations.iter().any(|e| matches!(e, Equation::Ode(x, _) if *x == lhs.var())) {
                            return Err(non_semi(format!("second ode for `{}`", lhs.var())));
                        }
                        p.expect(Tok::Equals, "`=` in ode")?;
                        let rhs = p.expr()?;
                        if order_of(&rhs, None) > 0 {
                            return Err(non_semi("ode right side must not contain derivatives".into()));
                        }
                        doc.equations.push(Equation::Ode(lhs.var(), rhs));
                    }
                    "eq" | "diff" => {
                        p.expect(Tok::Colon, "`:`")?;
                        let body = p.equation_body()?;
                        if k == "eq" {
                            doc.equations.push(Equation::Eq(body));
                        } else {
                            doc.equations.push(Equation::Diff(body));
                        }
                    }
                    "claim" => {
                        p.expect(Tok::Colon, "`:` after `claim`")?;
                        let body = p.equation_body()?;
                        if doc.claim.is_some() {
                            return Err(p.syntax("only one claim is allowed"));
                        }
                        doc.claim = Some(body);
                    }
                    _ => unreachable!(),
                }
                if !p.at_statement_end() {
                    return Err(p.syntax("unexpected trailing input"));
                }
            }
            _ => return Err(p.syntax("expected a statement keyword")),
        }
    }
    Ok(doc)
}

/// Parses a standalone polynomial; any `x<k>`, `u<k>`, `y<k>` is accepted.
pub fn parse_poly(text: &str) -> Result<DiffPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, declared: None };
    while *p.peek() == Tok::Sep {
        p.bump();
    }
    let e = p.expr()?;
    while *p.peek() == Tok::Sep {
        p.bump();
    }
    if *p.peek() != Tok::End {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}
