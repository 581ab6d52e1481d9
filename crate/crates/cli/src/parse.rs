//! Recursive-descent parser for polynomial and residue-form input.
//!
//! Grammar:
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := INT | IDENT | '(' expr ')'
//! ```
//! Juxtaposition is not multiplication; `2u1` is a syntax error.

use jetres_core::exactalg::{Ctx, MultiPoly, Rational};
use jetres_core::names;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at position {pos} must be a non-negative integer literal")]
    BadExponent { pos: usize },
    #[error("division at position {pos} by a non-constant expression")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("denominator factor at position {pos} is not affine-linear in the residue variables")]
    NonLinearFactor { pos: usize },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "parse_syntax",
            ParseError::UnknownVariable { .. } => "parse_unknown_variable",
            ParseError::BadExponent { .. } => "parse_bad_exponent",
            ParseError::NonConstantDivisor { .. } => "parse_non_constant_divisor",
            ParseError::DivisionByZero { .. } => "parse_division_by_zero",
            ParseError::NonLinearFactor { .. } => "parse_non_linear_factor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("digits")), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Int(BigInt),
    Var(String, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(_, p)| *p)
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.i += 1;
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.i += 1;
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(e)) => {
                let e = u32::try_from(e.clone()).map_err(|_| ParseError::BadExponent { pos })?;
                self.i += 1;
                Ok(Ast::Pow(Box::new(base), e))
            }
            _ => Err(ParseError::BadExponent { pos }),
        }
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        let pos = self.pos();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(v)) => {
                self.i += 1;
                Ok(Ast::Int(v))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                Ok(Ast::Var(name, pos))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError::Syntax {
                        pos: self.pos(),
                        msg: "expected `)`".into(),
                    });
                }
                self.i += 1;
                Ok(inner)
            }
            Some(t) => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected {}", describe(&t)),
            }),
            None => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("number `{v}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

fn parse_ast(text: &str) -> Result<Ast, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: text.chars().count(),
    };
    let ast = p.expr()?;
    if p.i != p.toks.len() {
        let pos = p.pos();
        let t = p.toks[p.i].0.clone();
        return Err(ParseError::Syntax {
            pos,
            msg: format!("unexpected {}", describe(&t)),
        });
    }
    Ok(ast)
}

/// Resolves a variable name, accepting `z<i>` as an alias of `u<i>` and vice versa.
fn resolve(ctx: &Ctx, name: &str, pos: usize) -> Result<usize, ParseError> {
    if let Some(i) = ctx.index_of(name) {
        return Ok(i);
    }
    let alias = if let Some(rest) = name.strip_prefix(names::Z) {
        Some(format!("{}{rest}", names::U))
    } else {
        name.strip_prefix(names::U).map(|rest| format!("{}{rest}", names::Z))
    };
    alias
        .and_then(|a| ctx.index_of(&a))
        .ok_or_else(|| ParseError::UnknownVariable {
            name: name.to_string(),
            pos,
        })
}

fn eval(ast: &Ast, ctx: &Ctx) -> Result<MultiPoly, ParseError> {
    Ok(match ast {
        Ast::Int(v) => MultiPoly::constant(ctx, Rational::from_integer(v.clone())),
        Ast::Var(name, pos) => MultiPoly::var(ctx, resolve(ctx, name, *pos)?),
        Ast::Neg(a) => -eval(a, ctx)?,
        Ast::Add(a, b) => eval(a, ctx)? + eval(b, ctx)?,
        Ast::Sub(a, b) => eval(a, ctx)? - eval(b, ctx)?,
        Ast::Mul(a, b) => eval(a, ctx)? * eval(b, ctx)?,
        Ast::Pow(a, e) => eval(a, ctx)?.pow(*e),
        Ast::Div(a, b, pos) => {
            let divisor = eval(b, ctx)?;
            let c = divisor
                .as_constant()
                .ok_or(ParseError::NonConstantDivisor { pos: *pos })?;
            if c == Rational::from_integer(0.into()) {
                return Err(ParseError::DivisionByZero { pos: *pos });
            }
            eval(a, ctx)?.scale(&c.recip())
        }
    })
}

/// Parses a polynomial over the variables of `ctx`; division only by constants.
pub fn parse_poly(text: &str, ctx: &Ctx) -> Result<MultiPoly, ParseError> {
    eval(&parse_ast(text)?, ctx)
}

/// A rational form `numerator / prod factor^mult` as typed by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedForm {
    pub numerator: MultiPoly,
    pub factors: Vec<(MultiPoly, u32)>,
}

/// Splits a divisor into its multiplicative factors without expanding them.
fn collect_factors(ast: &Ast, ctx: &Ctx, mult: u32, out: &mut Vec<(MultiPoly, u32, usize)>, pos: usize) -> Result<(), ParseError> {
    match ast {
        Ast::Mul(a, b) => {
            collect_factors(a, ctx, mult, out, pos)?;
            collect_factors(b, ctx, mult, out, pos)
        }
        Ast::Pow(a, e) => collect_factors(a, ctx, mult * e, out, pos),
        other => {
            out.push((eval(other, ctx)?, mult, pos));
            Ok(())
        }
    }
}

/// Parses `numerator` or `numerator / (f1 * f2^m * ...)` where each `f` is affine-linear
/// in the variables listed in `z_vars`. Constant factors are folded into the numerator.
pub fn parse_form(text: &str, ctx: &Ctx, z_vars: &[usize]) -> Result<ParsedForm, ParseError> {
    let ast = parse_ast(text)?;
    let mut num_ast = ast;
    let mut divisors = Vec::new();
    // peel trailing divisions: a / b / c
    while let Ast::Div(a, b, pos) = num_ast {
        divisors.push((*b, pos));
        num_ast = *a;
    }
    let mut numerator = eval(&num_ast, ctx)?;
    let mut factors = Vec::new();
    for (b, pos) in divisors {
        let mut found = Vec::new();
        collect_factors(&b, ctx, 1, &mut found, pos)?;
        for (f, m, pos) in found {
            if let Some(c) = f.as_constant() {
                if c == Rational::from_integer(0.into()) {
                    return Err(ParseError::DivisionByZero { pos });
                }
                numerator = numerator.scale(&c.recip().pow(m as i32));
                continue;
            }
            let linear = f.terms().all(|(mono, _)| {
                let zdeg: u32 = z_vars.iter().map(|&v| mono.exp(v) as u32).sum();
                zdeg <= 1 && (zdeg == 0 || mono.degree() == 1)
            }) && z_vars.iter().any(|&v| f.involves(v));
            if !linear {
                return Err(ParseError::NonLinearFactor { pos });
            }
            factors.push((f, m));
        }
    }
    Ok(ParsedForm { numerator, factors })
}
