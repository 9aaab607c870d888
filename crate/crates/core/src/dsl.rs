//! A small language for generating functions of divide-and-conquer sequences.
//!
//! ```text
//! expr      = term { ("+" | "-") term } ;
//! term      = unary { ("*" | "/") unary } ;
//! unary     = "-" unary | power ;
//! power     = primary [ "^" exponent ] ;
//! primary   = INT | "z" | "k" | "(" expr ")"
//!           | ("sum" | "prod") "(" "k" ")" "{" expr "}" ;
//! exponent  = INT | "k" | "(" product ")" ;
//! product   = factor { "*" factor } ;
//! factor    = INT | "k" [ "+" INT ] | "2" "^" tower | "(" product ")" ;
//! tower     = "k" | "(" "k" [ "+" INT ] ")" ;
//! ```
//!
//! After folding literal factors an exponent is one of
//!
//! * an integer literal `e >= 0`, allowed on any base;
//! * `k + j`, allowed only on an integer base (`c^k`, `(-1)^(k+1)`);
//! * `m * 2^(k + j)` with `m >= 1`, allowed only on `z`.
//!
//! `k` is the loop index and may only appear inside `sum(k){..}` or
//! `prod(k){..}`; loops do not nest. Division is by rational functions of `z`
//! whose numerator has constant term `+1` or `-1`, never by a series.
//!
//! Evaluation to order `N` unrolls loops for `k = 0 ..= ceil(log2 N)`. A sum
//! term must vanish below `z^(2^k)` and a product factor must be
//! `1 + O(z^(2^k))`; both are checked at every `k`, so any expression that
//! evaluates is exact to order `N`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::families::tower_depth;
use crate::series::{expand, Polynomial, RationalFunction, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown index `{name}`")]
    UnknownIndex { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown name `{name}`")]
    UnknownName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `k` used outside a sum or product")]
    IndexOutsideLoop { line: usize, col: usize },
    #[error("{line}:{col}: loops cannot be nested")]
    NestedLoop { line: usize, col: usize },
    #[error("{line}:{col}: malformed exponent: {message}")]
    MalformedExponent { line: usize, col: usize, message: String },
    #[error("denominator constant term {constant}{} is not +1 or -1: only integer coefficients are allowed", at_k(.k))]
    NonUnitDenominator { constant: BigInt, k: Option<u32> },
    #[error("cannot divide by a sum or product; denominators must be rational functions of z")]
    SeriesDivisor,
    #[error("not of elementary divide-and-conquer shape: {0}")]
    NotElementary(String),
    #[error("evaluation order must be at least 1")]
    ZeroOrder,
}

fn at_k(k: &Option<u32>) -> String {
    k.map(|k| format!(" (at k={k})")).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopKind {
    Sum,
    Prod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Literal(u32),
    /// `k + offset`
    Index { offset: u32 },
    /// `mult * 2^(k + shift)`
    Tower { shift: u32, mult: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Z,
    /// The loop index `k`.
    Index,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Exponent),
    Loop(LoopKind, Box<Expr>),
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Exponent::Literal(e) => write!(f, "{e}"),
            Exponent::Index { offset: 0 } => write!(f, "k"),
            Exponent::Index { offset } => write!(f, "(k+{offset})"),
            Exponent::Tower { shift, mult } => {
                let tower = if shift == 0 { "2^k".to_string() } else { format!("2^(k+{shift})") };
                if mult == 1 {
                    write!(f, "({tower})")
                } else {
                    write!(f, "({tower}*{mult})")
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesised; parses back to an equal tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Z => write!(f, "z"),
            Expr::Index => write!(f, "k"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Pow(base, exp) => match **base {
                Expr::Pow(..) => write!(f, "({base})^{exp}"),
                _ => write!(f, "{base}^{exp}"),
            },
            Expr::Loop(kind, body) => {
                let name = match kind {
                    LoopKind::Sum => "sum",
                    LoopKind::Prod => "prod",
                };
                write!(f, "{name}(k){{{body}}}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let (start_line, start_col) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if ch.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^(){}".contains(ch) {
            i += 1;
            Tok::Sym(ch)
        } else {
            return Err(DslError::Syntax {
                line,
                col,
                message: format!("unexpected character `{ch}`"),
            });
        };
        col += i - start;
        out.push(Token {
            tok,
            line: start_line,
            col: start_col,
        });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    in_loop: bool,
}

/// Intermediate exponent factor before literal folding.
enum ExpFactor {
    Literal(u32),
    Index(u32),
    Tower(u32),
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn syntax(&self, tok: &Token, message: impl Into<String>) -> DslError {
        DslError::Syntax {
            line: tok.line,
            col: tok.col,
            message: message.into(),
        }
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), DslError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(self.syntax(&t, format!("expected `{c}`, found {}", Self::describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.at_sym('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.primary()?;
        if !self.at_sym('^') {
            return Ok(base);
        }
        let caret = self.next();
        let exp = self.exponent()?;
        let malformed = |message: &str| DslError::MalformedExponent {
            line: caret.line,
            col: caret.col,
            message: message.to_string(),
        };
        match exp {
            Exponent::Literal(_) => {}
            Exponent::Index { .. } => {
                let integer_base = matches!(&base, Expr::Int(_)) || matches!(&base, Expr::Neg(b) if matches!(**b, Expr::Int(_)));
                if !integer_base {
                    return Err(malformed("`k` may only be the exponent of an integer factor"));
                }
            }
            Exponent::Tower { .. } => {
                if base != Expr::Z {
                    return Err(malformed("2^k-shaped exponents only apply to `z`"));
                }
            }
        }
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(Expr::Int(n.clone())),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(Expr::Z),
                "k" if self.in_loop => Ok(Expr::Index),
                "k" => Err(DslError::IndexOutsideLoop { line: t.line, col: t.col }),
                "sum" | "prod" => self.loop_body(&t, name == "sum"),
                _ if self.in_loop && name.len() == 1 => Err(DslError::UnknownIndex {
                    line: t.line,
                    col: t.col,
                    name: name.clone(),
                }),
                _ => Err(DslError::UnknownName {
                    line: t.line,
                    col: t.col,
                    name: name.clone(),
                }),
            },
            other => Err(self.syntax(&t, format!("expected an operand, found {}", Self::describe(other)))),
        }
    }

    fn loop_body(&mut self, head: &Token, is_sum: bool) -> Result<Expr, DslError> {
        if self.in_loop {
            return Err(DslError::NestedLoop { line: head.line, col: head.col });
        }
        self.expect_sym('(')?;
        self.header_index()?;
        self.expect_sym(')')?;
        self.expect_sym('{')?;
        self.in_loop = true;
        let body = self.expr();
        self.in_loop = false;
        let body = body?;
        self.expect_sym('}')?;
        let kind = if is_sum { LoopKind::Sum } else { LoopKind::Prod };
        Ok(Expr::Loop(kind, Box::new(body)))
    }

    /// The `k` of a `sum(k)` / `prod(k)` header.
    fn header_index(&mut self) -> Result<(), DslError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == "k" => Ok(()),
            Tok::Ident(s) => Err(DslError::UnknownIndex {
                line: t.line,
                col: t.col,
                name: s.clone(),
            }),
            other => Err(self.syntax(&t, format!("expected `k`, found {}", Self::describe(other)))),
        }
    }

    /// A use of `k` inside an exponent.
    fn expect_index(&mut self) -> Result<(), DslError> {
        let t = self.peek().clone();
        self.header_index()?;
        if self.in_loop {
            Ok(())
        } else {
            Err(DslError::IndexOutsideLoop { line: t.line, col: t.col })
        }
    }

    fn small_int(&self, tok: &Token, n: &BigInt) -> Result<u32, DslError> {
        n.to_u32().ok_or_else(|| DslError::MalformedExponent {
            line: tok.line,
            col: tok.col,
            message: format!("exponent literal {n} is too large"),
        })
    }

    fn exponent(&mut self) -> Result<Exponent, DslError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.next();
                Ok(Exponent::Literal(self.small_int(&t, n)?))
            }
            Tok::Ident(_) => {
                self.expect_index()?;
                Ok(Exponent::Index { offset: 0 })
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.exp_product(&t)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            other => Err(DslError::MalformedExponent {
                line: t.line,
                col: t.col,
                message: format!("unexpected {}", Self::describe(other)),
            }),
        }
    }

    fn exp_product(&mut self, start: &Token) -> Result<Exponent, DslError> {
        let mut factors = vec![self.exp_factor()?];
        while self.at_sym('*') {
            self.next();
            factors.push(self.exp_factor()?);
        }
        let malformed = |message: &str| DslError::MalformedExponent {
            line: start.line,
            col: start.col,
            message: message.to_string(),
        };
        let mut literal: u32 = 1;
        let mut special: Option<ExpFactor> = None;
        for f in factors {
            match f {
                ExpFactor::Literal(v) => literal = literal.checked_mul(v).ok_or_else(|| malformed("literal too large"))?,
                other if special.is_none() => special = Some(other),
                _ => return Err(malformed("at most one `k`-dependent factor is allowed")),
            }
        }
        match special {
            None => Ok(Exponent::Literal(literal)),
            Some(ExpFactor::Index(offset)) if literal == 1 => Ok(Exponent::Index { offset }),
            Some(ExpFactor::Index(_)) => Err(malformed("`k` cannot be multiplied; use 2^k")),
            Some(ExpFactor::Tower(_)) if literal == 0 => Err(malformed("tower multiplier must be positive")),
            Some(ExpFactor::Tower(shift)) => Ok(Exponent::Tower { shift, mult: literal }),
            Some(ExpFactor::Literal(_)) => unreachable!(),
        }
    }

    fn exp_factor(&mut self) -> Result<ExpFactor, DslError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.next();
                if !self.at_sym('^') {
                    return Ok(ExpFactor::Literal(self.small_int(&t, n)?));
                }
                if *n != BigInt::from(2) {
                    return Err(DslError::MalformedExponent {
                        line: t.line,
                        col: t.col,
                        message: "only powers of 2 may carry `k` in an exponent".into(),
                    });
                }
                self.next();
                let offset = if self.at_sym('(') {
                    self.next();
                    let off = self.index_plus()?;
                    self.expect_sym(')')?;
                    off
                } else {
                    self.expect_index()?;
                    0
                };
                Ok(ExpFactor::Tower(offset))
            }
            Tok::Ident(_) => Ok(ExpFactor::Index(self.index_plus()?)),
            Tok::Sym('(') => {
                self.next();
                let inner = self.exp_product(&t)?;
                self.expect_sym(')')?;
                Ok(match inner {
                    Exponent::Literal(v) => ExpFactor::Literal(v),
                    Exponent::Index { offset } => ExpFactor::Index(offset),
                    Exponent::Tower { shift, mult: 1 } => ExpFactor::Tower(shift),
                    Exponent::Tower { .. } => {
                        return Err(DslError::MalformedExponent {
                            line: t.line,
                            col: t.col,
                            message: "nested tower products are not supported".into(),
                        })
                    }
                })
            }
            other => Err(DslError::MalformedExponent {
                line: t.line,
                col: t.col,
                message: format!("unexpected {}", Self::describe(other)),
            }),
        }
    }

    /// `k [+ INT]`
    fn index_plus(&mut self) -> Result<u32, DslError> {
        self.expect_index()?;
        if !self.at_sym('+') {
            return Ok(0);
        }
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => self.small_int(&t, n),
            other => Err(DslError::MalformedExponent {
                line: t.line,
                col: t.col,
                message: format!("expected an integer after `k+`, found {}", Self::describe(other)),
            }),
        }
    }
}

/// Parses an expression; see the module docs for the grammar.
pub fn parse(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        in_loop: false,
    };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.syntax(&t, format!("unexpected {}", Parser::describe(&t.tok))));
    }
    Ok(e)
}

/// A value during evaluation, reduced modulo `z^order`.
#[derive(Debug, Clone)]
enum Value {
    /// `num / den` with `den(0) = +-1`.
    Rational(Polynomial, Polynomial),
    Series(TruncatedSeries),
}

struct Evaluator {
    order: usize,
}

impl Evaluator {
    fn cut(&self, p: Polynomial) -> Polynomial {
        p.truncate(self.order)
    }

    fn to_series(&self, v: Value) -> Result<TruncatedSeries, DslError> {
        match v {
            Value::Series(s) => Ok(s),
            Value::Rational(num, den) => Ok(expand(&RationalFunction::new(num, den).map_err(series_err)?, self.order).map_err(series_err)?),
        }
    }

    fn constant(&self, c: BigInt) -> Value {
        Value::Rational(Polynomial::constant(c), Polynomial::one())
    }

    fn eval(&self, e: &Expr, k: Option<u32>) -> Result<Value, DslError> {
        Ok(match e {
            Expr::Int(n) => self.constant(n.clone()),
            Expr::Z => Value::Rational(self.cut(Polynomial::monomial(BigInt::one(), 1)), Polynomial::one()),
            Expr::Index => self.constant(BigInt::from(k.expect("parser keeps k inside loops"))),
            Expr::Neg(a) => match self.eval(a, k)? {
                Value::Rational(n, d) => Value::Rational(-&n, d),
                Value::Series(s) => Value::Series(-&s),
            },
            Expr::Binary(op, a, b) => {
                let (a, b) = (self.eval(a, k)?, self.eval(b, k)?);
                self.binary(*op, a, b, k)?
            }
            Expr::Pow(base, exp) => self.power(base, *exp, k)?,
            Expr::Loop(kind, body) => Value::Series(self.unroll(*kind, body)?),
        })
    }

    fn binary(&self, op: BinOp, a: Value, b: Value, k: Option<u32>) -> Result<Value, DslError> {
        use Value::{Rational as R, Series as S};
        Ok(match (op, a, b) {
            (BinOp::Add, R(an, ad), R(bn, bd)) => R(self.cut(&(&an * &bd) + &(&bn * &ad)), self.cut(&ad * &bd)),
            (BinOp::Sub, R(an, ad), R(bn, bd)) => R(self.cut(&(&an * &bd) - &(&bn * &ad)), self.cut(&ad * &bd)),
            (BinOp::Mul, R(an, ad), R(bn, bd)) => R(self.cut(&an * &bn), self.cut(&ad * &bd)),
            (BinOp::Div, _, S(_)) => return Err(DslError::SeriesDivisor),
            (BinOp::Div, a, R(bn, bd)) => {
                let c = bn.constant_term();
                if !c.abs().is_one() {
                    return Err(DslError::NonUnitDenominator { constant: c, k });
                }
                self.binary(BinOp::Mul, a, R(bd, bn), k)?
            }
            (BinOp::Mul, S(s), R(n, d)) | (BinOp::Mul, R(n, d), S(s)) => {
                S(s.mul_rational(&RationalFunction::new(n, d).map_err(series_err)?).map_err(series_err)?)
            }
            (op, a, b) => {
                let (a, b) = (self.to_series(a)?, self.to_series(b)?);
                S(match op {
                    BinOp::Add => &a + &b,
                    BinOp::Sub => &a - &b,
                    BinOp::Mul => &a * &b,
                    BinOp::Div => unreachable!("handled above"),
                })
            }
        })
    }

    fn power(&self, base: &Expr, exp: Exponent, k: Option<u32>) -> Result<Value, DslError> {
        match exp {
            Exponent::Literal(e) => {
                let b = self.eval(base, k)?;
                let mut acc = self.constant(BigInt::one());
                for _ in 0..e {
                    acc = self.binary(BinOp::Mul, acc, b.clone(), k)?;
                }
                Ok(acc)
            }
            Exponent::Index { offset } => {
                let k = k.expect("parser keeps k inside loops");
                let Value::Rational(n, _) = self.eval(base, Some(k))? else {
                    unreachable!("parser restricts the base to an integer")
                };
                Ok(self.constant(num_traits::pow::Pow::pow(n.constant_term(), k + offset)))
            }
            Exponent::Tower { shift, mult } => {
                let k = k.expect("parser keeps k inside loops");
                let degree = 1usize
                    .checked_shl(k + shift)
                    .and_then(|p| p.checked_mul(mult as usize));
                let mono = match degree {
                    Some(d) if d < self.order => Polynomial::monomial(BigInt::one(), d),
                    _ => Polynomial::zero(),
                };
                Ok(Value::Rational(mono, Polynomial::one()))
            }
        }
    }

    fn unroll(&self, kind: LoopKind, body: &Expr) -> Result<TruncatedSeries, DslError> {
        let n = self.order;
        let mut acc = match kind {
            LoopKind::Sum => TruncatedSeries::zero(n),
            LoopKind::Prod => TruncatedSeries::one(n),
        };
        for k in 0..=tower_depth(n) {
            let term = self.to_series(self.eval(body, Some(k))?)?;
            let floor = 1usize.checked_shl(k).unwrap_or(usize::MAX).min(n);
            let low = |i: usize| -> BigInt {
                match kind {
                    LoopKind::Sum => term.coeff(i).clone(),
                    LoopKind::Prod if i == 0 => term.coeff(0) - 1,
                    LoopKind::Prod => term.coeff(i).clone(),
                }
            };
            if let Some(i) = (0..floor).find(|&i| !low(i).is_zero()) {
                let what = match kind {
                    LoopKind::Sum => format!("sum term at k={k} has a nonzero z^{i} coefficient below z^(2^k)"),
                    LoopKind::Prod => format!("product factor at k={k} differs from 1 at z^{i}, below z^(2^k)"),
                };
                return Err(DslError::NotElementary(format!("{what}; z may only enter a loop body as a rational function of z^(2^k)")));
            }
            acc = match kind {
                LoopKind::Sum => &acc + &term,
                LoopKind::Prod => &acc * &term,
            };
        }
        Ok(acc)
    }
}

fn series_err(e: SeriesError) -> DslError {
    match e {
        SeriesError::NonUnitDenominator(constant) => DslError::NonUnitDenominator { constant, k: None },
        SeriesError::ZeroDenominator => DslError::NonUnitDenominator { constant: BigInt::zero(), k: None },
        SeriesError::ZeroOrder => DslError::ZeroOrder,
        SeriesError::ZeroSubstitution => unreachable!("the evaluator never substitutes"),
    }
}

/// Evaluates a parsed expression to a series of the given order.
pub fn evaluate(expr: &Expr, order: usize) -> Result<TruncatedSeries, DslError> {
    if order == 0 {
        return Err(DslError::ZeroOrder);
    }
    let ev = Evaluator { order };
    let v = ev.eval(expr, None)?;
    ev.to_series(v)
}

/// Reference texts for each family, with the parameters written in.
pub mod templates {
    use crate::families::{FamilyKind, FamilySpec};

    fn int(v: i64) -> String {
        if v < 0 {
            format!("(-{})", -v)
        } else {
            v.to_string()
        }
    }

    /// DSL text whose value is the family's generating function; T6 uses the
    /// regularised (minus one) summands.
    pub fn family_text(spec: &FamilySpec) -> String {
        let spec = spec.canonical();
        let c = int(spec.c);
        let tail_terms = |tower: &str| -> String {
            spec.tail
                .iter()
                .enumerate()
                .filter(|(_, &ci)| ci != 0)
                .map(|(i, &ci)| format!(" + {}*z^({tower}*{})", int(ci), i + 1))
                .collect()
        };
        match spec.kind {
            FamilyKind::T1 => format!("sum(k){{ {c}^k * z^(2^k) / (1 - z^(2^k)) }}"),
            FamilyKind::T2 => format!("sum(k){{ {c}^k * z^(2^k) / (1 - z^(2^(k+1))) }}"),
            FamilyKind::T3 => format!("prod(k){{ 1 + {c}*z^(2^k) }}"),
            FamilyKind::T4 => format!(
                "(1/(1-z)) * sum(k){{ {}^k * ({}*z^(2^k) + {c}*z^(2^(k+1))) / (1 + z^(2^k)) }}",
                int(spec.alpha),
                int(spec.d)
            ),
            FamilyKind::T5 => format!("prod(k){{ 1 + {c}*z^(2^k){} }}", tail_terms("2^(k+1)")),
            FamilyKind::T6 => format!("sum(k){{ 1/(1 - (0{})) - 1 }}", tail_terms("2^k")),
            _ => unreachable!("canonical() maps named kinds onto T1..T6"),
        }
    }
}
