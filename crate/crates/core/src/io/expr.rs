//! A small language over finite surreals:
//!
//! ```text
//! expr   := arith (('<' | '=' | '>') arith)?
//! arith  := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom
//! atom   := dyadic | '{' list '|' list '}' | '(' arith ')'
//! list   := (arith (',' arith)*)?
//! dyadic := integer ('/' integer | '/' '2' '^' integer)?
//! ```
//!
//! Literals are non-negative; a leading `-` is negation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::surreal::{add, mul, simplest_between, sub, SignExpansion, SurrealError};
use crate::BigDyadic;

/// Largest birthday a literal or an operand may have.
const BIRTHDAY_LIMIT: usize = 4096;
/// Largest birthday of either factor of a product.
const PRODUCT_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Eq,
    Gt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigDyadic),
    Cut(Vec<Expr>, Vec<Expr>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {}, found {found}", .expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{{{left} | {right}}} is not a cut")]
    NotACut { left: String, right: String },
    #[error("{what} has birthday {birthday}, above the limit of {limit}")]
    TooLarge {
        what: &'static str,
        birthday: usize,
        limit: usize,
    },
}

/// The value of an expression: a number, or the verdict of a comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Number(SignExpansion),
    Truth(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
                column += 1;
            }
            let n = digits.parse().expect("ascii digits");
            out.push(Lexed {
                tok: Tok::Int(n),
                line: l,
                column: col,
            });
        } else if "+-*/^{}|,()<=>".contains(c) {
            chars.next();
            column += 1;
            out.push(Lexed {
                tok: Tok::Sym(c),
                line: l,
                column: col,
            });
        } else {
            return Err(ParseError {
                line,
                column,
                expected: vec!["a number, an operator or a bracket".into()],
                found: format!("'{c}'"),
            });
        }
    }
    out.push(Lexed {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let at = &self.toks[self.pos];
        ParseError {
            line: at.line,
            column: at.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: at.tok.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error(&["an integer"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.arith()?;
        let op = match self.peek() {
            Tok::Sym('<') => CmpOp::Lt,
            Tok::Sym('=') => CmpOp::Eq,
            Tok::Sym('>') => CmpOp::Gt,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = self.arith()?;
        Ok(Expr::Cmp(op, Box::new(lhs), Box::new(rhs)))
    }

    fn arith(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            lhs = Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Int(_) => self.dyadic(),
            Tok::Sym('{') => {
                self.pos += 1;
                let left = self.list('|')?;
                self.expect('|')?;
                let right = self.list('}')?;
                self.expect('}')?;
                Ok(Expr::Cut(left, right))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.arith()?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => Err(self.error(&["a number", "'{'", "'('", "'-'"])),
        }
    }

    fn list(&mut self, close: char) -> Result<Vec<Expr>, ParseError> {
        let mut items = Vec::new();
        if *self.peek() == Tok::Sym(close) {
            return Ok(items);
        }
        loop {
            items.push(self.arith()?);
            if !self.eat(',') {
                return Ok(items);
            }
        }
    }

    fn dyadic(&mut self) -> Result<Expr, ParseError> {
        let numerator = self.int()?;
        if !self.eat('/') {
            return Ok(Expr::Num(BigDyadic::integer(numerator)));
        }
        let at = self.pos;
        let den = self.int()?;
        let exponent = if self.eat('^') {
            if den != BigInt::from(2) {
                self.pos = at;
                return Err(self.error(&["2"]));
            }
            let k = self.pos;
            self.int()?.to_u32().ok_or_else(|| {
                self.pos = k;
                self.error(&["an exponent below 2^32"])
            })?
        } else {
            power_of_two(&den).ok_or_else(|| {
                self.pos = at;
                self.error(&["a power of two"])
            })?
        };
        Ok(Expr::Num(BigDyadic::new(numerator, exponent)))
    }
}

fn power_of_two(n: &BigInt) -> Option<u32> {
    if !n.is_positive() {
        return None;
    }
    let k = n.trailing_zeros()?;
    (*n == BigInt::from(1) << k).then(|| u32::try_from(k).ok()).flatten()
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["an operator", "end of input"]));
    }
    Ok(e)
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Cmp(..) => 0,
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul, ..) => 2,
        Expr::Neg(_) => 3,
        Expr::Num(d) if d.signum().is_lt() => 3,
        Expr::Num(_) | Expr::Cut(..) => 4,
    }
}

fn render_at(e: &Expr, min: u8, out: &mut String) {
    let wrap = precedence(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Num(d) if d.signum().is_lt() => {
            out.push('-');
            render_at(&Expr::Num(-d.clone()), 4, out);
        }
        Expr::Num(d) => out.push_str(&d.to_string()),
        Expr::Cut(l, r) => {
            let list = |xs: &[Expr], out: &mut String| {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    render_at(x, 1, out);
                }
            };
            out.push('{');
            list(l, out);
            out.push_str(" | ");
            list(r, out);
            out.push('}');
        }
        Expr::Neg(x) => {
            out.push('-');
            render_at(x, 3, out);
        }
        Expr::Bin(op, a, b) => {
            let (sym, p) = match op {
                BinOp::Add => (" + ", 1),
                BinOp::Sub => (" - ", 1),
                BinOp::Mul => (" * ", 2),
            };
            render_at(a, p, out);
            out.push_str(sym);
            render_at(b, p + 1, out);
        }
        Expr::Cmp(op, a, b) => {
            render_at(a, 1, out);
            out.push_str(match op {
                CmpOp::Lt => " < ",
                CmpOp::Eq => " = ",
                CmpOp::Gt => " > ",
            });
            render_at(b, 1, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Text that parses back to `e`, with only the parentheses precedence requires.
/// A negative literal comes back as the negation of its magnitude.
pub fn render_expr(e: &Expr) -> String {
    let mut out = String::new();
    render_at(e, 0, &mut out);
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expr(self))
    }
}

fn literal_birthday(d: &BigDyadic) -> usize {
    let whole = d.numerator().abs() >> d.exponent() as usize;
    whole
        .to_usize()
        .map_or(usize::MAX, |w| w.saturating_add(1).saturating_add(d.exponent() as usize))
}

fn bounded(x: SignExpansion, what: &'static str, limit: usize) -> Result<SignExpansion, EvalError> {
    if x.len() > limit {
        return Err(EvalError::TooLarge {
            what,
            birthday: x.len(),
            limit,
        });
    }
    Ok(x)
}

fn number(e: &Expr) -> Result<SignExpansion, EvalError> {
    match e {
        Expr::Num(d) => {
            let b = literal_birthday(d);
            if b > BIRTHDAY_LIMIT {
                return Err(EvalError::TooLarge {
                    what: "a literal",
                    birthday: b,
                    limit: BIRTHDAY_LIMIT,
                });
            }
            Ok(SignExpansion::from_dyadic(d))
        }
        Expr::Cut(l, r) => {
            let l = l.iter().map(number).collect::<Result<Vec<_>, _>>()?;
            let r = r.iter().map(number).collect::<Result<Vec<_>, _>>()?;
            simplest_between(&l, &r).map_err(|e| match e {
                SurrealError::NotACut { left, right } => EvalError::NotACut {
                    left: left.to_big_dyadic().to_string(),
                    right: right.to_big_dyadic().to_string(),
                },
                other => unreachable!("simplest_between only reports non-cuts: {other}"),
            })
        }
        Expr::Neg(x) => Ok(-number(x)?),
        Expr::Bin(op, a, b) => {
            let (x, y) = (number(a)?, number(b)?);
            let r = match op {
                BinOp::Add => add(&x, &y),
                BinOp::Sub => sub(&x, &y),
                BinOp::Mul => {
                    bounded(x.clone(), "a factor", PRODUCT_LIMIT)?;
                    bounded(y.clone(), "a factor", PRODUCT_LIMIT)?;
                    mul(&x, &y)
                }
            };
            bounded(r, "an intermediate result", BIRTHDAY_LIMIT)
        }
        Expr::Cmp(..) => unreachable!("comparisons only occur at the top"),
    }
}

/// Evaluates with the Conway operations on sign expansions.
pub fn eval_expr(e: &Expr) -> Result<Value, EvalError> {
    match e {
        Expr::Cmp(op, a, b) => {
            let (x, y) = (number(a)?, number(b)?);
            Ok(Value::Truth(match op {
                CmpOp::Lt => x < y,
                CmpOp::Eq => x == y,
                CmpOp::Gt => x > y,
            }))
        }
        e => Ok(Value::Number(number(e)?)),
    }
}
