//! Polynomial expressions: variables `x1..xN` (or `x_12` for matrix-style
//! names), integer and `p/q` literals, `+ - * ^`, parentheses.

use std::fmt;

use eulersym::linalg::Scalar;
use eulersym::poly::Polynomial;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    Syntax(ParseError),
    Zero,
    NotHomogeneous(u32, u32),
    TooFewVariables { used: usize, requested: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Syntax(e) => write!(f, "syntax error at {e}"),
            PolyError::Zero => write!(f, "the polynomial is zero"),
            PolyError::NotHomogeneous(a, b) => {
                write!(f, "polynomial is not homogeneous: found terms of degree {a} and {b}")
            }
            PolyError::TooFewVariables { used, requested } => {
                write!(f, "expression uses x{used} but only {requested} variables were requested")
            }
        }
    }
}

impl std::error::Error for PolyError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    let err = |line, column, message: String| ParseError { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            column += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                column += i - start;
                out.push(Spanned {
                    tok: Tok::Num(digits.parse().expect("ascii digits")),
                    line: l0,
                    column: c0,
                });
            }
            'x' => {
                let mut j = i + 1;
                if j < chars.len() && chars[j] == '_' {
                    j += 1;
                }
                let start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if start == j {
                    return Err(err(l0, c0, "expected digits after `x`".into()));
                }
                let digits: String = chars[start..j].iter().collect();
                let index: usize = digits
                    .parse()
                    .map_err(|_| err(l0, c0, format!("variable index `{digits}` is too large")))?;
                if index == 0 {
                    return Err(err(l0, c0, "variables are numbered from x1".into()));
                }
                column += j - i;
                i = j;
                out.push(Spanned {
                    tok: Tok::Var(index - 1),
                    line: l0,
                    column: c0,
                });
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' | '\u{2212}' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
                };
                advance(1, &mut i);
                out.push(Spanned { tok, line: l0, column: c0 });
            }
        }
    }
    Ok((out, (line, column)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError {
            line,
            column,
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(-&self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let Ok(e) = u32::try_from(&n) else {
                    return self.error("exponent is too large");
                };
                self.pos += 1;
                if self.peek() == Some(&Tok::Caret) {
                    return self.error("chained exponents need parentheses");
                }
                Ok(base.pow(e))
            }
            _ => self.error("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let value = if self.eat(&Tok::Slash) {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Scalar::new(n, d)
                        }
                        Some(Tok::Num(_)) => return self.error("zero denominator"),
                        _ => return self.error("`/` is only allowed inside a p/q literal"),
                    }
                } else {
                    Scalar::from_integer(n)
                };
                Ok(Polynomial::constant(self.nvars, value))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Polynomial::var(self.nvars, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => self.error("expected a number, a variable or `(`"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `max(nvars, largest index used)`
/// variables. The result may be zero or inhomogeneous.
pub fn parse_expression(text: &str, nvars: Option<usize>) -> Result<Polynomial, PolyError> {
    let (toks, end) = lex(text).map_err(PolyError::Syntax)?;
    let used = toks
        .iter()
        .filter_map(|s| match s.tok {
            Tok::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let n = match nvars {
        Some(n) if n < used => return Err(PolyError::TooFewVariables { used, requested: n }),
        Some(n) => n,
        None => used.max(1),
    };
    let mut parser = Parser {
        toks,
        pos: 0,
        end,
        nvars: n,
    };
    if parser.peek().is_none() {
        return parser.error("empty expression").map_err(PolyError::Syntax);
    }
    let p = parser.expr().map_err(PolyError::Syntax)?;
    if parser.peek().is_some() {
        return parser.error("unexpected token").map_err(PolyError::Syntax);
    }
    Ok(p)
}

/// Parses a nonzero homogeneous polynomial.
pub fn parse_polynomial(text: &str, nvars: Option<usize>) -> Result<Polynomial, PolyError> {
    let p = parse_expression(text, nvars)?;
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    let mut degrees = p.terms().map(|(m, _)| m.degree());
    let first = degrees.next_back().expect("nonzero");
    if let Some(other) = degrees.rev().find(|&d| d != first) {
        return Err(PolyError::NotHomogeneous(first, other));
    }
    Ok(p)
}
