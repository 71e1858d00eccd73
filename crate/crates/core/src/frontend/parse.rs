//! Expression syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int)*
//! atom   := scalar | generator | '(' expr ')'
//! scalar := int ('/' int)?
//! generator := e[w,w] | d[w,w] | f[int,int] | x<int> | y<int> | x[w] | y[w]
//! ```
//!
//! Words are dotted digit strings, most significant first, with `_` for the
//! empty word. Digit ranges are checked at evaluation.

use std::fmt;

use crate::chain::AdicWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Matrix unit `e_{u,v}` of `M_𝔫(F)`.
    E(AdicWord, AdicWord),
    /// Deep generator `d_{u,v}`.
    D(AdicWord, AdicWord),
    /// Finitary unit at `(row, col)` of the mixed algebra.
    F(usize, usize),
    /// Leavitt letters `x_i`, `y_i`.
    X(usize),
    Y(usize),
    /// Leavitt monomials `x_w` and `y_w`.
    XWord(AdicWord),
    YWord(AdicWord),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(u, v) => write!(f, "e[{u},{v}]"),
            Generator::D(u, v) => write!(f, "d[{u},{v}]"),
            Generator::F(r, c) => write!(f, "f[{r},{c}]"),
            Generator::X(i) => write!(f, "x{i}"),
            Generator::Y(i) => write!(f, "y{i}"),
            Generator::XWord(w) => write!(f, "x[{w}]"),
            Generator::YWord(w) => write!(f, "y[{w}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    /// Nonnegative literal `n` or `n/d`, kept verbatim.
    Scalar(String),
    Gen(Generator),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Neg(Box<Expression>),
    Pow(Box<Expression>, u32),
}

impl Expression {
    fn precedence(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Mul(..) => 2,
            Expression::Neg(_) => 3,
            Expression::Scalar(s) if s.contains('/') => 3,
            Expression::Pow(..) => 4,
            Expression::Scalar(_) | Expression::Gen(_) => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expression::Scalar(s) => f.write_str(s)?,
            Expression::Gen(g) => write!(f, "{g}")?,
            Expression::Add(a, b) | Expression::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(if matches!(self, Expression::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                b.write(f, 2)?;
            }
            Expression::Mul(a, b) => {
                a.write(f, 2)?;
                f.write_str("*")?;
                b.write(f, 3)?;
            }
            Expression::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 3)?;
            }
            Expression::Pow(a, k) => {
                a.write(f, 4)?;
                write!(f, "^{k}")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 1)
    }
}

pub fn parse(text: &str) -> Result<Expression> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            lhs = Expression::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expression> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(Expression::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression> {
        let mut base = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
            base = Expression::Pow(Box::new(base), k);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Syntax {
            column: start + 1,
            message: "integer too large".into(),
        })
    }

    fn atom(&mut self) -> Result<Expression> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.integer()?;
                if self.chars.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den == 0 {
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(Expression::Scalar(self.chars[start..self.pos].iter().collect()))
            }
            Some(c @ ('e' | 'd' | 'f')) => {
                self.pos += 1;
                self.expect('[')?;
                let g = if c == 'f' {
                    self.skip_ws();
                    let r = self.index()?;
                    self.expect(',')?;
                    self.skip_ws();
                    let col = self.index()?;
                    Generator::F(r, col)
                } else {
                    let u = self.word()?;
                    self.expect(',')?;
                    let v = self.word()?;
                    if c == 'e' {
                        Generator::E(u, v)
                    } else {
                        Generator::D(u, v)
                    }
                };
                self.expect(']')?;
                Ok(Expression::Gen(g))
            }
            Some(c @ ('x' | 'y')) => {
                self.pos += 1;
                let g = if self.chars.get(self.pos) == Some(&'[') {
                    self.pos += 1;
                    let w = self.word()?;
                    self.expect(']')?;
                    if c == 'x' {
                        Generator::XWord(w)
                    } else {
                        Generator::YWord(w)
                    }
                } else {
                    let i = self.index()?;
                    if c == 'x' {
                        Generator::X(i)
                    } else {
                        Generator::Y(i)
                    }
                };
                Ok(Expression::Gen(g))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let k = self.integer()?;
        usize::try_from(k).map_err(|_| Error::Syntax {
            column: start + 1,
            message: "index too large".into(),
        })
    }

    fn word(&mut self) -> Result<AdicWord> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || *c == '.' || *c == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a word"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Syntax {
            column: start + 1,
            message: format!("bad word {s:?}"),
        })
    }
}
