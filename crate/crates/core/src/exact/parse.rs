//! Literal grammar for polynomials and rational functions:
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := power (['*' | '/'] power)*      juxtaposition multiplies
//! power  := atom ['^' ['-'] integer]
//! atom   := integer | VAR | '(' expr ')'
//! ```
//!
//! e.g. `1 - 2*t + 4t^2 - 2t^3 + t^4` or `(1-t^6)/((1-t)(1-t^2)(1-t^3)^2)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::intpoly::IntPolynomial;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Parse a rational function in the variable `t`.
pub fn parse_rational_function(text: &str) -> Result<RationalFunction> {
    parse_in(text, 't', 1, 1)
}

/// Parse a polynomial in `t` (the result must have constant denominator 1).
pub fn parse_int_polynomial(text: &str) -> Result<IntPolynomial> {
    let f = parse_rational_function(text)?;
    if f.den().is_one() {
        Ok(f.num().clone())
    } else {
        Err(Error::Parse { line: 1, column: 1, message: format!("`{text}` is not an integer polynomial") })
    }
}

/// Parse a polynomial with rational coefficients in `var`; `line`/`column`
/// locate the first character for error reporting.
pub fn parse_rational_poly(text: &str, var: char, line: usize, column: usize) -> Result<Poly<BigRational>> {
    let f = parse_in(text, var, line, column)?;
    if f.den().degree() != Some(0) {
        return Err(Error::Parse {
            line,
            column,
            message: format!("`{}` is not a polynomial in {var}", text.trim()),
        });
    }
    let d = BigRational::from_integer(f.den().constant_term());
    Ok(Poly::new(
        f.num().coeffs().iter().map(|c| BigRational::from_integer(c.clone()) / d.clone()).collect(),
    ))
}

/// Parse a rational function in `var` with a located error.
pub fn parse_in(text: &str, var: char, line: usize, column: usize) -> Result<RationalFunction> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, var, line, column };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(f)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    var: char,
    line: usize,
    column: usize,
}

impl Parser {
    fn error(&self, message: String) -> Error {
        // Columns count characters; the literal never spans lines.
        Error::Parse { line: self.line, column: self.column + self.pos, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.power()?;
                    acc = acc.checked_div(&rhs).map_err(|e| {
                        let mut err = self.error(format!("invalid division: {e}"));
                        if let Error::Parse { column, .. } = &mut err {
                            *column = self.column + at;
                        }
                        err
                    })?;
                }
                Some(c) if c == self.var || c == '(' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let negative = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large".into()))?;
            return base
                .pow(if negative { -e } else { e })
                .map_err(|err| self.error(format!("invalid power: {err}")));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c == self.var => {
                self.pos += 1;
                Ok(RationalFunction::polynomial(IntPolynomial::monomial(BigInt::from(1), 1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::polynomial(IntPolynomial::constant(BigInt::from(n))))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error(format!("integer `{s}` out of range")))
    }
}
