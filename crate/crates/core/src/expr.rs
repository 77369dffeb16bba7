//! Parser and printer for generator expressions such as
//! `4 L(0) + 1/2 C` or `G(3/2)G(1/2)w - 2 L(-1)w`.
//!
//! ```text
//! expr := sign? term (sign term)*
//! term := rational? gen* 'w'?        (at least one of the three)
//! gen  := 'L(' int ')' | 'G(' int ')' | 'G(' int '/2)' | 'C'
//! ```
//!
//! Whitespace is allowed between tokens. Indices are checked against the
//! sector, so `G(1/2)` is an error in the Ramond sector.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Generator, Kind, LieElement, Sector};
use crate::basis::ModuleVector;
use crate::module::WhittakerModule;
use crate::{Error, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    /// Generators left to right; the rightmost acts first.
    pub gens: Vec<Generator>,
    pub has_w: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    pub terms: Vec<Term>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sector: Sector,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), Error> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(err(self.pos, format!("expected '{}', found '{}'", byte as char, b as char))),
            None => Err(err(self.pos, format!("expected '{}', found end of input", byte as char))),
        }
    }

    fn digits(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits"))
    }

    fn signed_int(&mut self) -> Result<i64, Error> {
        let start = self.pos;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n: i64 = self.digits()?.try_into().map_err(|_| err(start, "index out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> Result<Rational, Error> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(err(at, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn generator(&mut self) -> Result<Option<Generator>, Error> {
        self.skip_ws();
        let start = self.pos;
        let (kind, d) = match self.peek() {
            Some(b'C') => {
                self.pos += 1;
                (Kind::C, 0)
            }
            Some(b'L') => {
                self.pos += 1;
                self.expect(b'(')?;
                let m = self.signed_int()?;
                self.expect(b')')?;
                (Kind::L, 2 * m)
            }
            Some(b'G') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.signed_int()?;
                let d = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    if self.digits()? != BigInt::from(2) || n % 2 == 0 {
                        return Err(err(at, "G index must be an integer or an odd n/2"));
                    }
                    n
                } else {
                    2 * n
                };
                self.expect(b')')?;
                (Kind::G, d)
            }
            _ => return Ok(None),
        };
        match Generator::new(kind, d, self.sector) {
            Ok(g) => Ok(Some(g)),
            Err(e) => Err(err(start, e.to_string())),
        }
    }

    fn term(&mut self) -> Result<Term, Error> {
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(self.rational()?),
            _ => None,
        };
        let mut gens = Vec::new();
        while let Some(g) = self.generator()? {
            gens.push(g);
        }
        let has_w = self.peek() == Some(b'w');
        if has_w {
            self.pos += 1;
        }
        if coeff.is_none() && gens.is_empty() && !has_w {
            self.skip_ws();
            return Err(err(self.pos, "expected a term"));
        }
        Ok(Term { coeff: coeff.unwrap_or_else(Rational::one), gens, has_w })
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn expression(&mut self) -> Result<Expression, Error> {
        let mut terms = Vec::new();
        let mut neg = self.sign().unwrap_or(false);
        loop {
            let mut t = self.term()?;
            if neg {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.sign() {
                Some(n) => neg = n,
                None => break,
            }
        }
        if let Some(b) = self.peek() {
            return Err(err(self.pos, format!("unexpected '{}'", b as char)));
        }
        Ok(Expression { terms })
    }
}

/// Parses `src` in the given sector.
pub fn parse(src: &str, sector: Sector) -> Result<Expression, Error> {
    if !src.is_ascii() {
        let pos = src.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(err(pos, "non-ASCII character"));
    }
    Parser { src: src.as_bytes(), pos: 0, sector }.expression()
}

impl Term {
    fn body(&self) -> String {
        let mut s: String = self.gens.iter().map(Generator::expr).collect();
        if self.has_w {
            s.push('w');
        }
        s
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = t.coeff.abs();
            let body = t.body();
            if body.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{abs} {body}")?;
            }
        }
        Ok(())
    }
}

impl Expression {
    /// Interprets the expression as an element of the Lie superalgebra: every
    /// term must be a scalar times exactly one generator.
    pub fn to_lie_element(&self) -> Result<LieElement, Error> {
        let mut out = LieElement::zero();
        for t in &self.terms {
            if t.has_w || t.gens.len() != 1 {
                return Err(err(0, format!("'{}' is not a scalar multiple of one generator", t.body())));
            }
            out.add_term(t.gens[0], t.coeff.clone());
        }
        Ok(out)
    }

    /// Evaluates the expression in the module: every term must end in `w`.
    pub fn to_module_vector(&self, module: &WhittakerModule) -> Result<ModuleVector, Error> {
        let mut out = ModuleVector::zero(module.sector());
        for t in &self.terms {
            if !t.has_w {
                return Err(err(0, format!("term '{}' does not end in w", t.body())));
            }
            let v = module.act_word(&t.gens, &module.vacuum())?;
            out.add_scaled(&v, &t.coeff);
        }
        Ok(out)
    }
}
