//! Parser for series literals such as `1 - 3/2*x^(1/2) + x^2 + O(x^3)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::PuiseuxPoly;
use crate::error::{Error, Result};
use crate::rat::{Ext, Rat};

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, line: usize, col0: usize) -> Self {
        Cursor { src: src.as_bytes(), pos: 0, line, col0 }
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() })
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    /// `int` or `int/int`, unsigned.
    pub(crate) fn rational(&mut self) -> Result<Rat> {
        let n = self.integer()?;
        let save = self.pos;
        if self.eat(b'/') {
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let d = self.integer()?;
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                return Ok(Rat::new(n, d));
            }
            self.pos = save;
        }
        Ok(Rat::from_integer(n))
    }

    /// Optionally signed rational, used for point radii.
    pub(crate) fn signed_rational(&mut self) -> Result<Rat> {
        let neg = self.eat(b'-');
        let r = self.rational()?;
        Ok(if neg { -r } else { r })
    }

    /// Exponent after `^`: `n`, `-n`, or a parenthesised signed rational.
    pub(crate) fn exponent(&mut self) -> Result<Rat> {
        if self.eat(b'(') {
            let r = self.signed_rational()?;
            self.expect(b')')?;
            Ok(r)
        } else if self.eat(b'-') {
            Ok(-Rat::from_integer(self.integer()?))
        } else {
            Ok(Rat::from_integer(self.integer()?))
        }
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    pub(crate) fn set_position(&mut self, pos: usize) {
        self.pos = pos;
    }
}

pub(crate) fn parse_series_at(cur: &mut Cursor<'_>) -> Result<PuiseuxPoly> {
    let mut terms = Vec::new();
    let mut prec = Ext::Inf;
    let mut first = true;
    loop {
        let neg = if cur.eat(b'-') {
            true
        } else if !first && cur.eat(b'+') {
            false
        } else if first {
            cur.eat(b'+');
            false
        } else {
            break;
        };
        first = false;
        match cur.peek() {
            Some(b'O') => {
                cur.set_position(cur.position() + 1);
                cur.expect(b'(')?;
                let p = if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    if !cur.integer()?.is_one() {
                        return cur.err("expected O(1) or O(x^p)");
                    }
                    Rat::zero()
                } else {
                    cur.expect(b'x')?;
                    if cur.eat(b'^') {
                        cur.exponent()?
                    } else {
                        Rat::one()
                    }
                };
                cur.expect(b')')?;
                prec = std::cmp::min(prec, Ext::Fin(p));
            }
            Some(c) if c.is_ascii_digit() || c == b'x' => {
                let coef = if c == b'x' { Rat::one() } else { cur.rational()? };
                let has_x = if c == b'x' {
                    true
                } else if cur.eat(b'*') {
                    if cur.peek() != Some(b'x') {
                        return cur.err("expected 'x' after '*'");
                    }
                    true
                } else {
                    cur.peek() == Some(b'x')
                };
                let e = if has_x {
                    cur.expect(b'x')?;
                    if cur.eat(b'^') {
                        cur.exponent()?
                    } else {
                        Rat::one()
                    }
                } else {
                    Rat::zero()
                };
                terms.push((e, if neg { -coef } else { coef }));
            }
            _ => return cur.err("expected a term"),
        }
    }
    Ok(PuiseuxPoly::new(terms, prec))
}

/// Parse a series literal. Grammar: signed sums of `c*x^(p/q)` terms with an optional `O(x^p)`.
pub fn parse_series(text: &str) -> Result<PuiseuxPoly> {
    let mut cur = Cursor::new(text, 1, 0);
    let s = parse_series_at(&mut cur)?;
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn parses_spec_literal() {
        let a = parse_series("1 - 3/2*x^(1/2) + x^2").unwrap();
        assert_eq!(
            a.terms(),
            &[(int(0), int(1)), (rat(1, 2), rat(-3, 2)), (int(2), int(1))]
        );
        assert!(a.is_exact());
    }

    #[test]
    fn parses_big_o_and_negative_exponents() {
        let a = parse_series("x^-1 + 2 x + O(x^3)").unwrap();
        assert_eq!(a.terms(), &[(int(-1), int(1)), (int(1), int(2))]);
        assert_eq!(*a.precision(), Ext::Fin(int(3)));
        assert_eq!(*parse_series("O(1)").unwrap().precision(), Ext::Fin(int(0)));
    }

    #[test]
    fn reports_columns() {
        match parse_series("1 + * x") {
            Err(Error::Parse { line: 1, col: 5, .. }) => {}
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_series("1/0").is_err());
        assert!(parse_series("x^").is_err());
    }
}
