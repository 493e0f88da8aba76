//! Rational functions in y with Puiseux-polynomial coefficients, and their text grammar.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::puiseux::newton::{ypoly_mul, ypoly_sub, ypoly_trim};
use crate::puiseux::parse::Cursor;
use crate::puiseux::{fmt_exp, PuiseuxPoly, YPoly};
use crate::rat::{int, is_integer, Rat};

/// `num / den` with exact coefficients. Common powers of y are cancelled on construction, as
/// are common monomial powers of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    pub num: YPoly,
    pub den: YPoly,
}

fn ypoly_add(a: &YPoly, b: &YPoly) -> YPoly {
    let n = a.len().max(b.len());
    let zero = PuiseuxPoly::zero();
    let mut out: YPoly =
        (0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect();
    ypoly_trim(&mut out);
    out
}

fn ypoly_scale_x(a: &YPoly, s: &Rat) -> YPoly {
    a.iter().map(|c| c.shift(s)).collect()
}

fn min_x_exponent(a: &YPoly) -> Option<Rat> {
    a.iter().filter_map(|c| c.lead().map(|(e, _)| e.clone())).min()
}

impl RatFn {
    pub fn new(mut num: YPoly, mut den: YPoly) -> Result<Self> {
        ypoly_trim(&mut num);
        ypoly_trim(&mut den);
        if den.is_empty() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        if num.is_empty() {
            return Ok(RatFn { num, den: vec![PuiseuxPoly::one()] });
        }
        let kn = num.iter().take_while(|c| c.is_exact_zero()).count();
        let kd = den.iter().take_while(|c| c.is_exact_zero()).count();
        let k = kn.min(kd);
        num.drain(..k);
        den.drain(..k);
        let sx = std::cmp::min(min_x_exponent(&num).unwrap(), min_x_exponent(&den).unwrap());
        let sx = -sx;
        let mut num = ypoly_scale_x(&num, &sx);
        let mut den = ypoly_scale_x(&den, &sx);
        if den.len() == 1 && den[0].terms().len() == 1 {
            let (e, c) = den[0].lead().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            num = num.iter().map(|p| p.scale(&c.recip()).shift(&-&e)).collect();
            den = vec![PuiseuxPoly::one()];
        }
        Ok(RatFn { num, den })
    }

    pub fn constant(c: PuiseuxPoly) -> Self {
        RatFn { num: vec![c], den: vec![PuiseuxPoly::one()] }
    }

    pub fn y() -> Self {
        RatFn { num: vec![PuiseuxPoly::zero(), PuiseuxPoly::one()], den: vec![PuiseuxPoly::one()] }
    }

    pub fn y_degree(&self) -> usize {
        self.num.len().max(self.den.len()).saturating_sub(1)
    }

    /// The single coefficient when the function does not involve y and has denominator 1.
    pub fn as_series(&self) -> Option<&PuiseuxPoly> {
        if self.num.len() <= 1 && self.den.len() == 1 && self.den[0] == PuiseuxPoly::one() {
            Some(self.num.first().unwrap_or(&self.den[0]))
                .map(|p| if self.num.is_empty() { p } else { &self.num[0] })
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return RatFn::new(ypoly_add(&self.num, &o.num), self.den.clone());
        }
        RatFn::new(
            ypoly_add(&ypoly_mul(&self.num, &o.den), &ypoly_mul(&o.num, &self.den)),
            ypoly_mul(&self.den, &o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        RatFn::new(ypoly_mul(&self.num, &o.num), ypoly_mul(&self.den, &o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_empty() {
            return Err(Error::Precondition("division by zero".into()));
        }
        RatFn::new(ypoly_mul(&self.num, &o.den), ypoly_mul(&self.den, &o.num))
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { RatFn::constant(PuiseuxPoly::one()).div(self)? } else { self.clone() };
        let mut acc = RatFn::constant(PuiseuxPoly::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Monomial `c x^e` view, used for fractional powers.
    fn as_monomial(&self) -> Option<(Rat, Rat)> {
        let s = self.as_series()?;
        match s.terms() {
            [(e, c)] => Some((e.clone(), c.clone())),
            _ => None,
        }
    }

    pub fn pow(&self, e: &Rat) -> Result<Self> {
        if is_integer(e) {
            let k = e.to_integer().to_i64().ok_or_else(|| Error::Precondition("huge exponent".into()))?;
            return self.powi(k);
        }
        let (ex, c) = self
            .as_monomial()
            .ok_or_else(|| Error::Precondition("fractional power of a non-monomial".into()))?;
        let lead = crate::rat::rat_pow(&c, e)
            .ok_or_else(|| Error::NotRepresentable(format!("({})^({})", c, e)))?;
        Ok(RatFn::constant(PuiseuxPoly::monomial(lead, ex * e)))
    }

    /// Substitute `x -> base + sign * x` in every coefficient. Exponents of x must be integers.
    pub fn recentre(&self, base: &Rat, sign: i64) -> Result<Self> {
        if base.is_zero() && sign == 1 {
            return Ok(self.clone());
        }
        let lo = std::cmp::min(
            min_x_exponent(&self.num).unwrap_or_else(Rat::zero),
            min_x_exponent(&self.den).unwrap_or_else(Rat::zero),
        );
        let lift = if lo.is_negative() { -lo } else { Rat::zero() };
        let sub = PuiseuxPoly::exact([(Rat::zero(), base.clone()), (Rat::one(), int(sign))]);
        let go = |p: &YPoly| -> Result<YPoly> {
            p.iter().map(|c| substitute_poly(&c.shift(&lift), &sub)).collect()
        };
        RatFn::new(go(&self.num)?, go(&self.den)?)
    }
}

fn substitute_poly(c: &PuiseuxPoly, sub: &PuiseuxPoly) -> Result<PuiseuxPoly> {
    let mut acc = PuiseuxPoly::zero();
    for (e, k) in c.terms() {
        if !is_integer(e) || e.is_negative() {
            return Err(Error::Precondition(format!(
                "x^{} cannot be recentred at a nonzero base",
                e
            )));
        }
        let n = e.to_integer().to_u32().unwrap();
        acc = &acc + &sub.pow(n).scale(k);
    }
    Ok(acc)
}

fn parse_expr(cur: &mut Cursor<'_>) -> Result<RatFn> {
    let mut acc = parse_term(cur)?;
    loop {
        if cur.eat(b'+') {
            acc = acc.add(&parse_term(cur)?)?;
        } else if cur.peek() == Some(b'-') {
            cur.eat(b'-');
            acc = acc.sub(&parse_term(cur)?)?;
        } else {
            return Ok(acc);
        }
    }
}

fn starts_primary(c: Option<u8>) -> bool {
    matches!(c, Some(b'x' | b'y' | b'(')) || c.is_some_and(|c| c.is_ascii_digit())
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<RatFn> {
    let mut acc = parse_unary(cur)?;
    loop {
        if cur.eat(b'*') {
            acc = acc.mul(&parse_unary(cur)?)?;
        } else if cur.eat(b'/') {
            let pos = cur.position();
            let d = parse_unary(cur)?;
            if d.num.is_empty() {
                cur.set_position(pos);
                return cur.err("division by zero");
            }
            acc = acc.div(&d)?;
        } else if starts_primary(cur.peek()) {
            acc = acc.mul(&parse_unary(cur)?)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_unary(cur: &mut Cursor<'_>) -> Result<RatFn> {
    if cur.eat(b'-') {
        return Ok(parse_unary(cur)?.neg());
    }
    if cur.eat(b'+') {
        return parse_unary(cur);
    }
    let pos = cur.position();
    let (base, is_y) = parse_primary(cur)?;
    if cur.eat(b'^') {
        let e = cur.exponent()?;
        if is_y && !is_integer(&e) {
            cur.set_position(pos);
            return cur.err("powers of y must be integers");
        }
        return base.pow(&e).or_else(|err| {
            cur.set_position(pos);
            cur.err(err.to_string())
        });
    }
    Ok(base)
}

fn parse_primary(cur: &mut Cursor<'_>) -> Result<(RatFn, bool)> {
    match cur.peek() {
        Some(b'x') => {
            cur.eat(b'x');
            Ok((RatFn::constant(PuiseuxPoly::x()), false))
        }
        Some(b'y') => {
            cur.eat(b'y');
            Ok((RatFn::y(), true))
        }
        Some(b'(') => {
            cur.eat(b'(');
            let e = parse_expr(cur)?;
            cur.expect(b')')?;
            let is_y = e.y_degree() > 0;
            Ok((e, is_y))
        }
        Some(c) if c.is_ascii_digit() => {
            let n = cur.integer()?;
            Ok((RatFn::constant(PuiseuxPoly::constant(Rat::from_integer(n))), false))
        }
        _ => cur.err("expected x, y, a number or '('"),
    }
}

/// Parse a rational function in x and y. `line` and `col` locate the text for diagnostics.
pub fn parse_ratfn_at(text: &str, line: usize, col: usize) -> Result<RatFn> {
    let mut cur = Cursor::new(text, line, col);
    let f = parse_expr(&mut cur)?;
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    Ok(f)
}

pub fn parse_ratfn(text: &str) -> Result<RatFn> {
    parse_ratfn_at(text, 1, 0)
}

/// Print a polynomial in x and y as a sum of monomials, highest y-power first.
pub fn fmt_ypoly(p: &YPoly) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        for (e, a) in c.terms() {
            let neg = a.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = a.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (e.is_zero() && k == 0) {
                factors.push(mag.to_string());
            }
            if !e.is_zero() {
                factors.push(if e.is_one() { "x".into() } else { format!("x^{}", fmt_exp(e)) });
            }
            if k > 0 {
                factors.push(if k == 1 { "y".into() } else { format!("y^{}", k) });
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = self.den.len() == 1 && self.den[0] == PuiseuxPoly::one();
        if one {
            write!(f, "{}", fmt_ypoly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_ypoly(&self.num), fmt_ypoly(&self.den))
        }
    }
}

/// `N'D - ND'` as a polynomial in y.
pub fn wronskian(num: &YPoly, den: &YPoly) -> YPoly {
    use crate::puiseux::newton::ypoly_derivative;
    ypoly_sub(&ypoly_mul(&ypoly_derivative(num), den), &ypoly_mul(num, &ypoly_derivative(den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::parse_series;

    #[test]
    fn parses_thm6_fibre_map() {
        let f = parse_ratfn("x^4*y^-3 + y^3").unwrap();
        assert_eq!(f.y_degree(), 6);
        assert_eq!(f.den.len(), 4);
        assert_eq!(f.num[0], parse_series("x^4").unwrap());
        assert_eq!(f.num[6], PuiseuxPoly::one());
        assert_eq!(f.to_string(), "(y^6 + x^4)/(y^3)");
        assert_eq!(parse_ratfn(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn recentres_with_reflection() {
        // x -> 1 - x' in (1 - x)(x^4 y^-3 + y^3)
        let f = parse_ratfn("(1 - x)*(x^4*y^-3 + y^3)").unwrap();
        let g = f.recentre(&int(1), -1).unwrap();
        let expect = parse_ratfn("x*((1 - x)^4*y^-3 + y^3)").unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn fractional_powers() {
        let f = parse_ratfn("4*x^(1/2) + (4*x)^(1/2)*y").unwrap();
        assert_eq!(f.num[1], parse_series("2*x^(1/2)").unwrap());
        assert!(parse_ratfn("(1 + x)^(1/2)").is_err());
        assert!(parse_ratfn("y^(1/2)").is_err());
    }

    #[test]
    fn implicit_products_and_errors() {
        assert_eq!(parse_ratfn("2x y").unwrap(), parse_ratfn("2*x*y").unwrap());
        match parse_ratfn("x + / y") {
            Err(Error::Parse { col: 5, .. }) => {}
            other => panic!("{:?}", other),
        }
        assert!(parse_ratfn("1/(x - x)").is_err());
    }
}
