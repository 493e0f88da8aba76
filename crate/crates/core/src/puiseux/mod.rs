//! Truncated Puiseux series with rational coefficients and exponents.

pub mod newton;
pub(crate) mod parse;

pub use newton::{newton_puiseux, BranchDescriptor, PuiseuxRoot, RootSet, YPoly};
pub use parse::parse_series;
pub(crate) use parse::parse_series_at;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{prec_err, Error, Result};
use crate::rat::{binom, denom, int, is_integer, lcm, rat_pow, Ext, Rat};

/// Default working precision (as an exponent of x).
pub const DEFAULT_PRECISION: i64 = 64;

/// A series `sum c_e x^e + O(x^prec)`. Terms are sorted by exponent, coefficients nonzero,
/// and every exponent lies strictly below the precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxPoly {
    terms: Vec<(Rat, Rat)>,
    prec: Ext,
}

impl PuiseuxPoly {
    pub fn new(terms: impl IntoIterator<Item = (Rat, Rat)>, prec: Ext) -> Self {
        let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if Ext::Fin(e.clone()) >= prec {
                continue;
            }
            *acc.entry(e).or_insert_with(Rat::zero) += c;
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PuiseuxPoly { terms, prec }
    }

    pub fn exact(terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        Self::new(terms, Ext::Inf)
    }

    pub fn zero() -> Self {
        PuiseuxPoly { terms: Vec::new(), prec: Ext::Inf }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Rat::zero())
    }

    pub fn monomial(c: Rat, e: Rat) -> Self {
        Self::exact([(e, c)])
    }

    /// The unknown series `O(x^p)`.
    pub fn big_o(p: Rat) -> Self {
        PuiseuxPoly { terms: Vec::new(), prec: Ext::Fin(p) }
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn precision(&self) -> &Ext {
        &self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_inf()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_inf()
    }

    pub fn has_terms(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn val(&self) -> Result<Ext> {
        match self.terms.first() {
            Some((e, _)) => Ok(Ext::Fin(e.clone())),
            None if self.prec.is_inf() => Ok(Ext::Inf),
            None => prec_err(format!("cannot decide whether {} vanishes", self)),
        }
    }

    /// A lower bound for the valuation: the first exponent, or the precision if no term is known.
    pub fn val_lower(&self) -> Ext {
        match self.terms.first() {
            Some((e, _)) => Ext::Fin(e.clone()),
            None => self.prec.clone(),
        }
    }

    pub fn lead(&self) -> Option<(&Rat, &Rat)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn coeff(&self, e: &Rat) -> Rat {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    /// Leading coefficient: the image of a unit in the residue field.
    pub fn residue(&self) -> Option<Rat> {
        self.lead().map(|(_, c)| c.clone())
    }

    pub fn ramification_index(&self) -> u64 {
        self.terms.iter().fold(1, |m, (e, _)| lcm(m, denom(e)))
    }

    pub fn truncate(&self, t: &Rat) -> Result<Self> {
        if self.prec < *t {
            return prec_err(format!("truncation at {} exceeds precision {}", t, self.prec));
        }
        Ok(self.trunc_lt(t))
    }

    /// Drop terms with exponent >= t; the result has precision min(prec, t).
    pub fn trunc_lt(&self, t: &Rat) -> Self {
        let prec = std::cmp::min(self.prec.clone(), Ext::Fin(t.clone()));
        PuiseuxPoly {
            terms: self.terms.iter().filter(|(e, _)| e < t).cloned().collect(),
            prec,
        }
    }

    /// Keep terms with exponent <= t, as an exact series.
    pub fn trunc_le(&self, t: &Rat) -> Self {
        PuiseuxPoly {
            terms: self.terms.iter().filter(|(e, _)| e <= t).cloned().collect(),
            prec: Ext::Inf,
        }
    }

    pub fn with_precision(&self, prec: Ext) -> Self {
        Self::new(self.terms.iter().cloned(), prec)
    }

    pub fn exactify(&self) -> Self {
        PuiseuxPoly { terms: self.terms.clone(), prec: Ext::Inf }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
            prec: self.prec.clone(),
        }
    }

    /// Multiply by x^s.
    pub fn shift(&self, s: &Rat) -> Self {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, k)| (e + s, k.clone())).collect(),
            prec: self.prec.add(s),
        }
    }

    /// Substitute x -> x^r for r > 0.
    pub fn substitute_power(&self, r: &Rat) -> Self {
        assert!(r.is_positive());
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, k)| (e * r, k.clone())).collect(),
            prec: self.prec.mul(r),
        }
    }

    pub fn mul_trunc(&self, other: &Self, cap: &Ext) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let prec = std::cmp::min(
            self.prec.plus(&other.val_lower()),
            other.prec.plus(&self.val_lower()),
        );
        let prec = std::cmp::min(prec, cap.clone());
        let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if Ext::Fin(e.clone()) >= prec {
                    break;
                }
                *acc.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        Self::new(acc, prec)
    }

    /// Product with terms at exponents >= cap discarded. The precision drops to `cap` only
    /// when something was actually discarded, so exact inputs stay exact when possible.
    pub fn mul_capped(&self, other: &Self, cap: &Rat) -> Self {
        let dropped = self
            .terms
            .last()
            .zip(other.terms.last())
            .is_some_and(|((a, _), (b, _))| a + b >= *cap);
        let limit = if dropped { Ext::Fin(cap.clone()) } else { Ext::Inf };
        self.mul_trunc(other, &limit)
    }

    /// `self^k` with terms at exponents >= cap discarded, as in `mul_capped`.
    pub fn pow_capped(&self, k: u32, cap: &Rat) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_capped(&base, cap);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_capped(&base, cap);
            }
        }
        result
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self^e` for rational `e`, with infinite expansions cut at absolute exponent `cap`.
    pub fn pow_rat(&self, e: &Rat, cap: &Rat) -> Result<Self> {
        if is_integer(e) && !e.is_negative() {
            let k = e.to_integer().to_u32().ok_or_else(|| {
                Error::Precondition(format!("exponent {} too large", e))
            })?;
            return Ok(self.pow_capped(k, cap));
        }
        let (v, c0) = match self.lead() {
            Some((v, c)) => (v.clone(), c.clone()),
            None if self.is_exact() => {
                return Err(Error::Precondition("negative or fractional power of zero".into()))
            }
            None => return prec_err(format!("leading term of {} unknown", self)),
        };
        let lead = rat_pow(&c0, e)
            .ok_or_else(|| Error::NotRepresentable(format!("({})^({}) is irrational", c0, e)))?;
        let ve = &v * e;
        let u = PuiseuxPoly::new(
            self.terms[1..].iter().map(|(x, c)| (x - &v, c / &c0)),
            self.prec.add(&-&v),
        );
        if u.is_exact_zero() {
            return Ok(PuiseuxPoly::monomial(lead, ve));
        }
        let rel = std::cmp::min(u.prec.clone(), Ext::Fin(cap - &ve));
        let rel = match rel {
            Ext::Fin(r) => r,
            Ext::Inf => unreachable!(),
        };
        if !rel.is_positive() {
            return Ok(PuiseuxPoly::big_o(&ve + &rel));
        }
        let cap_rel = Ext::Fin(rel.clone());
        let mut sum = PuiseuxPoly::one().with_precision(cap_rel.clone());
        let mut upow = PuiseuxPoly::one();
        let mut k = 1usize;
        loop {
            upow = upow.mul_trunc(&u, &cap_rel);
            if !upow.has_terms() {
                break;
            }
            sum = &sum + &upow.scale(&binom(e, k));
            k += 1;
        }
        Ok(sum.scale(&lead).shift(&ve))
    }

    pub fn inv(&self, target: &Rat) -> Result<Self> {
        self.pow_rat(&int(-1), target)
    }

    /// `self / other`, correct to absolute precision `target` where the inputs allow.
    pub fn div(&self, other: &Self, target: &Rat) -> Result<Self> {
        let shift = match self.val_lower() {
            Ext::Fin(v) => v,
            Ext::Inf => return Ok(Self::zero()),
        };
        let inv = other.inv(&(target - shift))?;
        Ok(self.mul_trunc(&inv, &Ext::Fin(target.clone())))
    }

    /// `self(b(x))` for `val(b) > 0`; infinite expansions are cut at `cap`.
    pub fn compose(&self, b: &Self, cap: &Rat) -> Result<Self> {
        let w = match b.val()? {
            Ext::Fin(w) if w.is_positive() => w,
            _ => return Err(Error::Precondition(format!("compose needs val(b) > 0, got {}", b))),
        };
        let l = self.ramification_index();
        let root = if l == 1 {
            Some(b.clone())
        } else {
            match b.pow_rat(&Rat::new(1.into(), l.into()), cap) {
                Ok(r) => Some(r),
                Err(Error::NotRepresentable(_)) => None,
                Err(e) => return Err(e),
            }
        };
        let mut acc = PuiseuxPoly::zero();
        let mut power = PuiseuxPoly::one();
        let mut k: u64 = 0;
        for (e, c) in &self.terms {
            let scaled = e * Rat::from_integer(l.into());
            let term = match (&root, scaled.to_integer().to_u64()) {
                (Some(r), Some(target)) if !e.is_negative() => {
                    while k < target {
                        power = power.mul_capped(r, cap);
                        k += 1;
                    }
                    power.clone()
                }
                _ => b.pow_rat(e, cap)?,
            };
            acc = &acc + &term.scale(c);
        }
        if let Ext::Fin(p) = &self.prec {
            acc = acc.trunc_lt(&(p * &w));
        }
        Ok(acc)
    }

    /// The compositional inverse `g` with `g(self(x)) = x` to `O(x^target)`.
    /// `self` must be `lambda x^n (1 + ...)` with `lambda^(1/n)` rational.
    pub fn reversion(&self, target: &Rat) -> Result<Self> {
        let n = match self.val()? {
            Ext::Fin(n) if n.is_positive() => n,
            _ => return Err(Error::Precondition(format!("reversion needs val > 0, got {}", self))),
        };
        let inv_n = n.recip();
        // The inverse starts at exponent 1, so keep at least one exponent beyond it.
        let work = std::cmp::max(target.clone(), int(2)) * &n;
        let psi = self.pow_rat(&inv_n, &(&work + Rat::one()))?;
        let Some(mu) = psi.lead().map(|(_, c)| c.clone()) else {
            return prec_err(format!("{} is not known beyond its leading order", self));
        };
        let rho = &psi - &PuiseuxPoly::monomial(mu.clone(), Rat::one());
        let h = if rho.is_exact_zero() {
            PuiseuxPoly::monomial(mu.recip(), Rat::one())
        } else {
            let delta = match rho.val_lower() {
                Ext::Fin(v) if v > Rat::one() => v - Rat::one(),
                Ext::Fin(_) => unreachable!("higher terms of psi exceed exponent 1"),
                Ext::Inf => Rat::one(),
            };
            let bound = (&work / &delta).ceil().to_integer().to_usize().unwrap_or(usize::MAX) + 2;
            let x = PuiseuxPoly::x();
            let mut h = PuiseuxPoly::monomial(mu.recip(), Rat::one()).trunc_lt(&work);
            let mut reach = Rat::one() + &delta;
            for _ in 0..bound {
                reach = std::cmp::min(&reach + &delta, work.clone());
                let cap = &reach + Rat::one();
                let next = (&x - &rho.trunc_lt(&cap).compose(&h.trunc_lt(&reach), &cap)?)
                    .scale(&mu.recip())
                    .trunc_lt(&reach);
                if reach == work && next == h {
                    break;
                }
                h = next.trunc_lt(&work);
            }
            h
        };
        let g = h.substitute_power(&inv_n);
        if g.prec < *target {
            return prec_err(format!("reversion of {} reached only {}", self, g.prec));
        }
        Ok(g)
    }
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        let prec = std::cmp::min(self.prec.clone(), o.prec.clone());
        PuiseuxPoly::new(self.terms.iter().chain(o.terms.iter()).cloned(), prec)
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            prec: self.prec.clone(),
        }
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self + &(-o)
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self.mul_trunc(o, &Ext::Inf)
    }
}

pub(crate) fn fmt_exp(e: &Rat) -> String {
    if is_integer(e) && !e.is_negative() {
        format!("{}", e)
    } else {
        format!("({})", e)
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", mag)?;
            }
            if e.is_one() {
                write!(f, "x")?;
            } else {
                write!(f, "x^{}", fmt_exp(e))?;
            }
        }
        if let Ext::Fin(p) = &self.prec {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(x^{})", fmt_exp(p))?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
