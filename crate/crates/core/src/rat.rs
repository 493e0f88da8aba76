//! Exact rationals and the extended value `Ext` (a rational or +∞).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Reduced denominator as a machine integer.
pub fn denom(r: &Rat) -> u64 {
    r.denom().to_u64().expect("denominator exceeds u64")
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Exact q-th root of a rational, if it exists in Q. Odd roots of negatives are allowed.
pub fn rat_root(r: &Rat, q: u32) -> Option<Rat> {
    if q == 1 {
        return Some(r.clone());
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    if r.is_negative() && q.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let a = n.abs();
        let k = a.nth_root(q);
        if num_traits::pow(k.clone(), q as usize) == a {
            Some(if n.is_negative() { -k } else { k })
        } else {
            None
        }
    };
    Some(Rat::new(root_int(r.numer())?, root_int(r.denom())?))
}

/// Rational power `r^(p/q)` when representable.
pub fn rat_pow(r: &Rat, e: &Rat) -> Option<Rat> {
    let q = e.denom().to_u32()?;
    let base = rat_root(r, q)?;
    let p = e.numer().to_i32()?;
    if base.is_zero() {
        return if p > 0 { Some(Rat::zero()) } else { None };
    }
    Some(num_traits::pow::Pow::pow(&base, p))
}

/// Generalised binomial coefficient `binom(e, k)` for rational `e`.
pub fn binom(e: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * (e - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        Some(Rat::from_integer(s.parse().ok()?))
    }
}

/// A rational or +∞. Ordered with +∞ greatest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Fin(Rat),
    Inf,
}

impl Ext {
    pub fn fin(&self) -> Option<&Rat> {
        match self {
            Ext::Fin(r) => Some(r),
            Ext::Inf => None,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Ext::Inf)
    }

    pub fn add(&self, r: &Rat) -> Ext {
        match self {
            Ext::Fin(a) => Ext::Fin(a + r),
            Ext::Inf => Ext::Inf,
        }
    }

    pub fn plus(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            _ => Ext::Inf,
        }
    }

    pub fn mul(&self, r: &Rat) -> Ext {
        debug_assert!(r.is_positive());
        match self {
            Ext::Fin(a) => Ext::Fin(a * r),
            Ext::Inf => Ext::Inf,
        }
    }
}

impl From<Rat> for Ext {
    fn from(r: Rat) -> Self {
        Ext::Fin(r)
    }
}

impl PartialEq<Rat> for Ext {
    fn eq(&self, other: &Rat) -> bool {
        matches!(self, Ext::Fin(a) if a == other)
    }
}

impl PartialOrd<Rat> for Ext {
    fn partial_cmp(&self, other: &Rat) -> Option<std::cmp::Ordering> {
        Some(match self {
            Ext::Fin(a) => a.cmp(other),
            Ext::Inf => std::cmp::Ordering::Greater,
        })
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(r) => write!(f, "{}", r),
            Ext::Inf => write!(f, "inf"),
        }
    }
}
