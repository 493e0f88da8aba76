//! Dense univariate polynomials over Q, used for residue maps and characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly(Vec<Rat>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `z - r`
    pub fn linear(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.0.last()
    }

    pub fn eval(&self, z: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * z + c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let get = |v: &Vec<Rat>, i: usize| v.get(i).cloned().unwrap_or_else(Rat::zero);
        Self::new((0..n).map(|i| get(&self.0, i) + get(&o.0, i)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(Rat::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => QPoly(self.0.iter().map(|c| c / l).collect()),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `z = 0` as a root.
    pub fn zero_order(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    /// All rational roots with multiplicity, in increasing order.
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let k0 = self.zero_order();
        let mut p = Self::new(self.0[k0..].to_vec());
        if k0 > 0 {
            out.push((Rat::zero(), k0));
        }
        if p.degree() == Some(0) {
            return out;
        }
        let cands = isolated_rational_roots(&p.div_rem(&p.gcd(&p.derivative())).0);
        for r in cands {
            let mut mult = 0;
            loop {
                if p.degree().unwrap_or(0) == 0 || !p.eval(&r).is_zero() {
                    break;
                }
                p = p.div_rem(&Self::linear(&r)).0;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out.sort();
        out
    }
}

fn integer_coefficients(p: &QPoly) -> Vec<BigInt> {
    let l = p.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    p.0.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect()
}

/// Sturm sequence of `p`, each entry scaled by a positive constant to primitive integer form.
fn sturm_sequence(p: &QPoly) -> Vec<Vec<BigInt>> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        seq.push(r.neg());
    }
    seq.pop();
    seq.iter()
        .map(|q| {
            let ints = integer_coefficients(q);
            let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            ints.into_iter().map(|c| c / &g).collect()
        })
        .collect()
}

/// Sign of `q(x)` for integer coefficients, computed as `b^d q(a/b)` with `x = a/b`, `b > 0`.
fn sign_at(q: &[BigInt], x: &Rat) -> i32 {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in q.iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}
/// The fraction with the smallest denominator in `[a, b]`, for `a <= b`.
fn simplest_between(a: &Rat, b: &Rat) -> Rat {
    let fl = a.floor();
    if fl == *a || &fl + Rat::one() <= *b {
        return if a.is_integer() { a.clone() } else { a.ceil() };
    }
    let (fa, fb) = (a - &fl, b - &fl);
    fl + simplest_between(&fb.recip(), &fa.recip()).recip()
}

fn sign_changes(seq: &[Vec<BigInt>], x: &Rat) -> usize {
    let signs: Vec<i32> = seq.iter().map(|q| sign_at(q, x)).filter(|&v| v != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Rational roots of a squarefree polynomial without zero roots.
///
/// A rational root `p/q` of an integer polynomial has `q` dividing the leading coefficient `N`,
/// and distinct fractions with denominators at most `N` are at least `1/N^2` apart. Each real
/// root is isolated with Sturm sequences to an interval shorter than that, which then contains
/// at most one such fraction: the one with the smallest denominator.
fn isolated_rational_roots(p: &QPoly) -> Vec<Rat> {
    let ints = integer_coefficients(p);
    let n = ints.last().unwrap().abs();
    let width = Rat::new(BigInt::one(), &n * &n * 2);
    let bound = p.0.iter().map(|c| (c / p.lead().unwrap()).abs()).max().unwrap() + Rat::one();
    let seq = sturm_sequence(p);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo < width {
            let r = simplest_between(&lo, &hi);
            if r.denom() <= &n && p.eval(&r).is_zero() {
                out.push(r);
            }
            continue;
        }
        // Split at a point that is not a root, so every endpoint stays a non-root.
        let mid = std::iter::once(Rat::new(1.into(), 2.into()))
            .chain((1..).map(|k: i64| Rat::new(k.into(), (2 * k + 1).into())))
            .map(|f| &lo + (&hi - &lo) * f)
            .find(|m| sign_at(&seq[0], m) != 0)
            .unwrap();
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let m = c.abs();
            match i {
                0 => write!(f, "{}", m)?,
                _ => {
                    if !m.is_one() {
                        write!(f, "{}*", m)?;
                    }
                    if i == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn q(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn roots_with_multiplicity() {
        // (z - 1)^2 (2z + 3) z
        let p = q(&[0, 1]).mul(&q(&[-1, 1]).pow(2)).mul(&q(&[3, 2]));
        assert_eq!(p.rational_roots(), vec![(rat(-3, 2), 1), (int(0), 1), (int(1), 2)]);
        assert!(q(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(q(&[-1, 0, 0, 0, 0, 0, 1]).rational_roots(), vec![(int(-1), 1), (int(1), 1)]);
    }

    #[test]
    fn roots_with_large_coefficients() {
        let big = Rat::new(BigInt::from(982_451_653_i64) * BigInt::from(1_000_000_007_i64), BigInt::from(999_983));
        let p = QPoly::linear(&big).mul(&QPoly::linear(&rat(-7, 3)).pow(3)).mul(&q(&[-2, 0, 1]));
        assert_eq!(p.rational_roots(), vec![(rat(-7, 3), 3), (big, 1)]);
    }

    #[test]
    fn simplest_fractions() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-5, 4), &rat(-6, 5)), rat(-5, 4));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), int(0));
    }

    #[test]
    fn gcd_and_division() {
        let a = q(&[0, 0, 0, 0, 0, 0, 1]);
        let b = q(&[0, 0, 0, 1]);
        assert_eq!(a.gcd(&b), b);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, b);
        assert!(r.is_zero());
        assert_eq!(q(&[1, 0, 1]).gcd(&q(&[0, 1])), q(&[1]));
    }

    #[test]
    fn display() {
        assert_eq!(q(&[2, 0, -1]).to_string(), "-y^2 + 2");
    }
}
