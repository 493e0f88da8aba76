//! Polynomials in y over Puiseux series and Newton–Puiseux root finding.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::PuiseuxPoly;
use crate::error::{prec_err, Error, Result};
use crate::qpoly::QPoly;
use crate::rat::{denom, int, Ext, Rat};

/// `sum_i f[i] y^i`.
pub type YPoly = Vec<PuiseuxPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxRoot {
    pub root: PuiseuxPoly,
    pub multiplicity: usize,
}

/// A cluster of branches whose next coefficient is irrational over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDescriptor {
    pub degree: usize,
    pub valuation: Rat,
    /// Common expansion of the branches below `valuation`.
    pub prefix: PuiseuxPoly,
    /// True when these branches are Galois conjugates of roots that were expanded.
    pub conjugate_of_expanded: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<PuiseuxRoot>,
    pub unresolved: Vec<BranchDescriptor>,
}

impl RootSet {
    pub fn total_degree(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum::<usize>()
            + self.unresolved.iter().map(|d| d.degree).sum::<usize>()
    }
}

pub fn ypoly_trim(f: &mut YPoly) {
    while f.last().is_some_and(|c| c.is_exact_zero()) {
        f.pop();
    }
}

pub fn ypoly_degree(f: &YPoly) -> Option<usize> {
    f.iter().rposition(|c| !c.is_exact_zero())
}

pub fn ypoly_eval(f: &YPoly, r: &PuiseuxPoly, cap: &Ext) -> PuiseuxPoly {
    let mut acc = PuiseuxPoly::zero();
    for c in f.iter().rev() {
        acc = &acc.mul_trunc(r, cap) + c;
    }
    acc
}

pub fn ypoly_derivative(f: &YPoly) -> YPoly {
    let mut d: YPoly =
        f.iter().enumerate().skip(1).map(|(i, c)| c.scale(&int(i as i64))).collect();
    ypoly_trim(&mut d);
    d
}

pub fn ypoly_mul(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![PuiseuxPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    ypoly_trim(&mut out);
    out
}

pub fn ypoly_sub(a: &YPoly, b: &YPoly) -> YPoly {
    let n = a.len().max(b.len());
    let zero = PuiseuxPoly::zero();
    let mut out: YPoly =
        (0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect();
    ypoly_trim(&mut out);
    out
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

/// Taylor shift `f(s + y)`, coefficients cut at `cap`.
pub fn ypoly_shift(f: &YPoly, s: &PuiseuxPoly, cap: &Ext) -> YPoly {
    let n = f.len();
    let mut powers = vec![PuiseuxPoly::one()];
    for k in 1..n {
        let next = powers[k - 1].mul_trunc(s, cap);
        powers.push(next);
    }
    let mut out: YPoly = (0..n)
        .map(|k| {
            let mut acc = PuiseuxPoly::zero();
            for i in k..n {
                if f[i].is_exact_zero() {
                    continue;
                }
                let term = f[i].mul_trunc(&powers[i - k], cap).scale(&binomial(i, k));
                acc = &acc + &term;
            }
            acc
        })
        .collect();
    ypoly_trim(&mut out);
    out
}

fn cap_terms(a: &PuiseuxPoly, bound: &Rat) -> PuiseuxPoly {
    if a.is_exact() && a.terms().last().is_none_or(|(e, _)| e < bound) {
        a.clone()
    } else {
        a.trunc_lt(bound)
    }
}

struct Ctx {
    target: Rat,
    bound: Rat,
}

/// All roots of `f` as Puiseux series over Q to `O(x^target)`. Branch clusters that need an
/// irrational residue are returned as descriptors.
pub fn newton_puiseux(f: &YPoly, target: &Rat) -> Result<RootSet> {
    let mut f = f.clone();
    ypoly_trim(&mut f);
    if f.is_empty() {
        return Err(Error::Precondition("newton_puiseux needs a nonzero polynomial".into()));
    }
    if !f.last().unwrap().has_terms() {
        return prec_err("leading coefficient indistinguishable from zero");
    }
    let deg = f.len() - 1;
    let maxval = f
        .iter()
        .filter_map(|c| c.val_lower().fin().map(|v| v.abs()))
        .max()
        .unwrap_or_else(Rat::zero);
    let bound = int(deg as i64 + 1) * (target + &maxval + Rat::one());
    let ctx = Ctx { target: target.clone(), bound };
    let f: YPoly = f.iter().map(|c| cap_terms(c, &ctx.bound)).collect();
    let mut out = RootSet::default();
    recurse(&ctx, f, PuiseuxPoly::zero(), None, &mut out)?;
    Ok(out)
}

fn recurse(
    ctx: &Ctx,
    mut f: YPoly,
    prefix: PuiseuxPoly,
    gprev: Option<Rat>,
    out: &mut RootSet,
) -> Result<()> {
    let k0 = f.iter().take_while(|c| c.is_exact_zero()).count();
    if k0 > 0 {
        out.roots.push(PuiseuxRoot { root: prefix.clone(), multiplicity: k0 });
        f.drain(..k0);
    }
    if f.len() <= 1 {
        return Ok(());
    }
    let pts: Vec<(usize, Rat, bool)> = f
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.val_lower().fin().map(|v| (i, v.clone(), c.has_terms())))
        .collect();
    for (a, b) in lower_hull(&pts) {
        let (i, vi, ci) = &pts[a];
        let (j, vj, cj) = &pts[b];
        let gamma = (vi - vj) / int((*j - *i) as i64);
        if gprev.as_ref().is_some_and(|g| gamma <= *g) {
            continue;
        }
        let len = j - i;
        if gamma >= ctx.target {
            out.roots.push(PuiseuxRoot {
                root: prefix.with_precision(Ext::Fin(ctx.target.clone())),
                multiplicity: len,
            });
            continue;
        }
        let level = vi + &gamma * int(*i as i64);
        let mut phi = vec![Rat::zero(); len + 1];
        for (k, vk, ck) in &pts {
            if *k < *i || *k > *j || vk + &gamma * int(*k as i64) != level {
                continue;
            }
            if !ck || !ci || !cj {
                return prec_err(format!(
                    "Newton polygon segment of slope {} depends on unknown coefficients",
                    gamma
                ));
            }
            phi[k - i] = f[*k].residue().expect("certain coefficient has a lead");
        }
        let phi = QPoly::new(phi);
        let mut expanded = 0;
        let mut rest = phi.clone();
        let mut conj = QPoly::constant(Rat::one());
        let q = denom(&gamma) as usize;
        for (c, mu) in phi.rational_roots() {
            if c.is_zero() {
                continue;
            }
            expanded += mu;
            rest = rest.div_rem(&QPoly::linear(&c).pow(mu)).0;
            let cq = num_traits::pow::Pow::pow(&c, q as u32);
            let zq = QPoly::monomial(Rat::one(), q).sub(&QPoly::constant(cq));
            conj = conj.mul(&zq.pow(mu));
            let s = PuiseuxPoly::monomial(c.clone(), gamma.clone());
            let g: YPoly =
                ypoly_shift(&f, &s, &Ext::Inf).iter().map(|c| cap_terms(c, &ctx.bound)).collect();
            recurse(ctx, g, &prefix + &s, Some(gamma.clone()), out)?;
        }
        if expanded < len {
            out.unresolved.push(BranchDescriptor {
                degree: len - expanded,
                valuation: gamma.clone(),
                prefix: prefix.clone(),
                conjugate_of_expanded: expanded > 0 && conj.div_rem(&rest).1.is_zero(),
            });
        }
    }
    Ok(())
}

/// Indices into `pts` of consecutive lower-hull vertices, left to right.
fn lower_hull(pts: &[(usize, Rat, bool)]) -> Vec<(usize, usize)> {
    let mut hull: Vec<usize> = Vec::new();
    for idx in 0..pts.len() {
        while hull.len() >= 2 {
            let a = &pts[hull[hull.len() - 2]];
            let b = &pts[hull[hull.len() - 1]];
            let c = &pts[idx];
            let cross = (&b.1 - &a.1) * int((c.0 - a.0) as i64) - (&c.1 - &a.1) * int((b.0 - a.0) as i64);
            if !cross.is_negative() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(idx);
    }
    hull.windows(2).map(|w| (w[0], w[1])).collect()
}
