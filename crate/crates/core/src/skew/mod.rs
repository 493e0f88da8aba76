//! Local models of rational skew products and the induced maps on Type II points.
//!
//! A local model is `(x, y) -> (phi1(x), phi2(x, y))` in coordinates where the base point is
//! `x = 0`. It acts on the fibre over 0 by the Gauss-norm rule
//! `|f|_{phi_*(zeta)} = |phi_2^*(f)|_zeta^q` with `q = 1/n`, `n` the order of `phi1`.

pub mod ratfn;
mod chain;
mod raymap;

use std::sync::Mutex;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::berkovich::{direction_at, Direction, OpenDisk, TypeIIPoint};
use crate::error::{prec_err, Error, Result};
use crate::puiseux::newton::{ypoly_degree, ypoly_shift, ypoly_trim};
use crate::puiseux::{newton_puiseux, PuiseuxPoly, RootSet, YPoly};
use crate::qpoly::QPoly;
use crate::rat::{int, is_integer, Ext, Rat};

pub use chain::{AuxLink, Chain};
pub use ratfn::{parse_ratfn, RatFn};
pub use raymap::{RayMap, RayPiece};

/// Default number of probe refinements in [`SkewLocal::pushforward_direction`].
pub const DEFAULT_PROBE_CAP: usize = 8;

/// The base map germ `phi1(x) = lambda x^n + ...` at a fixed or periodic base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGerm {
    series: PuiseuxPoly,
    n: u64,
    lambda: Rat,
}

impl BaseGerm {
    pub fn new(series: PuiseuxPoly) -> Result<Self> {
        let (e, c) = series
            .lead()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| Error::Precondition(format!("base germ {} has no leading term", series)))?;
        if !is_integer(&e) || !e.is_positive() {
            return Err(Error::Precondition(format!(
                "base germ {} must have positive integer order",
                series
            )));
        }
        let n = e.to_integer().to_u64().unwrap();
        Ok(BaseGerm { series, n, lambda: c })
    }

    pub fn identity() -> Self {
        BaseGerm { series: PuiseuxPoly::x(), n: 1, lambda: Rat::one() }
    }

    pub fn series(&self) -> &PuiseuxPoly {
        &self.series
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn lead(&self) -> &Rat {
        &self.lambda
    }

    pub fn scale_factor(&self) -> Rat {
        Rat::new(1.into(), self.n.into())
    }
}

/// The reduction of a fibre map at the Gauss point, over the residue field Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub num: QPoly,
    pub den: QPoly,
    pub degree: usize,
}

/// Critical points of a one-variable rational map over Puiseux series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSet {
    pub finite: RootSet,
    /// Multiplicity of infinity as a critical point (0 when it is not one).
    pub at_infinity: usize,
}

/// Endpoints of the validated no-folding tree. The construction is heuristic: injectivity is
/// checked on sampled segments leaving the tree, not proven.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingTree {
    pub endpoints: Vec<TypeIIPoint>,
    /// Total number of outward shifts needed before every sample validated.
    pub shifts: usize,
}

/// The data behind one pushforward: pre-centre `c`, pre-radius `s`, and the image point.
#[derive(Clone, Debug)]
pub struct ImageData {
    pub pre_centre: PuiseuxPoly,
    pub pre_radius: Rat,
    pub image: TypeIIPoint,
}

/// `min_i (val(f_i) + i t)`, the Gauss valuation of `sum f_i tau^i` with `val(tau) = t`.
pub fn gauss_valuation(f: &YPoly, t: &Rat) -> Result<Ext> {
    let mut best = Ext::Inf;
    for (i, c) in f.iter().enumerate() {
        let v = c.val()?;
        let cand = v.add(&(t * int(i as i64)));
        if cand < best {
            best = cand;
        }
    }
    Ok(best)
}

/// A local model of a skew product over one fibre.
#[derive(Debug)]
pub struct SkewLocal {
    base: BaseGerm,
    num: YPoly,
    den: YPoly,
    rdeg: usize,
    inverse: Mutex<Option<PuiseuxPoly>>,
}

impl Clone for SkewLocal {
    fn clone(&self) -> Self {
        SkewLocal {
            base: self.base.clone(),
            num: self.num.clone(),
            den: self.den.clone(),
            rdeg: self.rdeg,
            inverse: Mutex::new(self.inverse.lock().unwrap().clone()),
        }
    }
}

impl PartialEq for SkewLocal {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base && self.num == o.num && self.den == o.den
    }
}

impl SkewLocal {
    pub fn new(base: BaseGerm, phi2: RatFn) -> Result<Self> {
        let RatFn { mut num, mut den } = phi2;
        ypoly_trim(&mut num);
        ypoly_trim(&mut den);
        if den.is_empty() {
            return Err(Error::Precondition("fibre map has zero denominator".into()));
        }
        let rdeg = num.len().max(den.len()) - 1;
        if num.is_empty() {
            return Err(Error::Precondition("fibre map is identically zero".into()));
        }
        Ok(SkewLocal { base, num, den, rdeg, inverse: Mutex::new(None) })
    }

    /// Build from text: `phi1` a series in x, `phi2` a rational function in x and y.
    pub fn parse(phi1: &str, phi2: &str) -> Result<Self> {
        let base = BaseGerm::new(crate::puiseux::parse_series(phi1)?)?;
        SkewLocal::new(base, parse_ratfn(phi2)?)
    }

    pub fn base(&self) -> &BaseGerm {
        &self.base
    }

    pub fn num(&self) -> &YPoly {
        &self.num
    }

    pub fn den(&self) -> &YPoly {
        &self.den
    }

    pub fn rdeg(&self) -> usize {
        self.rdeg
    }

    pub fn scale_factor(&self) -> Rat {
        self.base.scale_factor()
    }

    pub fn is_simple(&self) -> bool {
        self.base.n == 1
    }

    pub fn dynamical_degree(&self, deg_phi1: usize) -> usize {
        deg_phi1.max(self.rdeg)
    }

    /// The inverse germ of the base map to `O(x^target)`, cached across calls.
    pub fn inverse_germ(&self, target: &Rat) -> Result<PuiseuxPoly> {
        let mut slot = self.inverse.lock().unwrap();
        if let Some(g) = slot.as_ref() {
            if g.precision() >= target {
                return Ok(g.clone());
            }
        }
        let g = self.base.series.reversion(target)?;
        *slot = Some(g.clone());
        Ok(g)
    }

    /// Transport a fibre centre through the base: `c(g(x))` to precision at least `target`.
    pub fn transport(&self, c: &PuiseuxPoly, target: &Rat) -> Result<PuiseuxPoly> {
        if self.base.series == PuiseuxPoly::x() || c.terms().is_empty() && c.is_exact() {
            return Ok(c.clone());
        }
        let w = self.scale_factor();
        let vc = c.lead().map(|(e, _)| e.clone()).unwrap_or_else(Rat::zero);
        let slack = if vc.is_negative() { -&vc * &w } else { Rat::zero() };
        let gt = target + &w + slack + Rat::one();
        let g = self.inverse_germ(&gt)?;
        let b = c.compose(&g, &(target + Rat::one()))?;
        if *b.precision() < *target {
            return prec_err(format!("transported centre {} short of {}", b, target));
        }
        Ok(b)
    }

    /// `(P, Q)`: numerator and denominator of `phi2(x, a + tau)` as polynomials in tau.
    pub(crate) fn shifted(&self, a: &PuiseuxPoly) -> (YPoly, YPoly) {
        (ypoly_shift(&self.num, a, &Ext::Inf), ypoly_shift(&self.den, a, &Ext::Inf))
    }

    /// Full image computation for `zeta(a, t)`.
    pub fn image_data(&self, z: &TypeIIPoint) -> Result<ImageData> {
        let t = z.t();
        let (p, q) = self.shifted(z.centre());
        let (j, e) = best_candidate(&p, &q, t)?;
        let vq = gauss_valuation(&q, t)?.fin().cloned().expect("nonzero denominator");
        let e = match e {
            Ext::Fin(e) => e,
            Ext::Inf => {
                return Err(Error::DegenerateImage(format!(
                    "fibre map is constant on the residue class of {}",
                    z
                )))
            }
        };
        let s = e - vq;
        let c = p.get(j).cloned().unwrap_or_else(PuiseuxPoly::zero).div(&q[j], &(&s + Rat::one()))?;
        let tt = &s * self.scale_factor();
        let b = self.transport(&c.trunc_lt(&(&s + Rat::one())), &tt)?;
        let image = TypeIIPoint::new(&b, tt)?;
        Ok(ImageData { pre_centre: c, pre_radius: s, image })
    }

    pub fn pushforward(&self, z: &TypeIIPoint) -> Result<TypeIIPoint> {
        Ok(self.image_data(z)?.image)
    }

    /// Image of the direction `v` at `z`, by probing with points at shrinking offsets.
    pub fn pushforward_direction(&self, z: &TypeIIPoint, v: &Direction, cap: usize) -> Result<Direction> {
        let image = self.pushforward(z)?;
        let start = self.first_probe_offset(z, v).unwrap_or_else(Rat::one);
        let mut prev: Option<Direction> = None;
        for k in 0..cap {
            let delta = &start / Rat::from_integer(num_bigint::BigInt::from(2u32).pow(k as u32));
            let probe = match v {
                Direction::AtInfinity => z.ancestor(&(z.t() - &delta)),
                Direction::Toward { centre, .. } => TypeIIPoint::new(centre, z.t() + &delta)?,
            };
            let pi = self.pushforward(&probe)?;
            if pi == image {
                prev = None;
                continue;
            }
            let d = direction_at(&image, &pi)?;
            if prev.as_ref() == Some(&d) {
                return Ok(d);
            }
            prev = Some(d);
        }
        Err(Error::ProbeDivergence(cap))
    }

    /// Half the length of the affine piece of the ray map next to `z` in direction `v`, so that
    /// the first probe already lies where the ray map is affine.
    fn first_probe_offset(&self, z: &TypeIIPoint, v: &Direction) -> Option<Rat> {
        let half = |p: &RayPiece| (&p.hi - &p.lo) / int(2);
        match v {
            Direction::AtInfinity => {
                let pieces = self.ray_map(z.centre()).ok()?.pieces(&(z.t() - Rat::one()), z.t()).ok()?;
                pieces.last().map(half)
            }
            Direction::Toward { centre, .. } => {
                let pieces = self.ray_map(centre).ok()?.pieces(z.t(), &(z.t() + Rat::one())).ok()?;
                pieces.first().map(half)
            }
        }
    }

    /// Reduction at the Gauss point: clear the common norm, keep residues, cancel the gcd.
    pub fn reduction_mod_x(&self) -> Reduction {
        let vmin = self
            .num
            .iter()
            .chain(self.den.iter())
            .filter_map(|c| c.lead().map(|(e, _)| e.clone()))
            .min()
            .unwrap_or_else(Rat::zero);
        let residues = |p: &YPoly| {
            QPoly::new(p.iter().map(|c| c.coeff(&vmin)).collect())
        };
        let (n, d) = (residues(&self.num), residues(&self.den));
        let (n, d) = if d.is_zero() || n.is_zero() {
            (n, d)
        } else {
            let g = n.gcd(&d);
            (n.div_rem(&g).0, d.div_rem(&g).0)
        };
        let degree = n.degree().unwrap_or(0).max(d.degree().unwrap_or(0));
        Reduction { num: n, den: d, degree }
    }

    pub fn has_good_reduction(&self) -> bool {
        let r = self.reduction_mod_x();
        !r.den.is_zero() && !r.num.is_zero() && r.degree == self.rdeg
    }

    pub fn critical_points(&self, precision: &Rat) -> Result<CriticalSet> {
        critical_points_of(&self.num, &self.den, precision)
    }

    /// Candidate no-folding tree: one endpoint per critical point, pushed outward until
    /// sampled segments beyond it map injectively.
    pub fn folding_tree(&self, budget: usize) -> Result<FoldingTree> {
        if !self.is_simple() {
            return Err(Error::Precondition("folding_tree needs a simple link".into()));
        }
        let prec = int(budget as i64 + 8);
        let crit = self.critical_points(&prec)?;
        let mut endpoints = Vec::new();
        let mut shifts = 0;
        for r in &crit.finite.roots {
            let v = r.root.lead().map(|(e, _)| e.clone()).unwrap_or_else(Rat::zero);
            let mut s = std::cmp::min(v, Rat::zero());
            loop {
                let end = TypeIIPoint::new(&r.root, s.clone())?;
                let samples = (1..=4)
                    .map(|k| TypeIIPoint::new(&r.root, &s + Rat::new(k.into(), 4.into())))
                    .collect::<Result<Vec<_>>>()?;
                if self.injective_on(&end, &samples)? {
                    endpoints.push(end);
                    break;
                }
                shifts += 1;
                if shifts > budget {
                    return Err(Error::ValidationFailure(format!(
                        "folding persists on [{}, {}]",
                        end,
                        samples.last().unwrap()
                    )));
                }
                s += Rat::one();
            }
        }
        for d in &crit.finite.unresolved {
            endpoints.push(TypeIIPoint::new(&d.prefix.trunc_lt(&d.valuation), d.valuation.clone())?);
        }
        if crit.at_infinity > 0 {
            let mut s = Rat::zero();
            loop {
                let end = TypeIIPoint::on_zero_ray(s.clone());
                let samples: Vec<_> = (1..=4)
                    .map(|k| TypeIIPoint::on_zero_ray(&s - Rat::new(k.into(), 4.into())))
                    .collect();
                if self.injective_on(&end, &samples)? {
                    endpoints.push(end);
                    break;
                }
                shifts += 1;
                if shifts > budget {
                    return Err(Error::ValidationFailure(format!(
                        "folding persists on [{}, {}]",
                        end,
                        samples.last().unwrap()
                    )));
                }
                s -= Rat::one();
            }
        }
        endpoints.sort();
        endpoints.dedup();
        Ok(FoldingTree { endpoints, shifts })
    }

    /// Images of the samples move strictly away from the image of `start` along one path.
    fn injective_on(&self, start: &TypeIIPoint, samples: &[TypeIIPoint]) -> Result<bool> {
        use crate::berkovich::hyperbolic_distance as d;
        let i0 = self.pushforward(start)?;
        let mut prev = i0.clone();
        let mut last = Rat::zero();
        for z in samples {
            let iz = self.pushforward(z)?;
            let dist = d(&i0, &iz);
            if dist <= last || dist != &last + d(&prev, &iz) {
                return Ok(false);
            }
            last = dist;
            prev = iz;
        }
        Ok(true)
    }

    /// The image of an open disk containing no pole of the fibre map, or `None` when a pole
    /// may lie inside (the image is then not a disk).
    pub fn disk_image(&self, d: &OpenDisk) -> Result<Option<OpenDisk>> {
        let t = d.t();
        let (p, q) = self.shifted(d.centre());
        let Ext::Fin(vq0) = q[0].val()? else { return Ok(None) };
        for (i, qi) in q.iter().enumerate().skip(1) {
            if qi.val()?.add(&(t * int(i as i64))) < vq0 {
                return Ok(None);
            }
        }
        let image = self.pushforward(&d.boundary())?;
        let tt = image.t().clone();
        let n = Rat::from_integer(self.base.n.into());
        let pre = &tt * &n + int(2);
        let p0 = p.first().cloned().unwrap_or_else(PuiseuxPoly::zero);
        let c = p0.div(&q[0], &pre)?.trunc_lt(&pre);
        let b = self.transport(&c, &(&tt + Rat::one()))?;
        Ok(Some(OpenDisk::new(&b, tt)?))
    }

    /// Symbolic description of `t -> pushforward(zeta(a, t))` for an exact centre `a`.
    pub fn ray_map(&self, a: &PuiseuxPoly) -> Result<RayMap<'_>> {
        RayMap::new(self, a)
    }
}

/// The index `j` maximising `val_t(P - (p_j/q_j) Q)`, with that valuation.
pub(crate) fn best_candidate(p: &YPoly, q: &YPoly, t: &Rat) -> Result<(usize, Ext)> {
    let zero = PuiseuxPoly::zero();
    let mut best: Option<(usize, Ext)> = None;
    for (j, qj) in q.iter().enumerate() {
        if qj.is_exact_zero() {
            continue;
        }
        let pj = p.get(j).unwrap_or(&zero);
        let vqj = qj.val()?.fin().cloned().unwrap();
        let mut e = Ext::Inf;
        for i in 0..p.len().max(q.len()) {
            let pi = p.get(i).unwrap_or(&zero);
            let qi = q.get(i).unwrap_or(&zero);
            let cross = &(pi * qj) - &(pj * qi);
            let v = cross.val()?.add(&(t * int(i as i64) - &vqj));
            if v < e {
                e = v;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| e > *b) {
            best = Some((j, e));
        }
    }
    best.ok_or_else(|| Error::Precondition("zero denominator".into()))
}

/// Critical points of `num/den` in y: roots of `num' den - num den'`, plus infinity.
/// Critical points of a map `x -> f(x)` given as a `y`-free expression with integer powers of
/// `x`, found by reading `x` as the line coordinate.
pub fn base_critical_points(f: &RatFn, precision: &Rat) -> Result<CriticalSet> {
    let as_line = |p: &YPoly| -> Result<YPoly> {
        match p.as_slice() {
            [c] if c.is_exact() => {
                let mut out = Vec::new();
                for (e, a) in c.terms() {
                    if !e.is_integer() || e.is_negative() {
                        return Err(Error::Precondition(format!("exponent {} is not a natural number", e)));
                    }
                    let k = e.to_integer().try_into().map_err(|_| Error::Precondition("degree too large".into()))?;
                    if out.len() <= k {
                        out.resize(k + 1, PuiseuxPoly::zero());
                    }
                    out[k] = PuiseuxPoly::constant(a.clone());
                }
                Ok(out)
            }
            _ => Err(Error::Precondition("the base map must not involve y".into())),
        }
    };
    critical_points_of(&as_line(&f.num)?, &as_line(&f.den)?, precision)
}

pub fn critical_points_of(num: &YPoly, den: &YPoly, precision: &Rat) -> Result<CriticalSet> {
    let w = ratfn::wronskian(num, den);
    let d = ypoly_degree(num).unwrap_or(0).max(ypoly_degree(den).unwrap_or(0));
    let Some(dw) = ypoly_degree(&w) else {
        return Err(Error::Precondition("constant fibre map has no critical set".into()));
    };
    let finite = newton_puiseux(&w, precision)?;
    Ok(CriticalSet { finite, at_infinity: (2 * d).saturating_sub(2 + dw) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berkovich::parse_point;
    use crate::puiseux::parse_series;
    use crate::rat::rat;

    fn thm6() -> SkewLocal {
        SkewLocal::parse("x^2", "x^4*y^-3 + y^3").unwrap()
    }

    #[test]
    fn disk_images() {
        let s = SkewLocal::parse("x", "x*y^2").unwrap();
        let d = OpenDisk::new(&PuiseuxPoly::zero(), int(1)).unwrap();
        assert_eq!(s.disk_image(&d).unwrap().unwrap(), OpenDisk::new(&PuiseuxPoly::zero(), int(3)).unwrap());
        let c = OpenDisk::new(&PuiseuxPoly::constant(int(2)), int(0)).unwrap();
        let img = s.disk_image(&c).unwrap().unwrap();
        assert_eq!(img, OpenDisk::new(&parse_series("4*x").unwrap(), int(1)).unwrap());
        assert!(thm6().disk_image(&d).unwrap().is_none());
    }

    #[test]
    fn scale_factors_and_degree() {
        let s = thm6();
        assert_eq!(s.scale_factor(), rat(1, 2));
        assert!(!s.is_simple());
        assert_eq!(s.dynamical_degree(2), 6);
        let b = SkewLocal::parse("x^2 - x^3", "y").unwrap();
        assert_eq!(b.scale_factor(), rat(1, 2));
        assert!(SkewLocal::parse("x", "y^2").unwrap().is_simple());
    }

    #[test]
    fn thm6_ray_images() {
        let s = thm6();
        for (t, tt) in [(rat(4, 5), rat(4, 5)), (rat(1, 1), rat(1, 2)), (rat(1, 2), rat(3, 4)), (rat(0, 1), rat(0, 1))] {
            let img = s.pushforward(&TypeIIPoint::on_zero_ray(t)).unwrap();
            assert_eq!(img, TypeIIPoint::on_zero_ray(tt));
        }
    }

    #[test]
    fn xy2_doubles_depth() {
        let s = SkewLocal::parse("x", "x*y^2").unwrap();
        for k in 0..5 {
            let t = rat(k, 3);
            let img = s.pushforward(&TypeIIPoint::on_zero_ray(t.clone())).unwrap();
            assert_eq!(img, TypeIIPoint::on_zero_ray(rat(1, 1) + t * int(2)));
        }
    }

    #[test]
    fn good_reduction_orbit() {
        let s = SkewLocal::parse("x", "y^2 - 2").unwrap();
        assert!(s.has_good_reduction());
        let z1 = s.pushforward(&parse_point("zeta(0, 1)").unwrap()).unwrap();
        assert_eq!(z1, parse_point("zeta(-2, 2)").unwrap());
        let z2 = s.pushforward(&z1).unwrap();
        assert_eq!(z2, parse_point("zeta(2, 2)").unwrap());
        assert_eq!(s.pushforward(&z2).unwrap(), z2);
        assert_eq!(s.pushforward(&TypeIIPoint::gauss()).unwrap(), TypeIIPoint::gauss());
    }

    #[test]
    fn reductions() {
        let s = SkewLocal::parse("x", "y^2").unwrap();
        assert_eq!(s.reduction_mod_x().degree, 2);
        let bad = SkewLocal::parse("x", "x^4*y^-3 + y^3").unwrap();
        let r = bad.reduction_mod_x();
        assert_eq!(r.degree, 3);
        assert!(!bad.has_good_reduction());
    }

    #[test]
    fn base_critical_points_of_cubic() {
        let num: YPoly = [0, 0, 1, -1].iter().map(|&c| PuiseuxPoly::constant(int(c))).collect();
        let cs = critical_points_of(&num, &vec![PuiseuxPoly::one()], &int(8)).unwrap();
        let mut roots: Vec<Rat> = cs.finite.roots.iter().map(|r| r.root.coeff(&Rat::zero())).collect();
        roots.sort();
        assert_eq!(roots, vec![rat(0, 1), rat(2, 3)]);
        assert_eq!(cs.at_infinity, 2);
    }

    #[test]
    fn base_critical_points_from_expression() {
        let f = parse_ratfn("(1 - x)*x^2").unwrap();
        let cs = base_critical_points(&f, &int(8)).unwrap();
        let mut roots: Vec<Rat> = cs.finite.roots.iter().map(|r| r.root.coeff(&Rat::zero())).collect();
        roots.sort();
        assert_eq!(roots, vec![rat(0, 1), rat(2, 3)]);
        assert_eq!(cs.at_infinity, 2);
        assert!(base_critical_points(&parse_ratfn("x*y").unwrap(), &int(8)).is_err());
    }

    #[test]
    fn thm6_critical_points() {
        let cs = thm6().critical_points(&int(4)).unwrap();
        assert_eq!(cs.at_infinity, 2);
        assert_eq!(cs.finite.total_degree(), 8);
        let v23: Vec<_> = cs
            .finite
            .roots
            .iter()
            .filter(|r| r.root.lead().is_some_and(|(e, _)| *e == rat(2, 3)))
            .collect();
        assert_eq!(v23.len(), 2);
    }

    #[test]
    fn direction_images_under_squaring() {
        let s = SkewLocal::parse("x", "y^2").unwrap();
        let g = TypeIIPoint::gauss();
        let one = crate::berkovich::direction_toward(&g, &PuiseuxPoly::one()).unwrap();
        let zero = crate::berkovich::direction_toward(&g, &PuiseuxPoly::zero()).unwrap();
        assert_eq!(s.pushforward_direction(&g, &one, 8).unwrap(), one);
        assert_eq!(s.pushforward_direction(&g, &zero, 8).unwrap(), zero);
        assert_eq!(
            s.pushforward_direction(&g, &Direction::AtInfinity, 8).unwrap(),
            Direction::AtInfinity
        );
    }

    #[test]
    fn direction_images_follow_ray_slopes() {
        let s = thm6();
        let toward0 = |t: Rat| {
            let z = TypeIIPoint::on_zero_ray(t);
            let v = crate::berkovich::direction_toward(&z, &PuiseuxPoly::zero()).unwrap();
            s.pushforward_direction(&z, &v, DEFAULT_PROBE_CAP).unwrap()
        };
        // Slope 3/2 below the breakpoint 2/3 and -3/2 above it.
        assert!(matches!(toward0(rat(1, 2)), Direction::Toward { .. }));
        assert_eq!(toward0(rat(4, 5)), Direction::AtInfinity);
        let z = TypeIIPoint::on_zero_ray(rat(4, 5));
        assert!(matches!(
            s.pushforward_direction(&z, &Direction::AtInfinity, DEFAULT_PROBE_CAP).unwrap(),
            Direction::Toward { .. }
        ));
    }

    #[test]
    fn folding_tree_for_squaring_is_gauss() {
        let s = SkewLocal::parse("x", "y^2").unwrap();
        let ft = s.folding_tree(4).unwrap();
        assert_eq!(ft.endpoints, vec![TypeIIPoint::gauss()]);
        let m = SkewLocal::parse("x", "(y + 1)/(y - 1)").unwrap();
        assert!(m.folding_tree(4).unwrap().endpoints.is_empty());
    }

    #[test]
    fn transport_through_non_monomial_germ() {
        let s = SkewLocal::parse("x^2 - x^3", "y").unwrap();
        let z = TypeIIPoint::new(&parse_series("x").unwrap(), int(3)).unwrap();
        let img = s.pushforward(&z).unwrap();
        assert_eq!(*img.t(), rat(3, 2));
        let g = s.inverse_germ(&int(2)).unwrap();
        let back = s.base().series().compose(&g, &int(3)).unwrap();
        assert_eq!(back.trunc_lt(&int(2)).terms(), PuiseuxPoly::x().terms());
    }
}
