//! The pushforward restricted to a ray `t -> zeta(a, t)`, as an explicit piecewise-affine map.

use num_traits::One;

use super::SkewLocal;
use crate::berkovich::TypeIIPoint;
use crate::error::{Error, Result};
use crate::puiseux::{PuiseuxPoly, YPoly};
use crate::rat::{int, Rat};

/// An affine line `value + slope * t`.
type Line = (Rat, i64);

/// One affine piece `T(t) = slope * t + intercept` on `[lo, hi]`, with image centres given by
/// candidate `branch` (the index `j` of `p_j / q_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayPiece {
    pub lo: Rat,
    pub hi: Rat,
    pub slope: Rat,
    pub intercept: Rat,
    pub branch: usize,
}

#[derive(Debug)]
pub struct RayMap<'a> {
    local: &'a SkewLocal,
    p: YPoly,
    q: YPoly,
    families: Vec<(usize, Vec<Line>)>,
    den: Vec<Line>,
}

fn min_at(lines: &[Line], t: &Rat) -> Option<Rat> {
    lines.iter().map(|(v, i)| v + t * int(*i)).min()
}

impl<'a> RayMap<'a> {
    pub(crate) fn new(local: &'a SkewLocal, a: &PuiseuxPoly) -> Result<Self> {
        if !a.is_exact() {
            return Err(Error::Precondition(format!("ray centre {} must be exact", a)));
        }
        let (p, q) = local.shifted(a);
        let zero = PuiseuxPoly::zero();
        let n = p.len().max(q.len());
        let mut families = Vec::new();
        for (j, qj) in q.iter().enumerate() {
            if qj.is_exact_zero() {
                continue;
            }
            let pj = p.get(j).unwrap_or(&zero);
            let vqj = qj.val()?.fin().cloned().unwrap();
            let mut lines = Vec::new();
            for i in 0..n {
                let pi = p.get(i).unwrap_or(&zero);
                let qi = q.get(i).unwrap_or(&zero);
                if let Some(v) = (&(pi * qj) - &(pj * qi)).val()?.fin() {
                    lines.push((v - &vqj, i as i64));
                }
            }
            families.push((j, lines));
        }
        let den = q
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.lead().map(|(e, _)| (e.clone(), i as i64)))
            .collect();
        Ok(RayMap { local, p, q, families, den })
    }

    /// `(T(t), branch)`.
    pub fn eval(&self, t: &Rat) -> Result<(Rat, usize)> {
        let mut best: Option<(Rat, usize)> = None;
        for (j, lines) in &self.families {
            let Some(e) = min_at(lines, t) else {
                return Err(Error::DegenerateImage(format!("fibre map is constant along the ray at {}", t)));
            };
            if best.as_ref().is_none_or(|(b, _)| e > *b) {
                best = Some((e, *j));
            }
        }
        let (e, j) = best.ok_or_else(|| Error::Precondition("zero denominator".into()))?;
        let vq = min_at(&self.den, t).unwrap();
        Ok(((e - vq) * self.local.scale_factor(), j))
    }

    /// Maximal affine pieces covering `[lo, hi]`.
    pub fn pieces(&self, lo: &Rat, hi: &Rat) -> Result<Vec<RayPiece>> {
        let all: Vec<&Line> = self.families.iter().flat_map(|(_, l)| l.iter()).chain(self.den.iter()).collect();
        let mut cuts = vec![lo.clone(), hi.clone()];
        for (k, (v1, i1)) in all.iter().enumerate() {
            for (v2, i2) in &all[k + 1..] {
                if i1 != i2 {
                    let t = (v2 - v1) / int(i1 - i2);
                    if t > *lo && t < *hi {
                        cuts.push(t);
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        let mut out: Vec<RayPiece> = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (ta, _) = self.eval(a)?;
            let (tb, _) = self.eval(b)?;
            let (_, branch) = self.eval(&((a + b) / int(2)))?;
            let slope = (&tb - &ta) / (b - a);
            let intercept = &ta - &slope * a;
            if let Some(last) = out.last_mut() {
                if last.slope == slope && last.intercept == intercept && last.branch == branch {
                    last.hi = b.clone();
                    continue;
                }
            }
            out.push(RayPiece { lo: a.clone(), hi: b.clone(), slope, intercept, branch });
        }
        Ok(out)
    }

    /// The image centre of candidate `branch`, known to precision at least `target`.
    pub fn branch_centre(&self, branch: usize, target: &Rat) -> Result<PuiseuxPoly> {
        let n = Rat::from_integer(self.local.base().order().into());
        let pre = target * &n + Rat::one();
        let pj = self.p.get(branch).cloned().unwrap_or_else(PuiseuxPoly::zero);
        let c = pj.div(&self.q[branch], &pre)?.trunc_lt(&pre);
        self.local.transport(&c, target)
    }

    /// The image point at `t` read off the symbolic description.
    pub fn point(&self, t: &Rat) -> Result<TypeIIPoint> {
        let (tt, j) = self.eval(t)?;
        let b = self.branch_centre(j, &tt)?;
        TypeIIPoint::new(&b, tt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn thm6_ray_is_a_tent() {
        let s = SkewLocal::parse("x^2", "x^4*y^-3 + y^3").unwrap();
        let rm = s.ray_map(&PuiseuxPoly::zero()).unwrap();
        let pcs = rm.pieces(&rat(0, 1), &rat(4, 3)).unwrap();
        assert_eq!(pcs.len(), 2);
        assert_eq!(pcs[0].hi, rat(2, 3));
        assert_eq!((pcs[0].slope.clone(), pcs[0].intercept.clone()), (rat(3, 2), rat(0, 1)));
        assert_eq!((pcs[1].slope.clone(), pcs[1].intercept.clone()), (rat(-3, 2), rat(2, 1)));
    }

    #[test]
    fn agrees_with_pushforward() {
        let s = SkewLocal::parse("x", "(y^2 - x)/(y + 1)").unwrap();
        let a = PuiseuxPoly::x();
        let rm = s.ray_map(&a).unwrap();
        for k in -4..12 {
            let t = rat(k, 3);
            let z = TypeIIPoint::new(&a, t.clone()).unwrap();
            assert_eq!(rm.point(&t).unwrap(), s.pushforward(&z).unwrap(), "t = {}", t);
        }
    }
}
