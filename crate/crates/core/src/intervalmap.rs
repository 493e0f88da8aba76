//! Piecewise-affine maps induced by a pushforward on a ray `t -> zeta(c, t)`, with exact
//! iteration, fixed points and orbit certificates.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::berkovich::TypeIIPoint;
use crate::error::{Error, Result};
use crate::puiseux::PuiseuxPoly;
use crate::rat::{int, Ext, Rat};
use crate::skew::SkewLocal;

/// Initial number of sample segments in [`induce_interval_map`].
pub const DEFAULT_SEED_SAMPLES: usize = 8;
/// Number of density doublings before giving up on a fit.
const MAX_DOUBLINGS: usize = 8;
/// Width of the sampled window when the range is unbounded above.
const UNBOUNDED_SPAN: i64 = 8;

/// `t -> slope * t + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rat,
    pub intercept: Rat,
}

impl Affine {
    pub fn eval(&self, t: &Rat) -> Rat {
        &self.slope * t + &self.intercept
    }

    fn through(a: &(Rat, Rat), b: &(Rat, Rat)) -> Affine {
        let slope = (&b.1 - &a.1) / (&b.0 - &a.0);
        let intercept = &a.1 - &slope * &a.0;
        Affine { slope, intercept }
    }

    fn meet(&self, o: &Affine) -> Option<Rat> {
        if self.slope == o.slope {
            None
        } else {
            Some((&o.intercept - &self.intercept) / (&self.slope - &o.slope))
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*t", self.slope)?;
        if self.intercept.is_negative() {
            write!(f, " - {}", -&self.intercept)
        } else {
            write!(f, " + {}", self.intercept)
        }
    }
}

/// A continuous piecewise-affine map on `[lo, hi]`; piece `i` covers
/// `[breakpoints[i-1], breakpoints[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    pub lo: Rat,
    pub hi: Ext,
    pub breakpoints: Vec<Rat>,
    pub pieces: Vec<Affine>,
}

impl PLMap {
    pub fn new(lo: Rat, hi: Ext, breakpoints: Vec<Rat>, pieces: Vec<Affine>) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::Precondition("piece count must be breakpoint count + 1".into()));
        }
        for (i, b) in breakpoints.iter().enumerate() {
            if pieces[i].eval(b) != pieces[i + 1].eval(b) {
                return Err(Error::Precondition(format!("discontinuity at {}", b)));
            }
        }
        Ok(PLMap { lo, hi, breakpoints, pieces })
    }

    pub fn contains(&self, t: &Rat) -> bool {
        *t >= self.lo && self.hi >= *t
    }

    pub fn piece_index(&self, t: &Rat) -> usize {
        self.breakpoints.partition_point(|b| b <= t)
    }

    /// `T(t)`, or `None` outside the domain.
    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        self.contains(t).then(|| self.pieces[self.piece_index(t)].eval(t))
    }

    /// Closed interval of piece `i`.
    pub fn piece_range(&self, i: usize) -> (Rat, Ext) {
        let lo = if i == 0 { self.lo.clone() } else { self.breakpoints[i - 1].clone() };
        let hi = self.breakpoints.get(i).cloned().map(Ext::Fin).unwrap_or_else(|| self.hi.clone());
        (lo, hi)
    }

    /// Smallest `|slope|` over the pieces.
    pub fn min_abs_slope(&self) -> Rat {
        self.pieces.iter().map(|p| p.slope.abs()).min().unwrap()
    }

    /// The same map on the subinterval `[lo, hi]` of the domain.
    pub fn restrict(&self, lo: &Rat, hi: &Rat) -> Result<PLMap> {
        if !(self.contains(lo) && self.contains(hi) && lo < hi) {
            return Err(Error::Precondition(format!("[{}, {}] is not a subinterval of the domain", lo, hi)));
        }
        let first = self.piece_index(lo);
        let bps: Vec<Rat> = self.breakpoints.iter().filter(|b| *b > lo && *b < hi).cloned().collect();
        let pieces = self.pieces[first..=first + bps.len()].to_vec();
        PLMap::new(lo.clone(), Ext::Fin(hi.clone()), bps, pieces)
    }

    /// `T([lo, hi])` is contained in `[lo, hi]` (bounded domains only).
    pub fn maps_domain_into_itself(&self) -> bool {
        let Ext::Fin(hi) = &self.hi else { return false };
        let mut pts = vec![self.lo.clone(), hi.clone()];
        pts.extend(self.breakpoints.iter().cloned());
        pts.iter().all(|t| self.eval(t).is_some_and(|v| self.contains(&v)))
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            let (lo, hi) = self.piece_range(i);
            writeln!(f, "[{}, {}]: T(t) = {}", lo, hi, p)?;
        }
        Ok(())
    }
}

/// Radius exponent of the image of `zeta(c, t)`, checking the image stays on the ray of `c`.
fn ray_value(f: &dyn Fn(&TypeIIPoint) -> Result<TypeIIPoint>, c: &PuiseuxPoly, t: &Rat) -> Result<Rat> {
    let z = TypeIIPoint::new(c, t.clone())?;
    let img = f(&z)?;
    if TypeIIPoint::new(c, img.t().clone())? != img {
        return Err(Error::NotRayInvariant(format!("{} maps to {}, off the ray of {}", z, img, c)));
    }
    Ok(img.t().clone())
}

/// Fit a PL map to samples: lines of segments agreeing with a neighbour are trusted, and
/// consecutive trusted lines meet at the breakpoints.
fn fit(samples: &[(Rat, Rat)]) -> Option<(Vec<Rat>, Vec<Affine>)> {
    let lines: Vec<Affine> = samples.windows(2).map(|w| Affine::through(&w[0], &w[1])).collect();
    let k = lines.len();
    let trusted: Vec<usize> = (0..k)
        .filter(|&i| k == 1 || i == 0 || i + 1 == k || lines[i] == lines[i - 1] || lines[i] == lines[i + 1])
        .collect();
    let mut pieces: Vec<(Affine, usize, usize)> = Vec::new();
    for &i in &trusted {
        match pieces.last_mut() {
            Some((l, _, last)) if *l == lines[i] => *last = i,
            _ => pieces.push((lines[i].clone(), i, i)),
        }
    }
    let mut bps = Vec::new();
    for w in pieces.windows(2) {
        let (a, _, a_end) = &w[0];
        let (b, b_start, _) = &w[1];
        let x = a.meet(b)?;
        let (gap_lo, gap_hi) = (&samples[*a_end + 1].0, &samples[*b_start].0);
        if x < *gap_lo || x > *gap_hi {
            return None;
        }
        bps.push(x);
    }
    Some((bps, pieces.into_iter().map(|p| p.0).collect()))
}

/// Reconstruct `t -> T(t)` on `[lo, hi]` for an arbitrary point map, by sampling, exact
/// breakpoint location, and verification at fresh points.
pub fn induce_with(
    f: &dyn Fn(&TypeIIPoint) -> Result<TypeIIPoint>,
    centre: &PuiseuxPoly,
    lo: &Rat,
    hi: &Ext,
    seed: usize,
) -> Result<PLMap> {
    let top = match hi {
        Ext::Fin(h) if h > lo => h.clone(),
        Ext::Fin(_) => return Err(Error::Precondition("empty range".into())),
        Ext::Inf => std::cmp::max(lo.clone(), Rat::zero()) + int(UNBOUNDED_SPAN),
    };
    let mut k = seed.max(1);
    let mut last_bad = lo.clone();
    for _ in 0..=MAX_DOUBLINGS {
        let step = (&top - lo) / int(k as i64);
        let ts: Vec<Rat> = (0..=k).map(|i| lo + &step * int(i as i64)).collect();
        let samples = ts
            .iter()
            .map(|t| Ok((t.clone(), ray_value(f, centre, t)?)))
            .collect::<Result<Vec<_>>>()?;
        if let Some((bps, pieces)) = fit(&samples) {
            let map = PLMap::new(lo.clone(), hi.clone(), bps, pieces)?;
            let mut checks: Vec<Rat> = ts.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
            for i in 0..map.pieces.len() {
                let (a, b) = map.piece_range(i);
                let b = b.fin().cloned().unwrap_or_else(|| top.clone());
                checks.push((&a + &b) / int(2));
                checks.push(a);
                checks.push(b);
            }
            if hi.is_inf() {
                checks.push(&top * int(2) + int(1));
                checks.push(&top * int(4) + int(3));
            }
            let mut ok = true;
            for t in &checks {
                if map.eval(t) != Some(ray_value(f, centre, t)?) {
                    ok = false;
                    last_bad = t.clone();
                    break;
                }
            }
            if ok {
                return Ok(map);
            }
        }
        k *= 2;
    }
    Err(Error::FitFailure(format!("no piecewise-affine fit verified; last mismatch at t = {}", last_bad)))
}

/// The interval map of a single local model on the ray of `centre`.
pub fn induce_interval_map(s: &SkewLocal, centre: &PuiseuxPoly, lo: &Rat, hi: &Ext, seed: usize) -> Result<PLMap> {
    induce_with(&|z| s.pushforward(z), centre, lo, hi, seed)
}

/// An exact orbit; `escaped` is set when it left the domain before `n` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<Rat>,
    pub escaped: bool,
}

pub fn iterate(map: &PLMap, t: &Rat, n: usize) -> Orbit {
    let mut points = vec![t.clone()];
    for _ in 0..n {
        match map.eval(points.last().unwrap()) {
            Some(v) => points.push(v),
            None => return Orbit { points, escaped: true },
        }
    }
    Orbit { points, escaped: false }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Repelling,
    Attracting,
    Neutral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPoint {
    Point { t: Rat, slope: Rat, kind: Stability },
    /// A whole piece of the identity.
    Interval { lo: Rat, hi: Ext },
}

pub fn fixed_points(map: &PLMap) -> Vec<FixedPoint> {
    let mut out = Vec::new();
    let mut seen: Vec<Rat> = Vec::new();
    for (i, p) in map.pieces.iter().enumerate() {
        let (lo, hi) = map.piece_range(i);
        if p.slope.is_one() {
            if p.intercept.is_zero() {
                out.push(FixedPoint::Interval { lo, hi });
            }
            continue;
        }
        let t = &p.intercept / (Rat::one() - &p.slope);
        if t < lo || hi < t || seen.contains(&t) {
            continue;
        }
        let a = p.slope.abs();
        let kind = match a.cmp(&Rat::one()) {
            std::cmp::Ordering::Greater => Stability::Repelling,
            std::cmp::Ordering::Less => Stability::Attracting,
            std::cmp::Ordering::Equal => Stability::Neutral,
        };
        seen.push(t.clone());
        out.push(FixedPoint::Point { t, slope: p.slope.clone(), kind });
    }
    out
}

/// Evidence that an orbit of a dyadic-odd map is infinite: every point `a / 2^n` with `a` odd
/// maps to `a' / 2^(n+1)` with `a'` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorCertificate {
    pub start: Rat,
    /// Exponents `n` of the reduced denominators `2^n` along the verified window.
    pub exponents: Vec<u64>,
    /// Largest `e` with an intercept denominator `2^e`; growth is forced once `n >= e`.
    pub intercept_exponent: u64,
    /// The domain maps into itself, so the orbit never escapes.
    pub invariant_domain: bool,
}

impl DenominatorCertificate {
    /// The window verifies the induction hypothesis: the start exponent already dominates the
    /// intercepts and the domain is invariant.
    pub fn is_sound(&self) -> bool {
        self.invariant_domain && self.exponents.first().is_some_and(|&n| n >= self.intercept_exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateFailure {
    NotApplicable(String),
    InvariantBroken { step: usize, value: Rat },
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateFailure::NotApplicable(m) => write!(f, "not applicable: {}", m),
            CertificateFailure::InvariantBroken { step, value } => write!(f, "invariant broken at step {} ({})", step, value),
        }
    }
}

/// `n` with `r = a / 2^n`, `a` odd, or `None`.
fn dyadic_odd(r: &Rat) -> Option<u64> {
    let d = r.denom();
    if !r.numer().is_odd() || d.is_zero() || (d & (d - BigInt::one())) != BigInt::zero() {
        return None;
    }
    Some(d.bits() - 1)
}

fn power_of_two_exponent(d: &BigInt) -> Option<u64> {
    ((d & (d - BigInt::one())) == BigInt::zero()).then(|| d.bits() - 1)
}

pub fn denominator_growth_certificate(
    map: &PLMap,
    t: &Rat,
    window: usize,
) -> std::result::Result<DenominatorCertificate, CertificateFailure> {
    let mut e_max = 0;
    for p in &map.pieces {
        let odd_half = p.slope.denom() == &BigInt::from(2) && p.slope.numer().is_odd();
        if !odd_half {
            return Err(CertificateFailure::NotApplicable(format!("slope {} is not odd/2", p.slope)));
        }
        match power_of_two_exponent(p.intercept.denom()) {
            Some(e) => e_max = e_max.max(e),
            None => return Err(CertificateFailure::NotApplicable(format!("intercept {} is not dyadic", p.intercept))),
        }
    }
    let Some(mut n) = dyadic_odd(t) else {
        return Err(CertificateFailure::NotApplicable(format!("{} is not an odd numerator over a power of 2", t)));
    };
    let mut exponents = vec![n];
    let mut cur = t.clone();
    for step in 1..=window {
        let Some(next) = map.eval(&cur) else {
            return Err(CertificateFailure::InvariantBroken { step, value: cur });
        };
        match dyadic_odd(&next) {
            Some(m) if m == n + 1 => n = m,
            _ => return Err(CertificateFailure::InvariantBroken { step, value: next }),
        }
        exponents.push(n);
        cur = next;
    }
    Ok(DenominatorCertificate {
        start: t.clone(),
        exponents,
        intercept_exponent: e_max,
        invariant_domain: map.maps_domain_into_itself(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitCertificate {
    Preperiodic { tail: Vec<Rat>, cycle: Vec<Rat> },
    /// `prefix` leads to the start of a denominator-growth certificate.
    InfiniteByDenominatorGrowth { prefix: Vec<Rat>, certificate: DenominatorCertificate },
    HorizonExceeded(usize),
}

pub fn detect_preperiodic(map: &PLMap, t: &Rat, horizon: usize) -> OrbitCertificate {
    let orbit = iterate(map, t, horizon);
    let mut seen: HashMap<&Rat, usize> = HashMap::new();
    for (i, p) in orbit.points.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return OrbitCertificate::Preperiodic {
                tail: orbit.points[..j].to_vec(),
                cycle: orbit.points[j..i].to_vec(),
            };
        }
        seen.insert(p, i);
    }
    for (i, p) in orbit.points.iter().enumerate() {
        if dyadic_odd(p).is_none() {
            continue;
        }
        if let Ok(c) = denominator_growth_certificate(map, p, horizon) {
            if c.is_sound() {
                return OrbitCertificate::InfiniteByDenominatorGrowth { prefix: orbit.points[..i].to_vec(), certificate: c };
            }
        }
    }
    OrbitCertificate::HorizonExceeded(horizon)
}
