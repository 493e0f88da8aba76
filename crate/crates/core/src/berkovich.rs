//! Type II points of the Berkovich line over Puiseux series, modulo Galois conjugation.
//!
//! A point `zeta(a, t)` is the sup-seminorm on the closed disk `val(y - a) >= t`. Points are
//! stored one per Galois orbit: the centre is a rational representative truncated below `t`,
//! and equality is decided by a canonical key, the lexicographically largest rational conjugate.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{prec_err, Error, Result};
use crate::puiseux::parse::Cursor;
use crate::puiseux::{parse_series_at, PuiseuxPoly};
use crate::rat::{denom, int, lcm, Ext, Rat};

pub type Key = Vec<(Rat, Rat)>;

/// `val(sigma_k(a) - b)` where `sigma_k` sends `x^(1/m)` to `w^k x^(1/m)`, `w` a primitive
/// m-th root of unity. All exponent denominators of `a` and `b` must divide `m`.
pub(crate) fn twisted_agreement(a: &PuiseuxPoly, k: u64, b: &PuiseuxPoly, m: u64) -> Ext {
    let (ta, tb) = (a.terms(), b.terms());
    let (mut i, mut j) = (0, 0);
    let mm = Rat::from_integer(m.into());
    loop {
        let (e, ca, cb) = match (ta.get(i), tb.get(j)) {
            (None, None) => return Ext::Inf,
            (Some((ea, ca)), None) => (ea, ca.clone(), Rat::zero()),
            (None, Some((eb, cb))) => (eb, Rat::zero(), cb.clone()),
            (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                Ordering::Less => (ea, ca.clone(), Rat::zero()),
                Ordering::Greater => (eb, Rat::zero(), cb.clone()),
                Ordering::Equal => (ea, ca.clone(), cb.clone()),
            },
        };
        if ca.is_zero() || cb.is_zero() {
            return Ext::Fin(e.clone());
        }
        let jj = (e * &mm).to_integer();
        let r = ((jj * num_bigint::BigInt::from(k)) % num_bigint::BigInt::from(m) + num_bigint::BigInt::from(m))
            % num_bigint::BigInt::from(m);
        let r = r.to_u64().unwrap();
        let ratio = &cb / &ca;
        let same = (ratio.is_one() && r == 0) || (ratio == -Rat::one() && 2 * r == m);
        if !same {
            return Ext::Fin(e.clone());
        }
        if ta.get(i).is_some_and(|(x, _)| x == e) {
            i += 1;
        }
        if tb.get(j).is_some_and(|(x, _)| x == e) {
            j += 1;
        }
    }
}

/// `sigma_k(a)` when it has rational coefficients.
pub(crate) fn rational_twist(a: &PuiseuxPoly, k: u64, m: u64) -> Option<PuiseuxPoly> {
    let mm = Rat::from_integer(m.into());
    let mut terms = Vec::with_capacity(a.terms().len());
    for (e, c) in a.terms() {
        let j = (e * &mm).to_integer().to_i128()?;
        let r = (j * k as i128).rem_euclid(m as i128) as u64;
        if r == 0 {
            terms.push((e.clone(), c.clone()));
        } else if 2 * r == m {
            terms.push((e.clone(), -c.clone()));
        } else {
            return None;
        }
    }
    Some(PuiseuxPoly::new(terms, a.precision().clone()))
}

/// Largest agreement between `a` and any Galois conjugate of `b`.
pub fn orbit_agreement(a: &PuiseuxPoly, b: &PuiseuxPoly) -> Ext {
    let m = lcm(a.ramification_index(), b.ramification_index());
    (0..m).map(|k| twisted_agreement(a, k, b, m)).max().unwrap()
}

fn canonical_key(c: &PuiseuxPoly) -> Key {
    let m = c.ramification_index();
    (0..m)
        .filter_map(|k| rational_twist(c, k, m))
        .map(|p| p.terms().to_vec())
        .max()
        .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    Integral,
    Free,
    Satellite,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Integral => "integral",
            PointKind::Free => "free",
            PointKind::Satellite => "satellite",
        })
    }
}

/// A Type II point `zeta(a, |x|^t)`.
#[derive(Clone, Debug)]
pub struct TypeIIPoint {
    centre: PuiseuxPoly,
    t: Rat,
    key: Key,
}

impl TypeIIPoint {
    pub fn new(centre: &PuiseuxPoly, t: Rat) -> Result<Self> {
        if *centre.precision() < t {
            return prec_err(format!("centre {} not known to exponent {}", centre, t));
        }
        let centre = centre.trunc_lt(&t).exactify();
        let key = canonical_key(&centre);
        Ok(TypeIIPoint { centre, t, key })
    }

    pub fn gauss() -> Self {
        TypeIIPoint { centre: PuiseuxPoly::zero(), t: Rat::zero(), key: Vec::new() }
    }

    /// `zeta(0, |x|^t)`.
    pub fn on_zero_ray(t: Rat) -> Self {
        TypeIIPoint { centre: PuiseuxPoly::zero(), t, key: Vec::new() }
    }

    pub fn centre(&self) -> &PuiseuxPoly {
        &self.centre
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn key(&self) -> &Key {
        &self.key
    }

    /// Multiplicity: size of the Galois orbit.
    pub fn m(&self) -> u64 {
        self.centre.ramification_index()
    }

    /// Generic multiplicity `lcm(m, q)` for `t = p/q`.
    pub fn g(&self) -> u64 {
        lcm(self.m(), denom(&self.t))
    }

    pub fn kind(&self) -> PointKind {
        let (m, g) = (self.m(), self.g());
        if g == 1 {
            PointKind::Integral
        } else if g == m {
            PointKind::Free
        } else {
            PointKind::Satellite
        }
    }

    /// The point on the path from this point towards infinity at radius exponent `s <= t`.
    pub fn ancestor(&self, s: &Rat) -> TypeIIPoint {
        debug_assert!(*s <= self.t);
        TypeIIPoint::new(&self.centre, s.clone()).expect("exact centre")
    }

    /// The point `zeta(c, s)` for a classical centre `c` known beyond `s`.
    pub fn on_ray(c: &PuiseuxPoly, s: &Rat) -> Result<TypeIIPoint> {
        TypeIIPoint::new(c, s.clone())
    }

    /// True when the classical point `c` lies in the closed disk of this point.
    pub fn contains_classical(&self, c: &PuiseuxPoly) -> bool {
        orbit_agreement(c, &self.centre) >= self.t
    }
}

impl PartialEq for TypeIIPoint {
    fn eq(&self, o: &Self) -> bool {
        self.t == o.t && self.key == o.key
    }
}

impl Eq for TypeIIPoint {}

impl Hash for TypeIIPoint {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.t.hash(h);
        self.key.hash(h);
    }
}

impl PartialOrd for TypeIIPoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Canonical order: by radius exponent, then by key. Not the tree order.
impl Ord for TypeIIPoint {
    fn cmp(&self, o: &Self) -> Ordering {
        self.t.cmp(&o.t).then_with(|| self.key.cmp(&o.key))
    }
}

impl fmt::Display for TypeIIPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({}, {})", self.centre, self.t)
    }
}

/// Disk containment order: `D(a1, t1)` inside `D(a2, t2)` for some conjugates.
pub fn leq(z1: &TypeIIPoint, z2: &TypeIIPoint) -> bool {
    z1.t >= z2.t && orbit_agreement(&z1.centre, &z2.centre) >= z2.t
}

pub fn lt(z1: &TypeIIPoint, z2: &TypeIIPoint) -> bool {
    z1 != z2 && leq(z1, z2)
}

fn join_exponent(z1: &TypeIIPoint, z2: &TypeIIPoint) -> Rat {
    let s = std::cmp::min(&z1.t, &z2.t).clone();
    match orbit_agreement(&z1.centre, &z2.centre) {
        Ext::Fin(a) if a < s => a,
        _ => s,
    }
}

/// The smallest disk containing both points.
pub fn join(z1: &TypeIIPoint, z2: &TypeIIPoint) -> TypeIIPoint {
    z1.ancestor(&join_exponent(z1, z2))
}

/// Tree distance, normalised so that the Gauss point and `zeta(0, |x|)` are at distance 1.
pub fn hyperbolic_distance(z1: &TypeIIPoint, z2: &TypeIIPoint) -> Rat {
    let s = join_exponent(z1, z2);
    (&z1.t - &s) + (&z2.t - &s)
}

/// All projections of joins of `z1` with the geometric conjugates of `z2`, deepest first.
pub fn conjugate_joins(z1: &TypeIIPoint, z2: &TypeIIPoint) -> Vec<TypeIIPoint> {
    let m = lcm(z1.m(), z2.m());
    let lo = std::cmp::min(&z1.t, &z2.t);
    let mut out: Vec<TypeIIPoint> = (0..m)
        .map(|k| {
            let s = match twisted_agreement(&z1.centre, k, &z2.centre, m) {
                Ext::Fin(a) if a < *lo => a,
                _ => lo.clone(),
            };
            z1.ancestor(&s)
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// A direction (residue class) at a Type II point.
#[derive(Clone, Debug)]
pub enum Direction {
    AtInfinity,
    /// The residue class containing `centre`; `centre` is normalised to its terms up to and
    /// including the radius exponent of the base point.
    Toward { centre: PuiseuxPoly, key: Key },
}

impl PartialEq for Direction {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Direction::AtInfinity, Direction::AtInfinity) => true,
            (Direction::Toward { key: a, .. }, Direction::Toward { key: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Eq for Direction {}

impl Hash for Direction {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Direction::AtInfinity => 0u8.hash(h),
            Direction::Toward { key, .. } => {
                1u8.hash(h);
                key.hash(h);
            }
        }
    }
}

impl Direction {
    /// Multiplicity of the direction: the least ramification of a classical point in it.
    pub fn m(&self) -> u64 {
        match self {
            Direction::AtInfinity => 1,
            Direction::Toward { centre, .. } => centre.ramification_index(),
        }
    }

    pub fn centre(&self) -> Option<&PuiseuxPoly> {
        match self {
            Direction::AtInfinity => None,
            Direction::Toward { centre, .. } => Some(centre),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::AtInfinity => write!(f, "inf"),
            Direction::Toward { centre, .. } => write!(f, "toward({})", centre),
        }
    }
}

/// The direction at `z` containing the classical point `c`.
pub fn direction_toward(z: &TypeIIPoint, c: &PuiseuxPoly) -> Result<Direction> {
    if *c.precision() <= z.t {
        return prec_err(format!("{} too coarse for a direction at {}", c, z));
    }
    let ct = c.trunc_le(&z.t);
    let m = lcm(ct.ramification_index(), z.m());
    let mut best: Option<PuiseuxPoly> = None;
    let mut inside = false;
    for k in 0..m {
        if twisted_agreement(&ct, k, &z.centre, m) < z.t {
            continue;
        }
        inside = true;
        if let Some(p) = rational_twist(&ct, k, m) {
            if best.as_ref().is_none_or(|b| p.terms() > b.terms()) {
                best = Some(p);
            }
        }
    }
    if !inside {
        return Ok(Direction::AtInfinity);
    }
    let centre = best.ok_or_else(|| {
        Error::NotRepresentable(format!("direction toward {} at {} has no rational form", c, z))
    })?;
    let key = centre.terms().to_vec();
    Ok(Direction::Toward { centre, key })
}

/// The direction at `z` containing `target`.
pub fn direction_at(z: &TypeIIPoint, target: &TypeIIPoint) -> Result<Direction> {
    if z == target {
        return Err(Error::Precondition(format!("no direction from {} to itself", z)));
    }
    if leq(target, z) {
        direction_toward(z, &target.centre)
    } else {
        Ok(Direction::AtInfinity)
    }
}

/// Special directions (multiplicity different from `g`) with their multiplicities.
pub fn special_directions(z: &TypeIIPoint) -> Vec<(Direction, u64)> {
    match z.kind() {
        PointKind::Integral => Vec::new(),
        PointKind::Free => vec![(Direction::AtInfinity, 1)],
        PointKind::Satellite => vec![
            (
                Direction::Toward { centre: z.centre.clone(), key: z.centre.terms().to_vec() },
                z.m(),
            ),
            (Direction::AtInfinity, 1),
        ],
    }
}

/// Endpoints `(outer, inner)` of the lattice edge of `T_n` through `z` along `[centre, inf]`.
pub fn nearest_lattice_vertices(z: &TypeIIPoint, n: u64) -> Result<(TypeIIPoint, TypeIIPoint)> {
    if n == 0 || !n.is_multiple_of(z.m()) {
        return Err(Error::Precondition(format!("m({}) = {} does not divide {}", z, z.m(), n)));
    }
    let nn = int(n as i64);
    let scaled = &z.t * &nn;
    let s_in = Rat::from_integer(scaled.ceil().to_integer()) / &nn;
    let s_out = Rat::from_integer(scaled.floor().to_integer()) / &nn;
    let inner = TypeIIPoint { centre: z.centre.clone(), t: s_in, key: z.key.clone() };
    Ok((z.ancestor(&s_out), inner))
}

/// Parse a point literal `zeta(<series>, <rational>)`.
pub fn parse_point(text: &str) -> Result<TypeIIPoint> {
    let mut cur = Cursor::new(text, 1, 0);
    let p = parse_point_at(&mut cur)?;
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    Ok(p)
}

pub(crate) fn parse_point_at(cur: &mut Cursor<'_>) -> Result<TypeIIPoint> {
    for &b in b"zeta" {
        if !cur.eat(b) {
            return cur.err("expected zeta(<series>, <rational>)");
        }
    }
    cur.expect(b'(')?;
    let c = parse_series_at(cur)?;
    cur.expect(b',')?;
    let t = cur.signed_rational()?;
    let end = cur.position();
    cur.expect(b')')?;
    TypeIIPoint::new(&c, t).or_else(|e| {
        cur.set_position(end);
        cur.err(e.to_string())
    })
}

/// An open disk `val(y - c) > t` in one fibre, stored by its terms up to and including `t`.
#[derive(Clone, Debug)]
pub struct OpenDisk {
    centre: PuiseuxPoly,
    t: Rat,
    key: Key,
}

impl OpenDisk {
    pub fn new(c: &PuiseuxPoly, t: Rat) -> Result<Self> {
        if *c.precision() <= t {
            return prec_err(format!("{} too coarse for an open disk of radius {}", c, t));
        }
        let centre = c.trunc_le(&t);
        let key = canonical_key(&centre);
        Ok(OpenDisk { centre, t, key })
    }

    /// The open disk at `z` in direction `Toward(c)`.
    pub fn from_direction(z: &TypeIIPoint, d: &Direction) -> Option<Self> {
        d.centre().map(|c| OpenDisk::new(c, z.t.clone()).expect("normalised direction"))
    }

    pub fn centre(&self) -> &PuiseuxPoly {
        &self.centre
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn boundary(&self) -> TypeIIPoint {
        TypeIIPoint::new(&self.centre, self.t.clone()).expect("exact centre")
    }

    /// Least ramification of a classical point inside.
    pub fn m(&self) -> u64 {
        self.centre.ramification_index()
    }

    pub fn contains_point(&self, z: &TypeIIPoint) -> bool {
        z.t > self.t && orbit_agreement(&z.centre, &self.centre) > self.t
    }

    pub fn contains_classical(&self, c: &PuiseuxPoly) -> bool {
        orbit_agreement(c, &self.centre) > self.t
    }

    pub fn contains_disk(&self, o: &OpenDisk) -> bool {
        o.t >= self.t && orbit_agreement(&o.centre, &self.centre) > self.t
    }
}

impl PartialEq for OpenDisk {
    fn eq(&self, o: &Self) -> bool {
        self.t == o.t && self.key == o.key
    }
}

impl Eq for OpenDisk {}

impl Hash for OpenDisk {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.t.hash(h);
        self.key.hash(h);
    }
}

impl fmt::Display for OpenDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D-({}, {})", self.centre, self.t)
    }
}

/// True when `r` is a (possibly negative) integer.
#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn z(s: &str) -> TypeIIPoint {
        parse_point(s).unwrap()
    }

    #[test]
    fn order_examples() {
        assert!(leq(&z("zeta(0, 1)"), &z("zeta(0, 0)")));
        assert!(leq(&z("zeta(x, 2)"), &z("zeta(0, 1)")));
        assert!(!leq(&z("zeta(0, 0)"), &z("zeta(0, 1)")));
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&z("zeta(0, 1)"), &z("zeta(x, 2)")), z("zeta(0, 1)"));
        let a = z("zeta(x^(1/3) + x, 3/2)");
        assert_eq!(join(&a, &a), a);
        assert_eq!(join(&z("zeta(0, 2)"), &z("zeta(x, 2)")), z("zeta(0, 1)"));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hyperbolic_distance(&z("zeta(0, 0)"), &z("zeta(0, 1)")), int(1));
        let a = z("zeta(x, 5/2)");
        assert_eq!(hyperbolic_distance(&a, &a), int(0));
        assert_eq!(hyperbolic_distance(&z("zeta(0, 1)"), &z("zeta(x, 2)")), int(1));
    }

    #[test]
    fn direction_examples() {
        let g = TypeIIPoint::gauss();
        assert_eq!(
            direction_at(&g, &z("zeta(0, 1)")).unwrap(),
            direction_toward(&g, &PuiseuxPoly::zero()).unwrap()
        );
        assert_eq!(direction_at(&z("zeta(0, 1)"), &g).unwrap(), Direction::AtInfinity);
        let d = direction_at(&g, &z("zeta(1 + x, 1)")).unwrap();
        assert_eq!(d.centre().unwrap(), &PuiseuxPoly::one());
    }

    #[test]
    fn multiplicities() {
        assert_eq!((z("zeta(0, 1/2)").m(), z("zeta(0, 1/2)").g()), (1, 2));
        assert_eq!((z("zeta(x^(1/2), 3/4)").m(), z("zeta(x^(1/2), 3/4)").g()), (2, 4));
        assert_eq!((g_m(&TypeIIPoint::gauss())), (1, 1));
        assert_eq!(z("zeta(0, 1)").g(), 1);
    }

    fn g_m(p: &TypeIIPoint) -> (u64, u64) {
        (p.m(), p.g())
    }

    #[test]
    fn kinds() {
        assert_eq!(TypeIIPoint::gauss().kind(), PointKind::Integral);
        assert_eq!(z("zeta(x^(1/2), 1)").kind(), PointKind::Free);
        assert_eq!(z("zeta(0, 1/2)").kind(), PointKind::Satellite);
        // The centre of zeta(x^(1/2), |x|^(1/2)) truncates to 0, so the point is satellite.
        assert_eq!(z("zeta(x^(1/2), 1/2)"), z("zeta(0, 1/2)"));
    }

    #[test]
    fn special_direction_examples() {
        assert!(special_directions(&TypeIIPoint::gauss()).is_empty());
        let sd = special_directions(&z("zeta(0, 1/2)"));
        assert_eq!(sd.len(), 2);
        assert_eq!(sd[0].1, 1);
        assert_eq!(sd[1], (Direction::AtInfinity, 1));
        let sd = special_directions(&z("zeta(x^(1/2), 1)"));
        assert_eq!(sd, vec![(Direction::AtInfinity, 1)]);
    }

    #[test]
    fn lattice_examples() {
        let (o, i) = nearest_lattice_vertices(&z("zeta(0, 1/2)"), 1).unwrap();
        assert_eq!((o, i), (TypeIIPoint::gauss(), z("zeta(0, 1)")));
        let (o, i) = nearest_lattice_vertices(&z("zeta(x^(1/2), 3/4)"), 2).unwrap();
        assert_eq!((o, i), (z("zeta(0, 1/2)"), z("zeta(x^(1/2), 1)")));
        let p = z("zeta(0, 1)");
        assert_eq!(nearest_lattice_vertices(&p, 1).unwrap(), (p.clone(), p));
        assert!(nearest_lattice_vertices(&z("zeta(x^(1/2), 1)"), 3).is_err());
    }

    #[test]
    fn galois_conjugates_are_identified() {
        let a = z("zeta(x^(1/2) + x, 2)");
        let b = z("zeta(-x^(1/2) + x, 2)");
        assert_eq!(a, b);
        assert!(leq(&a, &b) && leq(&b, &a));
        let c = z("zeta(x^(1/3), 1)");
        let d = z("zeta(-x^(1/3), 1)");
        assert_ne!(c, d);
        assert_eq!(join(&c, &d), z("zeta(0, 1/3)"));
    }

    #[test]
    fn anchors_come_from_self_joins() {
        let a = z("zeta(x^(1/2), 3/4)");
        let js = conjugate_joins(&a, &a);
        assert_eq!(js, vec![a.clone(), z("zeta(0, 1/2)")]);
    }

    #[test]
    fn open_disks() {
        let d = OpenDisk::new(&PuiseuxPoly::zero(), int(1)).unwrap();
        assert!(d.contains_point(&z("zeta(x^2, 3)")));
        assert!(!d.contains_point(&z("zeta(x, 3)")));
        assert!(!d.contains_point(&z("zeta(0, 1)")));
        assert!(d.contains_disk(&OpenDisk::new(&PuiseuxPoly::zero(), int(3)).unwrap()));
        assert_eq!(d.boundary(), z("zeta(0, 1)"));
        assert_eq!(OpenDisk::new(&crate::parse_series("x^(1/2) + x").unwrap(), rat(1, 2)).unwrap().m(), 2);
    }
}
