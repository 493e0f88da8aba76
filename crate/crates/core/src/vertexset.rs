//! Vertex sets, hull trees, n-convex and smooth hulls, Gamma-domains and dual graphs.
//!
//! Sets are stored one point per Galois orbit. Questions about complementary components are
//! answered in a geometric model that expands every orbit into its conjugates.

use std::collections::BTreeSet;
use std::fmt;

use crate::berkovich::{
    conjugate_joins, direction_toward, lt, nearest_lattice_vertices, special_directions,
    twisted_agreement, Direction, OpenDisk, TypeIIPoint,
};
use crate::error::{Error, Result};
use crate::rat::{int, lcm, Ext, Rat};

/// Default round cap of [`smooth_n_convex_hull`].
pub const SMOOTH_HULL_ROUNDS: usize = 64;

/// A finite set of Type II points in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<TypeIIPoint>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, z: &TypeIIPoint) -> bool {
        self.0.contains(z)
    }

    pub fn insert(&mut self, z: TypeIIPoint) -> bool {
        self.0.insert(z)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TypeIIPoint> {
        self.0.iter()
    }

    pub fn points(&self) -> Vec<TypeIIPoint> {
        self.0.iter().cloned().collect()
    }

    pub fn is_subset(&self, o: &VertexSet) -> bool {
        self.0.is_subset(&o.0)
    }

    pub fn union(&self, o: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&o.0).cloned().collect())
    }

    pub fn max_g(&self) -> u64 {
        self.iter().map(|z| z.g()).max().unwrap_or(1)
    }
}

impl FromIterator<TypeIIPoint> for VertexSet {
    fn from_iter<I: IntoIterator<Item = TypeIIPoint>>(it: I) -> Self {
        VertexSet(it.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a TypeIIPoint;
    type IntoIter = std::collections::btree_set::Iter<'a, TypeIIPoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|z| z.to_string()).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

/// Parse `zeta(..); zeta(..); ...` (commas between points are also accepted).
pub fn parse_vertex_set(text: &str) -> Result<VertexSet> {
    let mut cur = crate::puiseux::parse::Cursor::new(text, 1, 0);
    let mut out = VertexSet::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        out.insert(crate::berkovich::parse_point_at(&mut cur)?);
        if cur.at_end() {
            return Ok(out);
        }
        if !cur.eat(b';') && !cur.eat(b',') {
            return cur.err("expected ';' between points");
        }
    }
}

/// The quotient of the convex hull: nodes and child-to-parent edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullTree {
    pub nodes: Vec<TypeIIPoint>,
    /// `parent[i]` is the nearest node strictly above node `i`.
    pub parent: Vec<Option<usize>>,
}

impl HullTree {
    /// `(child, parent, length)` for every edge.
    pub fn edges(&self) -> Vec<(usize, usize, Rat)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (i, p, self.nodes[i].t() - self.nodes[p].t())))
            .collect()
    }

    pub fn root(&self) -> usize {
        self.parent.iter().position(|p| p.is_none()).unwrap()
    }

    /// The point at depth `s` on the edge above node `i`.
    pub fn edge_point(&self, i: usize, s: &Rat) -> TypeIIPoint {
        self.nodes[i].ancestor(s)
    }
}

pub fn hull(gamma: &VertexSet) -> Result<HullTree> {
    if gamma.is_empty() {
        return Err(Error::Precondition("hull of an empty vertex set".into()));
    }
    let pts = gamma.points();
    let mut nodes: BTreeSet<TypeIIPoint> = pts.iter().cloned().collect();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i..] {
            nodes.extend(conjugate_joins(a, b));
        }
    }
    let nodes: Vec<TypeIIPoint> = nodes.into_iter().collect();
    let parent = nodes
        .iter()
        .map(|u| {
            (0..nodes.len())
                .filter(|&j| lt(u, &nodes[j]))
                .max_by(|&a, &b| nodes[a].t().cmp(nodes[b].t()))
        })
        .collect();
    Ok(HullTree { nodes, parent })
}

/// Points strictly inside `(t_lo, t_hi)` on the ray above `z` with `g <= n`.
fn lattice_on_segment(z: &TypeIIPoint, lo: &Rat, hi: &Rat, n: u64) -> Vec<TypeIIPoint> {
    let mut out = BTreeSet::new();
    for d in 1..=n {
        let dd = int(d as i64);
        let first: num_bigint::BigInt = (lo * &dd).floor().to_integer() + 1;
        let mut k = first;
        loop {
            let s = Rat::from_integer(k.clone()) / &dd;
            if s >= *hi {
                break;
            }
            let p = z.ancestor(&s);
            if p.g() <= n {
                out.insert(p);
            }
            k += 1;
        }
    }
    out.into_iter().collect()
}

pub fn n_convex_hull(gamma: &VertexSet, n: u64) -> Result<VertexSet> {
    if let Some(z) = gamma.iter().find(|z| z.g() > n) {
        return Err(Error::Precondition(format!("{} has g = {} > {}", z, z.g(), n)));
    }
    let h = hull(gamma)?;
    let mut out: VertexSet = h.nodes.iter().filter(|z| z.g() <= n).cloned().collect();
    for (i, p, _) in h.edges() {
        for z in lattice_on_segment(&h.nodes[i], h.nodes[p].t(), h.nodes[i].t(), n) {
            out.insert(z);
        }
    }
    Ok(out)
}

fn toward_occupied(z: &TypeIIPoint, gamma: &VertexSet) -> bool {
    let disk = OpenDisk::new(z.centre(), z.t().clone()).expect("exact centre");
    gamma.iter().any(|g| disk.contains_point(g))
}

/// Some conjugate of some point of `gamma` lies outside the closed disk of `z`.
fn infinity_occupied(z: &TypeIIPoint, gamma: &VertexSet) -> bool {
    gamma.iter().any(|g| {
        if g.t() < z.t() {
            return true;
        }
        let m = lcm(g.m(), z.m());
        (0..m).any(|k| twisted_agreement(g.centre(), k, z.centre(), m) < *z.t())
    })
}

fn occupied(z: &TypeIIPoint, d: &Direction, gamma: &VertexSet) -> bool {
    match d {
        Direction::AtInfinity => infinity_occupied(z, gamma),
        Direction::Toward { .. } => toward_occupied(z, gamma),
    }
}

/// Special directions of `z` that contain no point of `gamma`.
pub fn unflanked_directions(z: &TypeIIPoint, gamma: &VertexSet) -> Vec<Direction> {
    special_directions(z).into_iter().map(|(d, _)| d).filter(|d| !occupied(z, d, gamma)).collect()
}

pub fn is_flanked(z: &TypeIIPoint, gamma: &VertexSet) -> bool {
    unflanked_directions(z, gamma).is_empty()
}

/// Smallest smoothly n-convex superset of `gamma`.
pub fn smooth_n_convex_hull(gamma: &VertexSet, n: u64) -> Result<VertexSet> {
    smooth_n_convex_hull_capped(gamma, n, SMOOTH_HULL_ROUNDS)
}

pub fn smooth_n_convex_hull_capped(gamma: &VertexSet, n: u64, rounds: usize) -> Result<VertexSet> {
    let mut cur = gamma.clone();
    for _ in 0..rounds {
        let h = n_convex_hull(&cur, n)?;
        let mut next = h.clone();
        for z in &h {
            for d in unflanked_directions(z, &h) {
                let (outer, inner) = nearest_lattice_vertices(z, z.m())?;
                next.insert(match d {
                    Direction::AtInfinity => outer,
                    Direction::Toward { .. } => inner,
                });
            }
        }
        if next == h {
            return Ok(h);
        }
        cur = next;
    }
    Err(Error::NonTermination(rounds))
}

/// A connected component of the complement of a vertex set, up to Galois conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaDomain {
    /// The open disk at `boundary` in `direction`; `None` stands for all unoccupied directions.
    Disk { boundary: TypeIIPoint, direction: Option<Direction> },
    /// Two boundary points; `top` is the highest point of the skeleton between them.
    Annulus { ends: (TypeIIPoint, TypeIIPoint), top: TypeIIPoint },
    /// Three or more boundary points.
    Affinoid { boundary: Vec<TypeIIPoint>, top: TypeIIPoint },
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Direction {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let key = |d: &Direction| match d {
            Direction::AtInfinity => None,
            Direction::Toward { key, .. } => Some(key.clone()),
        };
        key(self).cmp(&key(o))
    }
}

impl GammaDomain {
    pub fn boundary(&self) -> Vec<TypeIIPoint> {
        match self {
            GammaDomain::Disk { boundary, .. } => vec![boundary.clone()],
            GammaDomain::Annulus { ends, .. } => vec![ends.0.clone(), ends.1.clone()],
            GammaDomain::Affinoid { boundary, .. } => boundary.clone(),
        }
    }
}

impl fmt::Display for GammaDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaDomain::Disk { boundary, direction: Some(d) } => write!(f, "disk at {} {}", boundary, d),
            GammaDomain::Disk { boundary, direction: None } => write!(f, "disks at {} (unoccupied directions)", boundary),
            GammaDomain::Annulus { ends, top } => write!(f, "annulus {} -- {} via {}", ends.0, ends.1, top),
            GammaDomain::Affinoid { boundary, top } => {
                let b: Vec<String> = boundary.iter().map(|z| z.to_string()).collect();
                write!(f, "affinoid [{}] via {}", b.join(", "), top)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    InGamma(TypeIIPoint),
    Domain(GammaDomain),
}

/// The Galois conjugates of a vertex set: for each orbit, the twists `k` (over a common `m`)
/// giving distinct geometric points, and the depth of the nearest geometric point above it.
struct Geometric<'a> {
    orbits: &'a [TypeIIPoint],
    m: u64,
    twists: Vec<Vec<u64>>,
    parent_depth: Vec<Option<Rat>>,
}

/// `min(t1, t2, val(sigma_k a - b))`.
fn twisted_join(a: &TypeIIPoint, k: u64, b: &TypeIIPoint, m: u64) -> Rat {
    let s = std::cmp::min(a.t(), b.t()).clone();
    match twisted_agreement(a.centre(), k, b.centre(), m) {
        Ext::Fin(x) if x < s => x,
        _ => s,
    }
}

impl<'a> Geometric<'a> {
    fn new(orbits: &'a [TypeIIPoint]) -> Self {
        let m = orbits.iter().fold(1, |acc, z| lcm(acc, z.m()));
        let twists: Vec<Vec<u64>> = orbits
            .iter()
            .map(|z| {
                let mut kept: Vec<u64> = Vec::new();
                for k in 0..m {
                    let new = kept
                        .iter()
                        .all(|&k0| twisted_agreement(z.centre(), (k + m - k0) % m, z.centre(), m) < *z.t());
                    if new {
                        kept.push(k);
                    }
                }
                kept
            })
            .collect();
        // By Galois symmetry the depth of the nearest point above does not depend on the twist.
        let parent_depth = orbits
            .iter()
            .map(|zi| {
                orbits
                    .iter()
                    .zip(&twists)
                    .filter(|(zj, _)| zj.t() < zi.t())
                    .filter(|(zj, ks)| {
                        ks.iter().any(|&l| twisted_agreement(zj.centre(), l, zi.centre(), m) >= *zj.t())
                    })
                    .map(|(zj, _)| zj.t().clone())
                    .max()
            })
            .collect();
        Geometric { orbits, m, twists, parent_depth }
    }

    /// The boundary of the component of the complement containing `z`, as geometric points
    /// `(orbit, twist over m')`, together with `m'` and whether each lies above `z`.
    fn visible_from(&self, z: &TypeIIPoint) -> (Vec<(usize, u64, bool)>, u64) {
        let mm = lcm(self.m, z.m());
        let mut pts = Vec::new();
        for (i, zi) in self.orbits.iter().enumerate() {
            // The twist by zeta_mm^k acts on x^(1/m) as zeta_m^k, so twists lift unchanged.
            for &k in &self.twists[i] {
                let s = twisted_join(zi, k, z, mm);
                pts.push((i, k, s.clone(), s == *zi.t()));
            }
        }
        let above = pts.iter().filter(|p| p.3).map(|p| self.orbits[p.0].t().clone()).max();
        let visible = pts
            .into_iter()
            .filter(|(i, _, s, is_above)| {
                if *is_above {
                    Some(self.orbits[*i].t()) == above.as_ref()
                } else {
                    above.as_ref().is_none_or(|a| a < s)
                        && self.parent_depth[*i].as_ref().is_none_or(|d| d < s)
                }
            })
            .map(|(i, k, _, is_above)| (i, k, is_above))
            .collect();
        (visible, mm)
    }

    fn locate(&self, z: &TypeIIPoint, gamma: &VertexSet) -> Result<Location> {
        if gamma.contains(z) {
            return Ok(Location::InGamma(z.clone()));
        }
        let (visible, mm) = self.visible_from(z);
        match visible.as_slice() {
            [] => unreachable!("a nonempty vertex set is visible from outside it"),
            [(i, _, above)] => {
                let b = &self.orbits[*i];
                let direction = if *above { direction_toward(b, z.centre())? } else { Direction::AtInfinity };
                Ok(Location::Domain(GammaDomain::Disk { boundary: b.clone(), direction: Some(direction) }))
            }
            [(i0, k0, _), ..] => {
                let b0 = &self.orbits[*i0];
                let s = visible
                    .iter()
                    .map(|(i, k, _)| twisted_join(b0, (k0 + mm - k) % mm, &self.orbits[*i], mm))
                    .min()
                    .unwrap();
                let top = b0.ancestor(&s);
                let mut ends: Vec<TypeIIPoint> = visible.iter().map(|(i, ..)| self.orbits[*i].clone()).collect();
                ends.sort();
                if ends.len() == 2 {
                    let b = ends.pop().unwrap();
                    let a = ends.pop().unwrap();
                    Ok(Location::Domain(GammaDomain::Annulus { ends: (a, b), top }))
                } else {
                    ends.dedup();
                    Ok(Location::Domain(GammaDomain::Affinoid { boundary: ends, top }))
                }
            }
        }
    }
}

/// The point of `gamma` equal to `z`, or the Gamma-domain containing `z`.
pub fn locate(z: &TypeIIPoint, gamma: &VertexSet) -> Result<Location> {
    if gamma.is_empty() {
        return Err(Error::Precondition("locate in an empty vertex set".into()));
    }
    let orbits = gamma.points();
    Geometric::new(&orbits).locate(z, gamma)
}

/// Locates many points against one vertex set, sharing the conjugate bookkeeping.
pub struct Locator<'a> {
    gamma: &'a VertexSet,
    geo: Geometric<'a>,
}

impl<'a> Locator<'a> {
    pub fn new(gamma: &'a VertexSet, orbits: &'a [TypeIIPoint]) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::Precondition("locate in an empty vertex set".into()));
        }
        Ok(Locator { gamma, geo: Geometric::new(orbits) })
    }

    pub fn locate(&self, z: &TypeIIPoint) -> Result<Location> {
        self.geo.locate(z, self.gamma)
    }
}

/// Symbolic disks (one per point) followed by the annuli and affinoids met by the hull.
pub fn enumerate_domains(gamma: &VertexSet) -> Result<Vec<GammaDomain>> {
    let mut out: Vec<GammaDomain> =
        gamma.iter().map(|b| GammaDomain::Disk { boundary: b.clone(), direction: None }).collect();
    let h = hull(gamma)?;
    let orbits = gamma.points();
    let loc = Locator::new(gamma, &orbits)?;
    let mut seen = BTreeSet::new();
    for (i, p, _) in h.edges() {
        let s = (h.nodes[i].t() + h.nodes[p].t()) / int(2);
        if let Location::Domain(d) = loc.locate(&h.edge_point(i, &s))? {
            seen.insert(d);
        }
    }
    out.extend(seen);
    Ok(out)
}

/// A reason a vertex set is not smooth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothnessViolation {
    Unflanked { point: TypeIIPoint, direction: Direction },
    AnnulusPoint { ends: (TypeIIPoint, TypeIIPoint), witness: TypeIIPoint },
    Affinoid { boundary: Vec<TypeIIPoint> },
}

impl fmt::Display for SmoothnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothnessViolation::Unflanked { point, direction } => {
                write!(f, "{} is not flanked: special direction {} misses the set", point, direction)
            }
            SmoothnessViolation::AnnulusPoint { ends, witness } => write!(
                f,
                "annulus {} -- {} contains {} with g = {}",
                ends.0,
                ends.1,
                witness,
                witness.g()
            ),
            SmoothnessViolation::Affinoid { boundary } => {
                let b: Vec<String> = boundary.iter().map(|z| z.to_string()).collect();
                write!(f, "complementary domain with {} boundary points: {}", b.len(), b.join(", "))
            }
        }
    }
}

/// All smoothness violations; empty iff the set is smooth.
pub fn smoothness_violations(gamma: &VertexSet) -> Result<Vec<SmoothnessViolation>> {
    let mut out = Vec::new();
    for z in gamma {
        for direction in unflanked_directions(z, gamma) {
            out.push(SmoothnessViolation::Unflanked { point: z.clone(), direction });
        }
    }
    for d in enumerate_domains(gamma)? {
        match d {
            GammaDomain::Annulus { ends, top } => {
                let n = ends.0.g().max(ends.1.g());
                let mut inside: BTreeSet<TypeIIPoint> = BTreeSet::new();
                for e in [&ends.0, &ends.1] {
                    inside.extend(lattice_on_segment(e, top.t(), e.t(), n));
                }
                if !gamma.contains(&top) && top.g() <= n {
                    inside.insert(top.clone());
                }
                inside.retain(|p| !gamma.contains(p));
                if let Some(witness) = inside.into_iter().next() {
                    out.push(SmoothnessViolation::AnnulusPoint { ends, witness });
                }
            }
            GammaDomain::Affinoid { boundary, .. } => out.push(SmoothnessViolation::Affinoid { boundary }),
            GammaDomain::Disk { .. } => {}
        }
    }
    Ok(out)
}

pub fn is_smooth(gamma: &VertexSet) -> Result<bool> {
    Ok(smoothness_violations(gamma)?.is_empty())
}

/// The dual graph: vertices are the points, edges the annuli. Domains with three or more
/// boundary points appear as extra hub vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<TypeIIPoint>,
    pub edges: Vec<(usize, usize)>,
    pub hubs: Vec<Vec<usize>>,
}

pub fn dual_graph(gamma: &VertexSet) -> Result<DualGraph> {
    let vertices = gamma.points();
    let idx = |z: &TypeIIPoint| vertices.binary_search(z).expect("boundary lies in the set");
    let mut edges = Vec::new();
    let mut hubs = Vec::new();
    if !gamma.is_empty() {
        for d in enumerate_domains(gamma)? {
            match d {
                GammaDomain::Annulus { ends, .. } => edges.push((idx(&ends.0), idx(&ends.1))),
                GammaDomain::Affinoid { boundary, .. } => hubs.push(boundary.iter().map(idx).collect()),
                GammaDomain::Disk { .. } => {}
            }
        }
    }
    edges.sort();
    Ok(DualGraph { vertices, edges, hubs })
}

fn vertex_label(z: &TypeIIPoint) -> String {
    format!("a={} t={} m={} g={}", z.centre(), z.t(), z.m(), z.g())
}

impl DualGraph {
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len() + self.hubs.len();
        let e = self.edges.len() + self.hubs.iter().map(|h| h.len()).sum::<usize>();
        if n == 0 || e + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let all = self.edges.iter().cloned().chain(
            self.hubs.iter().enumerate().flat_map(|(h, vs)| vs.iter().map(move |&v| (v, self.vertices.len() + h))),
        );
        for (a, b) in all {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dual {\n");
        for (i, z) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", i, vertex_label(z)));
        }
        for (h, _) in self.hubs.iter().enumerate() {
            s.push_str(&format!("  h{} [shape=point];\n", h));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{} -- n{};\n", a, b));
        }
        for (h, vs) in self.hubs.iter().enumerate() {
            for v in vs {
                s.push_str(&format!("  n{} -- h{};\n", v, h));
            }
        }
        s.push_str("}\n");
        s
    }

    /// Line-oriented report: `vertex`, `edge` and `hub` records.
    pub fn to_structured(&self) -> String {
        let mut s = String::new();
        for (i, z) in self.vertices.iter().enumerate() {
            s.push_str(&format!("vertex {} {} kind={}\n", i, vertex_label(z), z.kind()));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("edge {} {}\n", a, b));
        }
        for (h, vs) in self.hubs.iter().enumerate() {
            let v: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("hub {} {}\n", h, v.join(" ")));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berkovich::parse_point;
    use crate::rat::rat;

    fn vs(text: &str) -> VertexSet {
        parse_vertex_set(text).unwrap()
    }

    fn p(text: &str) -> TypeIIPoint {
        parse_point(text).unwrap()
    }

    #[test]
    fn hull_examples() {
        let h = hull(&vs("zeta(0,0); zeta(0,1); zeta(x,2)")).unwrap();
        assert_eq!(h.nodes.len(), 3);
        assert_eq!(h.edges().len(), 2);
        let h = hull(&vs("zeta(0,1); zeta(1,1)")).unwrap();
        assert_eq!(h.nodes[h.root()], TypeIIPoint::gauss());
        assert_eq!(h.edges().len(), 2);
        let h = hull(&vs("zeta(x^(1/2), 3/4)")).unwrap();
        assert_eq!(h.nodes, vec![p("zeta(0, 1/2)"), p("zeta(x^(1/2), 3/4)")]);
    }

    #[test]
    fn n_convex_examples() {
        assert_eq!(n_convex_hull(&vs("zeta(0,0); zeta(0,2)"), 1).unwrap(), vs("zeta(0,0); zeta(0,1); zeta(0,2)"));
        assert_eq!(n_convex_hull(&vs("zeta(0,0); zeta(0,1)"), 2).unwrap(), vs("zeta(0,0); zeta(0,1/2); zeta(0,1)"));
        let g = vs("zeta(0,0); zeta(0,1/2); zeta(0,1)");
        assert_eq!(n_convex_hull(&g, 2).unwrap(), g);
        assert!(n_convex_hull(&vs("zeta(0,1/3)"), 2).is_err());
    }

    #[test]
    fn flanking() {
        let half = p("zeta(0,1/2)");
        assert!(is_flanked(&TypeIIPoint::gauss(), &vs("zeta(0,0)")));
        assert!(is_flanked(&half, &vs("zeta(0,0); zeta(0,1/2); zeta(0,1)")));
        assert!(!is_flanked(&half, &vs("zeta(0,0); zeta(0,1/2)")));
        // a point of multiplicity 2 is flanked from above by its own conjugate
        assert!(is_flanked(&p("zeta(x^(1/2), 1)"), &vs("zeta(x^(1/2), 1)")));
    }

    #[test]
    fn smooth_hull_examples() {
        let s = smooth_n_convex_hull(&vs("zeta(0,1/2)"), 2).unwrap();
        assert_eq!(s, vs("zeta(0,0); zeta(0,1/2); zeta(0,1)"));
        assert!(is_smooth(&s).unwrap());
        assert_eq!(smooth_n_convex_hull(&vs("zeta(0,0)"), 1).unwrap(), vs("zeta(0,0)"));
        let s = smooth_n_convex_hull(&vs("zeta(x^(1/2), 3/4)"), 4).unwrap();
        assert!(s.contains(&p("zeta(0, 1/2)")));
        assert!(s.contains(&p("zeta(x^(1/2), 1)")));
        assert!(is_smooth(&s).unwrap(), "{:?}", smoothness_violations(&s).unwrap());
    }

    #[test]
    fn smoothness_violations_name_witnesses() {
        assert!(is_smooth(&vs("zeta(0,0); zeta(0,1)")).unwrap());
        let v = smoothness_violations(&vs("zeta(0,0); zeta(0,2)")).unwrap();
        assert_eq!(v.len(), 1);
        match &v[0] {
            SmoothnessViolation::AnnulusPoint { witness, .. } => assert_eq!(*witness, p("zeta(0,1)")),
            other => panic!("{:?}", other),
        }
        let v = smoothness_violations(&vs("zeta(x^(1/3), 1)")).unwrap();
        assert!(v.iter().any(|x| matches!(x, SmoothnessViolation::Affinoid { boundary } if boundary.len() == 1)));
    }

    #[test]
    fn locate_examples() {
        let g = vs("zeta(0,0)");
        assert_eq!(
            locate(&p("zeta(0,1)"), &g).unwrap(),
            Location::Domain(GammaDomain::Disk {
                boundary: TypeIIPoint::gauss(),
                direction: Some(direction_toward(&TypeIIPoint::gauss(), &crate::PuiseuxPoly::zero()).unwrap())
            })
        );
        let g = vs("zeta(0,0); zeta(0,1)");
        assert!(matches!(locate(&p("zeta(0,1/2)"), &g).unwrap(), Location::Domain(GammaDomain::Annulus { .. })));
        assert_eq!(locate(&TypeIIPoint::gauss(), &g).unwrap(), Location::InGamma(TypeIIPoint::gauss()));
        let far = locate(&p("zeta(0,-1)"), &g).unwrap();
        assert!(matches!(far, Location::Domain(GammaDomain::Disk { direction: Some(Direction::AtInfinity), .. })));
        // the two conjugates of zeta(x^(1/2), 1) bound an annulus through zeta(0, 1/2)
        let g = vs("zeta(x^(1/2), 1)");
        match locate(&p("zeta(0, 1)"), &g).unwrap() {
            Location::Domain(GammaDomain::Annulus { ends, top }) => {
                assert_eq!(ends.0, ends.1);
                assert_eq!(top, p("zeta(0, 1/2)"));
            }
            other => panic!("{:?}", other),
        }
        match locate(&p("zeta(x^(1/2) + x, 3)"), &g).unwrap() {
            Location::Domain(GammaDomain::Disk { direction: Some(Direction::Toward { .. }), .. }) => {}
            other => panic!("{:?}", other),
        }
        // a point of larger multiplicity below one conjugate only
        let g = vs("zeta(0, 4/3); zeta(-x^(1/2), 5/2)");
        match locate(&p("zeta(-x^(1/2) + 3*x^(11/4), 11/2)"), &g).unwrap() {
            Location::Domain(GammaDomain::Disk { boundary, direction: Some(Direction::Toward { .. }) }) => {
                assert_eq!(boundary, p("zeta(-x^(1/2), 5/2)"));
            }
            other => panic!("{:?}", other),
        }
        let _ = rat(1, 1);
    }

    #[test]
    fn dual_graphs() {
        let d = dual_graph(&vs("zeta(0,0); zeta(0,1)")).unwrap();
        assert_eq!(d.edges, vec![(0, 1)]);
        let d = dual_graph(&smooth_n_convex_hull(&vs("zeta(0,1/2)"), 2).unwrap()).unwrap();
        assert_eq!(d.edges.len(), 2);
        assert!(d.is_tree());
        let d = dual_graph(&vs("zeta(0,0)")).unwrap();
        assert!(d.edges.is_empty());
        assert_eq!(d.to_dot(), "graph dual {\n  n0 [label=\"a=0 t=0 m=1 g=1\"];\n}\n");
    }
}
