//! Classification of a single Gamma-domain.
//!
//! Disk domains are first followed as exact image disks while no pole enters them: an image
//! meeting the vertex set is a J path, and an image nested inside an earlier image, a registry
//! disk or an F-certified domain closes a Gamma-free cycle. Otherwise ray segments inside the
//! domain are pushed forward through the symbolic ray maps, looking for a parameter landing on a
//! vertex; each hit is replayed pointwise before it is reported.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{locate_in, DomainClass, FReason, JWitness, PersistentFDiskRegistry, StabilizationConfig};
use crate::berkovich::{direction_toward, Direction, OpenDisk, TypeIIPoint};
use crate::error::{Error, Result};
use crate::puiseux::PuiseuxPoly;
use crate::rat::{int, Rat};
use crate::skew::Chain;
use crate::vertexset::{GammaDomain, VertexSet};

/// Recursion depth for following a disk image into another disk domain.
const MAX_NESTING: usize = 4;
/// Interior sample points per segment for the pointwise fallback.
const FALLBACK_SAMPLES: i64 = 8;

/// A ray segment `{ zeta(centre, t) : t in <lo, hi> }` over `fibre`, reached from segment
/// `origin` of the domain; the parameter there is `back.0 * t + back.1`.
#[derive(Clone, Debug)]
struct Segment {
    fibre: usize,
    centre: PuiseuxPoly,
    lo: Rat,
    lo_open: bool,
    hi: Rat,
    hi_open: bool,
    origin: usize,
    back: (Rat, Rat),
}

impl Segment {
    fn contains(&self, t: &Rat) -> bool {
        let above = if self.lo_open { *t > self.lo } else { *t >= self.lo };
        let below = if self.hi_open { *t < self.hi } else { *t <= self.hi };
        above && below
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    fn origin_parameter(&self, t: &Rat) -> Rat {
        &self.back.0 * t + &self.back.1
    }

    /// A parameter inside the segment.
    fn interior(&self) -> Rat {
        if self.lo == self.hi {
            self.lo.clone()
        } else {
            (&self.lo + &self.hi) / int(2)
        }
    }
}

/// Shared state for classifying many domains against one vertex set configuration.
pub struct Classifier<'a> {
    chain: &'a Chain,
    gammas: &'a [VertexSet],
    registry: &'a PersistentFDiskRegistry,
    cfg: &'a StabilizationConfig,
    gauss_only: bool,
    memo: RefCell<HashMap<(usize, GammaDomain), DomainClass>>,
    stack: RefCell<Vec<(usize, GammaDomain)>>,
}

impl<'a> Classifier<'a> {
    pub fn new(
        chain: &'a Chain,
        gammas: &'a [VertexSet],
        registry: &'a PersistentFDiskRegistry,
        cfg: &'a StabilizationConfig,
    ) -> Result<Self> {
        if gammas.len() != chain.len() {
            return Err(Error::Precondition(format!(
                "{} vertex sets given for a chain of {} fibres",
                gammas.len(),
                chain.len()
            )));
        }
        if let Some(j) = gammas.iter().position(|g| g.is_empty()) {
            return Err(Error::Precondition(format!("fibre {} has an empty vertex set", chain.label(j))));
        }
        let gauss = TypeIIPoint::gauss();
        let gauss_only = gammas.iter().all(|g| g.iter().all(|z| *z == gauss));
        Ok(Classifier {
            chain,
            gammas,
            registry,
            cfg,
            gauss_only,
            memo: RefCell::new(HashMap::new()),
            stack: RefCell::new(Vec::new()),
        })
    }

    pub fn chain(&self) -> &Chain {
        self.chain
    }

    pub fn gammas(&self) -> &[VertexSet] {
        self.gammas
    }

    /// The class of domain `u` over fibre `j`; computation errors become `Unknown` with a note.
    pub fn classify(&self, j: usize, u: &GammaDomain) -> DomainClass {
        let key = (j, u.clone());
        if let Some(c) = self.memo.borrow().get(&key) {
            return c.clone();
        }
        self.stack.borrow_mut().push(key.clone());
        let class = self.classify_uncached(j, u).unwrap_or_else(|e| DomainClass::Unknown {
            horizon: self.cfg.horizon,
            note: Some(e.to_string()),
        });
        self.stack.borrow_mut().pop();
        self.memo.borrow_mut().insert(key, class.clone());
        class
    }

    fn classify_uncached(&self, j: usize, u: &GammaDomain) -> Result<DomainClass> {
        let disk = match u {
            GammaDomain::Disk { boundary, direction: Some(d) } => OpenDisk::from_direction(boundary, d),
            _ => None,
        };
        if let GammaDomain::Disk { boundary, direction: Some(_) } = u {
            if self.gauss_only && *boundary == TypeIIPoint::gauss() && self.chain.all_good_reduction() {
                return Ok(DomainClass::FCertified(FReason::GoodReductionInvariance));
            }
        }
        if let Some(d) = &disk {
            if self.registry.contains(j, d) {
                return Ok(DomainClass::FCertified(FReason::MapsIntoPersistentFDisk));
            }
        }
        let mut region_hit = None;
        if let Some(d) = &disk {
            match self.region_orbit(j, d)? {
                Some(DomainClass::JDomain(w)) => region_hit = Some(w),
                Some(c) => return Ok(c),
                None => {}
            }
        }
        let segments = self.initial_segments(j, u);
        if let Some(w) = self.segment_search(j, &segments)? {
            return Ok(DomainClass::JDomain(w));
        }
        if let Some(w) = region_hit {
            return Ok(DomainClass::JDomain(w));
        }
        Ok(DomainClass::Unknown { horizon: self.cfg.horizon, note: None })
    }

    /// Follows the exact image disks of `d`; `None` when a pole enters or the horizon runs out.
    fn region_orbit(&self, j: usize, d: &OpenDisk) -> Result<Option<DomainClass>> {
        let mut regions = vec![(j, d.clone())];
        let (mut f, mut r) = (j, d.clone());
        for k in 1..=self.cfg.horizon {
            let Some(img) = self.chain.link(f).disk_image(&r)? else {
                return Ok(None);
            };
            f = self.chain.next(f);
            if let Some(g) = self.gammas[f].iter().find(|g| img.contains_point(g)) {
                let w = JWitness { fibre: j, point: d.boundary(), steps: k, target: g.clone(), region: Some(d.clone()) };
                return Ok(Some(DomainClass::JDomain(w)));
            }
            let inside = |o: &OpenDisk| *o == img || o.contains_disk(&img);
            if self.registry.disks().iter().any(|rd| rd.fibre == f && inside(&rd.disk)) {
                return Ok(Some(DomainClass::FCertified(FReason::MapsIntoPersistentFDisk)));
            }
            if regions.iter().any(|(fi, ri)| *fi == f && inside(ri)) {
                return Ok(Some(DomainClass::FCertified(FReason::AttractingCycleCertificate)));
            }
            let b = img.boundary();
            let target = if self.gammas[f].contains(&b) {
                GammaDomain::Disk { direction: Some(direction_toward(&b, img.centre())?), boundary: b }
            } else {
                locate_in(&self.gammas[f], &b)?
            };
            // Every domain on the stack is mid-way through this loop, its images already inside
            // the next stack entry, so reaching one of them closes a Gamma-free cycle.
            if self.stack.borrow().iter().any(|(fi, ui)| *fi == f && *ui == target) {
                return Ok(Some(DomainClass::FCertified(FReason::AttractingCycleCertificate)));
            }
            let known = self.memo.borrow().get(&(f, target.clone())).cloned();
            let nested = match known {
                Some(c) => Some(c),
                None if self.stack.borrow().len() < MAX_NESTING && is_toward_disk(&target) => {
                    Some(self.classify(f, &target))
                }
                None => None,
            };
            if let Some(DomainClass::FCertified(reason)) = nested {
                return Ok(Some(DomainClass::FCertified(reason)));
            }
            regions.push((f, img.clone()));
            r = img;
        }
        Ok(None)
    }

    /// Ray segments covering the skeleton of `u` (for disks, a stretch of the central ray).
    fn initial_segments(&self, j: usize, u: &GammaDomain) -> Vec<Segment> {
        let span = int(self.cfg.disk_span);
        let identity = (Rat::one(), Rat::zero());
        let mut out = Vec::new();
        let mut push = |centre: &PuiseuxPoly, lo: Rat, lo_open: bool, hi: Rat, hi_open: bool| {
            let origin = out.len();
            out.push(Segment {
                fibre: j,
                centre: centre.exactify(),
                lo,
                lo_open,
                hi,
                hi_open,
                origin,
                back: identity.clone(),
            });
        };
        match u {
            GammaDomain::Disk { boundary: b, direction: Some(Direction::AtInfinity) } => {
                push(b.centre(), b.t() - &span, false, b.t().clone(), true)
            }
            GammaDomain::Disk { boundary: b, direction: Some(d @ Direction::Toward { .. }) } => {
                push(d.centre().unwrap(), b.t().clone(), true, b.t() + &span, false)
            }
            GammaDomain::Disk { direction: None, .. } => {}
            GammaDomain::Annulus { top, .. } | GammaDomain::Affinoid { top, .. } => {
                let top_open = self.gammas[j].contains(top);
                let mut ends = u.boundary();
                ends.dedup();
                for e in ends.iter().filter(|e| e.t() > top.t()) {
                    push(e.centre(), top.t().clone(), top_open, e.t().clone(), true);
                }
            }
        }
        out
    }

    fn segment_search(&self, j: usize, initial: &[Segment]) -> Result<Option<JWitness>> {
        let mut segs: Vec<Segment> = initial.to_vec();
        let mut failed = false;
        for step in 1..=self.cfg.horizon {
            let mut next = Vec::new();
            for seg in &segs {
                match self.push_segment(seg) {
                    Ok(images) => next.extend(images),
                    Err(_) => failed = true,
                }
            }
            for seg in &next {
                for g in self.gammas[seg.fibre].iter() {
                    if !seg.contains(g.t()) || TypeIIPoint::new(&seg.centre, g.t().clone())? != *g {
                        continue;
                    }
                    let start = &initial[seg.origin];
                    let point = TypeIIPoint::new(&start.centre, seg.origin_parameter(g.t()))?;
                    let w = JWitness { fibre: j, point, steps: step, target: g.clone(), region: None };
                    if w.replay(self.chain, self.gammas)? {
                        return Ok(Some(w));
                    }
                }
            }
            next.truncate(self.cfg.segment_cap);
            if next.is_empty() {
                break;
            }
            segs = next;
        }
        if failed {
            return self.sample_search(j, initial);
        }
        Ok(None)
    }

    /// The image of a segment under its link, one segment per affine piece of the ray map.
    fn push_segment(&self, seg: &Segment) -> Result<Vec<Segment>> {
        let link = self.chain.link(seg.fibre);
        let fibre = self.chain.next(seg.fibre);
        let rm = link.ray_map(&seg.centre)?;
        let pieces = if seg.lo == seg.hi {
            let (tt, branch) = rm.eval(&seg.lo)?;
            vec![crate::skew::RayPiece {
                lo: seg.lo.clone(),
                hi: seg.hi.clone(),
                slope: Rat::zero(),
                intercept: tt,
                branch,
            }]
        } else {
            rm.pieces(&seg.lo, &seg.hi)?
        };
        let mut out = Vec::new();
        for p in pieces {
            let lo_open = seg.lo_open && p.lo == seg.lo;
            let hi_open = seg.hi_open && p.hi == seg.hi;
            let (t_lo, t_hi) = (&p.slope * &p.lo + &p.intercept, &p.slope * &p.hi + &p.intercept);
            let (lo, lo_open, hi, hi_open) =
                if p.slope < Rat::zero() { (t_hi, hi_open, t_lo, lo_open) } else { (t_lo, lo_open, t_hi, hi_open) };
            let centre = rm.branch_centre(p.branch, &(&hi + Rat::one()))?;
            let centre = PuiseuxPoly::exact(centre.terms().iter().filter(|(e, _)| *e < hi).cloned());
            let back = if p.slope.is_zero() {
                let mid = Segment { lo: p.lo.clone(), hi: p.hi.clone(), lo_open, hi_open, ..seg.clone() }.interior();
                (Rat::zero(), seg.origin_parameter(&mid))
            } else {
                let a = &seg.back.0 / &p.slope;
                let b = &seg.back.1 - &a * &p.intercept;
                (a, b)
            };
            let img = Segment { fibre, centre, lo, lo_open, hi, hi_open, origin: seg.origin, back };
            if !img.is_empty() {
                out.push(img);
            }
        }
        Ok(out)
    }

    /// Pointwise orbits of evenly spaced parameters, used when symbolic tracking fails.
    fn sample_search(&self, j: usize, initial: &[Segment]) -> Result<Option<JWitness>> {
        for seg in initial {
            for k in 1..FALLBACK_SAMPLES {
                let t = &seg.lo + (&seg.hi - &seg.lo) * Rat::new(k.into(), FALLBACK_SAMPLES.into());
                let Ok(z) = TypeIIPoint::new(&seg.centre, t) else { continue };
                let (mut f, mut cur) = (j, z.clone());
                for step in 1..=self.cfg.horizon {
                    match self.chain.link(f).pushforward(&cur) {
                        Ok(img) => cur = img,
                        Err(_) => break,
                    }
                    f = self.chain.next(f);
                    if self.gammas[f].contains(&cur) {
                        let w = JWitness { fibre: j, point: z, steps: step, target: cur, region: None };
                        return Ok(Some(w));
                    }
                }
            }
        }
        Ok(None)
    }
}

fn is_toward_disk(u: &GammaDomain) -> bool {
    matches!(u, GammaDomain::Disk { direction: Some(Direction::Toward { .. }), .. })
}

/// Classifies one domain of `gammas[j]` with a fresh classifier.
pub fn classify_domain(
    u: &GammaDomain,
    j: usize,
    gammas: &[VertexSet],
    chain: &Chain,
    registry: &PersistentFDiskRegistry,
    cfg: &StabilizationConfig,
) -> Result<DomainClass> {
    Ok(Classifier::new(chain, gammas, registry, cfg)?.classify(j, u))
}
