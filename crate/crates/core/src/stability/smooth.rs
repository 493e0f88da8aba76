//! Smooth stabilisation: alternate smooth hulls with orbit rules, recording persistent F-disks.

use std::fmt;

use super::{is_analytically_stable_with, StabilityReport, StabilizationConfig};
use crate::berkovich::{lt, OpenDisk, TypeIIPoint};
use crate::error::{Error, Result};
use crate::rat::{lcm, Rat};
use crate::skew::Chain;
use crate::vertexset::{n_convex_hull, smooth_n_convex_hull, VertexSet};

/// Cycles whose radii need a finer grid than this are left to the other rules.
const MAX_BASIN_DENOM: u64 = 1 << 16;
/// Radii tried per attracting-basin attempt.
const RADIUS_CANDIDATES: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryDisk {
    pub fibre: usize,
    pub disk: OpenDisk,
    /// Round in which the disk was created.
    pub round: usize,
}

impl fmt::Display for RegistryDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D({}, {}) at {} over fibre {} (round {})",
            self.disk.centre(),
            self.disk.t(),
            self.disk.boundary(),
            self.fibre,
            self.round
        )
    }
}

/// Open disks whose forward orbits stay inside the registry and away from the vertex sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PersistentFDiskRegistry {
    disks: Vec<RegistryDisk>,
}

impl PersistentFDiskRegistry {
    pub fn disks(&self) -> &[RegistryDisk] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn contains(&self, fibre: usize, d: &OpenDisk) -> bool {
        self.disks.iter().any(|r| r.fibre == fibre && r.disk == *d)
    }

    pub fn containing(&self, fibre: usize, z: &TypeIIPoint) -> Option<&RegistryDisk> {
        self.disks.iter().find(|r| r.fibre == fibre && r.disk.contains_point(z))
    }

    fn insert(&mut self, fibre: usize, disk: OpenDisk, round: usize) -> bool {
        if self.contains(fibre, &disk) {
            return false;
        }
        self.disks.push(RegistryDisk { fibre, disk, round });
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    BoundaryOutsideGamma { fibre: usize, disk: OpenDisk },
    NotGeneric { fibre: usize, disk: OpenDisk, m: u64, g: u64 },
    MeetsGamma { fibre: usize, disk: OpenDisk, point: TypeIIPoint },
    NotForwardInvariant { fibre: usize, disk: OpenDisk },
    Removed { fibre: usize, disk: OpenDisk },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |d: &OpenDisk| format!("D({}, {})", d.centre(), d.t());
        match self {
            AxiomViolation::BoundaryOutsideGamma { fibre, disk } => {
                write!(f, "(i) boundary of {} over fibre {} is not a vertex", show(disk), fibre)
            }
            AxiomViolation::NotGeneric { fibre, disk, m, g } => {
                write!(f, "(ii) {} over fibre {} has m = {} but boundary g = {}", show(disk), fibre, m, g)
            }
            AxiomViolation::MeetsGamma { fibre, disk, point } => {
                write!(f, "(iii) {} over fibre {} contains vertex {}", show(disk), fibre, point)
            }
            AxiomViolation::NotForwardInvariant { fibre, disk } => {
                write!(f, "(iv) image of {} over fibre {} is not inside a registry disk", show(disk), fibre)
            }
            AxiomViolation::Removed { fibre, disk } => write!(f, "(v) {} over fibre {} was removed", show(disk), fibre),
        }
    }
}

/// Checks the five registry axioms against the current vertex sets; `previous` is the registry
/// of the preceding round.
pub fn check_registry_axioms(
    registry: &PersistentFDiskRegistry,
    previous: Option<&PersistentFDiskRegistry>,
    gammas: &[VertexSet],
    chain: &Chain,
) -> Result<Vec<AxiomViolation>> {
    let mut out = Vec::new();
    for r in registry.disks() {
        let (fibre, disk) = (r.fibre, r.disk.clone());
        let b = disk.boundary();
        if !gammas[fibre].contains(&b) {
            out.push(AxiomViolation::BoundaryOutsideGamma { fibre, disk: disk.clone() });
        }
        if disk.m() != b.g() {
            out.push(AxiomViolation::NotGeneric { fibre, disk: disk.clone(), m: disk.m(), g: b.g() });
        }
        if let Some(p) = gammas[fibre].iter().find(|p| disk.contains_point(p)) {
            out.push(AxiomViolation::MeetsGamma { fibre, disk: disk.clone(), point: p.clone() });
        }
        let next = chain.next(fibre);
        let invariant = match chain.link(fibre).disk_image(&disk)? {
            Some(img) => registry.disks().iter().any(|o| o.fibre == next && (o.disk == img || o.disk.contains_disk(&img))),
            None => false,
        };
        if !invariant {
            out.push(AxiomViolation::NotForwardInvariant { fibre, disk });
        }
    }
    if let Some(prev) = previous {
        for r in prev.disks() {
            if !registry.contains(r.fibre, &r.disk) {
                out.push(AxiomViolation::Removed { fibre: r.fibre, disk: r.disk.clone() });
            }
        }
    }
    Ok(out)
}

/// The orbit rules, tried in this order at every orbit step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// (i) the orbit enters a registry disk.
    EntersRegistryDisk,
    /// (ii) the orbit reaches a vertex.
    HitsVertex,
    /// (iii) the orbit is preperiodic.
    Preperiodic,
    /// (iv) the orbit converges to an attracting classical cycle.
    AttractingBasin,
    /// No rule applied within the horizon.
    Unresolved,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::EntersRegistryDisk => "(i) enters registry disk",
            Rule::HitsVertex => "(ii) hits vertex",
            Rule::Preperiodic => "(iii) preperiodic",
            Rule::AttractingBasin => "(iv) attracting basin",
            Rule::Unresolved => "unresolved",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleFiring {
    pub fibre: usize,
    pub point: TypeIIPoint,
    pub rule: Rule,
    /// Orbit step at which the rule fired.
    pub step: usize,
    pub added: Vec<(usize, TypeIIPoint)>,
    pub disks: Vec<(usize, OpenDisk)>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub hull_added: Vec<(usize, TypeIIPoint)>,
    pub firings: Vec<RuleFiring>,
    pub violations: Vec<AxiomViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothOutcome {
    /// A round added nothing.
    Terminated,
    RoundCapExceeded,
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothRun {
    pub gammas: Vec<VertexSet>,
    pub registry: PersistentFDiskRegistry,
    pub report: StabilityReport,
    pub seed: Vec<(usize, TypeIIPoint)>,
    pub trace: Vec<RoundRecord>,
    pub outcome: SmoothOutcome,
}

struct RuleContext<'a> {
    chain: &'a Chain,
    gammas: &'a [VertexSet],
    registry: &'a PersistentFDiskRegistry,
    pending: &'a [(usize, TypeIIPoint)],
    cfg: &'a StabilizationConfig,
}

fn step(chain: &Chain, orbit: &mut Vec<(usize, TypeIIPoint)>) -> Result<()> {
    let (f, p) = orbit.last().unwrap();
    let img = chain.link(*f).pushforward(p)?;
    orbit.push((chain.next(*f), img));
    Ok(())
}

impl RuleContext<'_> {
    fn apply(&self, j: usize, z: &TypeIIPoint) -> RuleFiring {
        let mut firing = RuleFiring {
            fibre: j,
            point: z.clone(),
            rule: Rule::Unresolved,
            step: 0,
            added: Vec::new(),
            disks: Vec::new(),
            note: None,
        };
        if let Err(e) = self.walk(&mut firing) {
            firing.rule = Rule::Unresolved;
            firing.note = Some(e.to_string());
        }
        firing
    }

    fn walk(&self, firing: &mut RuleFiring) -> Result<()> {
        let mut orbit = vec![(firing.fibre, firing.point.clone())];
        for i in 1..=self.cfg.horizon {
            step(self.chain, &mut orbit)?;
            let (f, p) = orbit[i].clone();
            let rule = if self.registry.containing(f, &p).is_some() {
                Some(Rule::EntersRegistryDisk)
            } else if self.gammas[f].contains(&p) {
                Some(Rule::HitsVertex)
            } else if orbit[..i].contains(&(f, p.clone())) {
                Some(Rule::Preperiodic)
            } else {
                None
            };
            if let Some(rule) = rule {
                firing.rule = rule;
                firing.step = i;
                firing.added = orbit[1..i].to_vec();
                return Ok(());
            }
            if let Some(k) = orbit[..i].iter().position(|(fk, pk)| *fk == f && lt(&p, pk)) {
                if let Some((mut added, disks)) = self.attracting_basin(&mut orbit, k, i)? {
                    added.retain(|(f, z)| !self.gammas[*f].contains(z));
                    firing.rule = Rule::AttractingBasin;
                    firing.step = i;
                    firing.added = added;
                    firing.disks = disks;
                    orbit.truncate(i + 1);
                    return Ok(());
                }
                orbit.truncate(i + 1);
            }
        }
        firing.step = self.cfg.horizon;
        Ok(())
    }

    /// Disks `D_r = D(c_r, s_r)` around the cycle traced by `orbit[k..i]`, with `c_r` taken from
    /// the deepest orbit point of each residue class and the smallest admissible radii.
    #[allow(clippy::type_complexity)]
    fn attracting_basin(
        &self,
        orbit: &mut Vec<(usize, TypeIIPoint)>,
        k: usize,
        i: usize,
    ) -> Result<Option<(Vec<(usize, TypeIIPoint)>, Vec<(usize, OpenDisk)>)>> {
        let p = i - k;
        while orbit.len() < i + 2 * p + 1 {
            step(self.chain, orbit)?;
        }
        let last = orbit.len() - 1;
        if orbit[k..].iter().any(|(_, z)| z.t().denom() > &MAX_BASIN_DENOM.into() || z.m() > MAX_BASIN_DENOM) {
            return Ok(None);
        }
        let mm = orbit[k..].iter().fold(1, |a, (_, z)| lcm(a, z.g()));
        if mm > MAX_BASIN_DENOM {
            return Ok(None);
        }
        let step_size = Rat::new(1.into(), (mm as i64).into());
        let classes: Vec<(usize, TypeIIPoint, Rat)> = (0..p)
            .map(|r| {
                let deep = last - (last - k - r) % p;
                (orbit[k + r].0, orbit[deep].1.clone(), orbit[k + r].1.t().clone())
            })
            .collect();
        'radius: for delta in 0..RADIUS_CANDIDATES.min(4 * mm) as i64 {
            let offset = &step_size * Rat::from_integer(delta.into());
            let mut disks = Vec::new();
            for (fibre, deep, base) in &classes {
                let s = base + &offset;
                if s >= *deep.t() {
                    break 'radius;
                }
                let d = OpenDisk::new(deep.centre(), s)?;
                if d.m() != d.boundary().g() {
                    continue 'radius;
                }
                let meets = self.gammas[*fibre].iter().chain(self.pending.iter().filter(|(f, _)| f == fibre).map(|(_, z)| z));
                if meets.into_iter().any(|z| d.contains_point(z)) {
                    continue 'radius;
                }
                disks.push((*fibre, d));
            }
            for r in 0..p {
                let Some(img) = self.chain.link(disks[r].0).disk_image(&disks[r].1)? else {
                    continue 'radius;
                };
                let next = &disks[(r + 1) % p].1;
                if *next != img && !next.contains_disk(&img) {
                    continue 'radius;
                }
            }
            let inside = |(f, z): &(usize, TypeIIPoint)| disks.iter().any(|(fd, d)| fd == f && d.contains_point(z));
            let Some(entry) = orbit.iter().position(inside) else {
                continue;
            };
            let mut added: Vec<(usize, TypeIIPoint)> = orbit[1..entry.max(1)].to_vec();
            added.extend(disks.iter().map(|(f, d)| (*f, d.boundary())));
            return Ok(Some((added, disks)));
        }
        Ok(None)
    }
}

fn max_g(gammas: &[VertexSet]) -> u64 {
    gammas.iter().map(|g| g.max_g()).max().unwrap_or(1).max(1)
}

/// Runs the smooth stabilisation recursion from `gammas` (one vertex set per fibre).
pub fn stabilize_smooth(gammas: &[VertexSet], chain: &Chain, cfg: &StabilizationConfig) -> Result<SmoothRun> {
    if gammas.len() != chain.len() || gammas.iter().any(|g| g.is_empty()) {
        return Err(Error::Precondition("one nonempty vertex set per fibre is required".into()));
    }
    let m0 = cfg.m0.unwrap_or_else(|| max_g(gammas));
    if let Some(z) = gammas.iter().flat_map(|g| g.iter()).find(|z| z.g() > m0) {
        return Err(Error::Precondition(format!("{} has g = {} above the cap {}", z, z.g(), m0)));
    }
    let mut cur: Vec<VertexSet> = gammas.to_vec();
    let mut seed = Vec::new();
    for (j, g) in cur.iter_mut().enumerate() {
        let link = chain.link(j);
        if !link.is_simple() {
            continue;
        }
        let Ok(tree) = link.folding_tree(cfg.folding_budget) else { continue };
        let ends: VertexSet = tree.endpoints.into_iter().filter(|z| z.g() <= m0).collect();
        if ends.is_empty() {
            continue;
        }
        for z in n_convex_hull(&ends, m0)?.iter() {
            if g.insert(z.clone()) {
                seed.push((j, z.clone()));
            }
        }
    }

    let mut registry = PersistentFDiskRegistry::default();
    let mut previous = registry.clone();
    let mut trace = Vec::new();
    let mut outcome = SmoothOutcome::RoundCapExceeded;
    for round in 0..cfg.max_rounds {
        let mut tilde = Vec::with_capacity(cur.len());
        let mut hull_added = Vec::new();
        for (j, g) in cur.iter().enumerate() {
            let n = m0.max(g.max_g());
            let h = smooth_n_convex_hull(g, n)?;
            hull_added.extend(h.iter().filter(|z| !g.contains(z)).map(|z| (j, z.clone())));
            tilde.push(h);
        }
        let violations = check_registry_axioms(&registry, Some(&previous), &tilde, chain)?;
        let mut rec = RoundRecord { round, hull_added, firings: Vec::new(), violations };
        if !rec.violations.is_empty() {
            outcome = SmoothOutcome::Inconclusive(format!("registry axiom failed: {}", rec.violations[0]));
            trace.push(rec);
            cur = tilde;
            break;
        }
        previous = registry.clone();
        let mut pending: Vec<(usize, TypeIIPoint)> = Vec::new();
        let mut new_disks = false;
        let mut unresolved = None;
        for (j, g) in tilde.iter().enumerate() {
            for z in g.iter() {
                let ctx = RuleContext { chain, gammas: &tilde, registry: &registry, pending: &pending, cfg };
                let firing = ctx.apply(j, z);
                for (f, d) in &firing.disks {
                    new_disks |= registry.insert(*f, d.clone(), round);
                }
                for (f, p) in &firing.added {
                    if !tilde[*f].contains(p) && !pending.contains(&(*f, p.clone())) {
                        pending.push((*f, p.clone()));
                    }
                }
                if firing.rule == Rule::Unresolved && unresolved.is_none() {
                    unresolved = Some(format!("no rule applies to {} over fibre {}", z, chain.label(j)));
                }
                rec.firings.push(firing);
            }
        }
        trace.push(rec);
        let done = pending.is_empty() && !new_disks;
        let mut next = tilde.clone();
        for (f, p) in pending {
            next[f].insert(p);
        }
        if let Some(msg) = unresolved {
            outcome = SmoothOutcome::Inconclusive(msg);
            cur = tilde;
            break;
        }
        if done {
            outcome = SmoothOutcome::Terminated;
            cur = tilde;
            break;
        }
        cur = next;
    }
    let report = is_analytically_stable_with(&cur, chain, &registry, cfg)?;
    Ok(SmoothRun { gammas: cur, registry, report, seed, trace, outcome })
}
