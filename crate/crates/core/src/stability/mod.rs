//! Fatou/Julia classification of Gamma-domains, analytic stability of vertex sets along a
//! chain, and the two stabilisation loops.
//!
//! A Gamma-domain `U` over fibre `j` is an F-domain when no forward image of `U` meets the
//! vertex set; otherwise it is a J-domain. The first condition quantifies over all iterates, so
//! classifications are three-valued: verified F certificates, replayable J witnesses, or
//! `Unknown` once the horizon is exhausted.

mod classify;
mod minimal;
mod smooth;
mod wandering;

use std::fmt;

pub use classify::{classify_domain, Classifier};
pub use minimal::{minimal_stabilisation, MinimalOutcome, MinimalRun, TraceEntry};
pub use smooth::{
    check_registry_axioms, stabilize_smooth, AxiomViolation, PersistentFDiskRegistry, RegistryDisk, RoundRecord,
    Rule, RuleFiring, SmoothOutcome, SmoothRun,
};
pub use wandering::{wandering_julia_report, WanderingCertificate};

use crate::berkovich::{OpenDisk, TypeIIPoint};
use crate::error::Result;
use crate::skew::{Chain, DEFAULT_PROBE_CAP};
use crate::vertexset::{locate, GammaDomain, Location, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationConfig {
    /// Orbit length explored per classification and per rule walk.
    pub horizon: usize,
    pub max_rounds: usize,
    /// Multiplicity cap for the smooth hulls; defaults to the largest `g` of the input.
    pub m0: Option<u64>,
    pub probe_cap: usize,
    /// Segments tracked at once by the J-search.
    pub segment_cap: usize,
    /// Length of the ray segment explored inside a disk domain.
    pub disk_span: i64,
    /// Sample count for the folding-tree endpoint validation.
    pub folding_budget: usize,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        StabilizationConfig {
            horizon: 64,
            max_rounds: 32,
            m0: None,
            probe_cap: DEFAULT_PROBE_CAP,
            segment_cap: 64,
            disk_span: 4,
            folding_budget: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FReason {
    MapsIntoPersistentFDisk,
    AttractingCycleCertificate,
    GoodReductionInvariance,
}

/// A path from a domain into the vertex set.
///
/// With `region = None`, `point` lies in the domain and its `steps`-th image is `target`. With
/// `region = Some(D)`, the domain is the disk `D` and its `steps`-th image disk contains `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JWitness {
    pub fibre: usize,
    pub point: TypeIIPoint,
    pub steps: usize,
    pub target: TypeIIPoint,
    pub region: Option<OpenDisk>,
}

impl JWitness {
    /// Re-runs the witness path against `gammas`.
    pub fn replay(&self, chain: &Chain, gammas: &[VertexSet]) -> Result<bool> {
        let f = chain.fibre_after(self.fibre, self.steps);
        if !gammas[f].contains(&self.target) {
            return Ok(false);
        }
        match &self.region {
            None => Ok(chain.pushforward_chain(self.fibre, &self.point, self.steps)? == self.target),
            Some(d) => {
                let mut cur = d.clone();
                let mut j = self.fibre;
                for _ in 0..self.steps {
                    match chain.link(j).disk_image(&cur)? {
                        Some(img) => cur = img,
                        None => return Ok(false),
                    }
                    j = chain.next(j);
                }
                Ok(cur.contains_point(&self.target))
            }
        }
    }
}

impl fmt::Display for JWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.region {
            None => write!(f, "{} reaches {} after {} step(s)", self.point, self.target, self.steps),
            Some(d) => write!(
                f,
                "image disk of D({}, {}) contains {} after {} step(s)",
                d.centre(),
                d.t(),
                self.target,
                self.steps
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainClass {
    FCertified(FReason),
    JDomain(JWitness),
    Unknown { horizon: usize, note: Option<String> },
}

impl DomainClass {
    pub fn is_f(&self) -> bool {
        matches!(self, DomainClass::FCertified(_))
    }

    pub fn is_j(&self) -> bool {
        matches!(self, DomainClass::JDomain(_))
    }
}

impl fmt::Display for DomainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainClass::FCertified(r) => write!(f, "F ({:?})", r),
            DomainClass::JDomain(w) => write!(f, "J ({})", w),
            DomainClass::Unknown { horizon, note: None } => write!(f, "unknown (horizon {})", horizon),
            DomainClass::Unknown { horizon, note: Some(n) } => write!(f, "unknown (horizon {}; {})", horizon, n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    StableCertified,
    DestabilisingFound,
    Inconclusive,
}

impl Verdict {
    /// Process exit code used by the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::StableCertified => 0,
            Verdict::DestabilisingFound => 3,
            Verdict::Inconclusive => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Landing {
    InGamma,
    Domain { domain: GammaDomain, class: DomainClass },
    Failed(String),
}

/// Where the image of one vertex lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    pub fibre: usize,
    pub point: TypeIIPoint,
    pub image: Option<TypeIIPoint>,
    pub landing: Landing,
}

/// A destabilising vertex: its image lies in a J-domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub fibre: usize,
    pub point: TypeIIPoint,
    pub image: TypeIIPoint,
    pub domain: GammaDomain,
    pub path: JWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub points: Vec<PointReport>,
    /// Every link is simple, so the smooth stabilisation guarantees apply.
    pub simple_links: bool,
}

impl StabilityReport {
    /// The witnesses in the language of surfaces: vertices are exceptional curves.
    pub fn surface_translation(&self, chain: &Chain) -> Vec<String> {
        self.witnesses
            .iter()
            .map(|w| {
                format!(
                    "the curve E[{}] over fibre {} is destabilising: it is contracted into {} over fibre {}, \
                     whose orbit meets E[{}] after {} more step(s)",
                    w.point,
                    chain.label(w.fibre),
                    w.domain,
                    chain.label(chain.next(w.fibre)),
                    w.path.target,
                    w.path.steps
                )
            })
            .collect()
    }

    pub fn to_text(&self, chain: &Chain) -> String {
        let mut s = format!("verdict: {:?}\n", self.verdict);
        if !self.simple_links {
            s.push_str("note: some link is not simple; smooth stabilisation guarantees do not apply\n");
        }
        for p in &self.points {
            let label = chain.label(p.fibre);
            match (&p.image, &p.landing) {
                (Some(img), Landing::InGamma) => s.push_str(&format!("[{}] {} -> {} (vertex)\n", label, p.point, img)),
                (Some(img), Landing::Domain { domain, class }) => {
                    s.push_str(&format!("[{}] {} -> {} in {}: {}\n", label, p.point, img, domain, class))
                }
                (_, Landing::Failed(e)) => s.push_str(&format!("[{}] {}: failed: {}\n", label, p.point, e)),
                (None, _) => s.push_str(&format!("[{}] {}: no image\n", label, p.point)),
            }
        }
        for line in self.surface_translation(chain) {
            s.push_str(&format!("surface: {}\n", line));
        }
        s
    }

    /// Line-oriented `key = value` records; replay lines give a point literal and a step count.
    pub fn to_structured(&self, chain: &Chain) -> String {
        let mut s = format!("verdict = {:?}\nsimple_links = {}\n", self.verdict, self.simple_links);
        for (i, p) in self.points.iter().enumerate() {
            s.push_str(&format!("point.{}.fibre = {}\n", i, chain.label(p.fibre)));
            s.push_str(&format!("point.{}.vertex = {}\n", i, p.point));
            if let Some(img) = &p.image {
                s.push_str(&format!("point.{}.image = {}\n", i, img));
            }
            match &p.landing {
                Landing::InGamma => s.push_str(&format!("point.{}.landing = vertex\n", i)),
                Landing::Domain { domain, class } => {
                    s.push_str(&format!("point.{}.domain = {}\n", i, domain));
                    s.push_str(&format!("point.{}.class = {}\n", i, class));
                }
                Landing::Failed(e) => s.push_str(&format!("point.{}.error = {}\n", i, e)),
            }
        }
        for (i, w) in self.witnesses.iter().enumerate() {
            s.push_str(&format!("witness.{}.vertex = {}\n", i, w.point));
            s.push_str(&format!("witness.{}.fibre = {}\n", i, chain.label(w.fibre)));
            s.push_str(&format!("witness.{}.image = {}\n", i, w.image));
            s.push_str(&format!("witness.{}.replay.point = {}\n", i, w.path.point));
            s.push_str(&format!("witness.{}.replay.fibre = {}\n", i, chain.label(w.path.fibre)));
            s.push_str(&format!("witness.{}.replay.steps = {}\n", i, w.path.steps));
            s.push_str(&format!("witness.{}.replay.target = {}\n", i, w.path.target));
        }
        s
    }
}

fn check(cls: &Classifier<'_>) -> StabilityReport {
    let chain = cls.chain();
    let gammas = cls.gammas();
    let mut points = Vec::new();
    let mut witnesses = Vec::new();
    for (j, g) in gammas.iter().enumerate() {
        let next = chain.next(j);
        for z in g.iter() {
            let image = match chain.link(j).pushforward(z) {
                Ok(img) => img,
                Err(e) => {
                    points.push(PointReport { fibre: j, point: z.clone(), image: None, landing: Landing::Failed(e.to_string()) });
                    continue;
                }
            };
            if gammas[next].contains(&image) {
                points.push(PointReport { fibre: j, point: z.clone(), image: Some(image), landing: Landing::InGamma });
                continue;
            }
            let landing = match locate_in(&gammas[next], &image) {
                Ok(domain) => {
                    let class = cls.classify(next, &domain);
                    if let DomainClass::JDomain(path) = &class {
                        witnesses.push(Witness {
                            fibre: j,
                            point: z.clone(),
                            image: image.clone(),
                            domain: domain.clone(),
                            path: path.clone(),
                        });
                    }
                    Landing::Domain { domain, class }
                }
                Err(e) => Landing::Failed(e.to_string()),
            };
            points.push(PointReport { fibre: j, point: z.clone(), image: Some(image), landing });
        }
    }
    let blocked = points.iter().any(|p| match &p.landing {
        Landing::InGamma => false,
        Landing::Domain { class, .. } => !class.is_f(),
        Landing::Failed(_) => true,
    });
    let verdict = if !witnesses.is_empty() {
        Verdict::DestabilisingFound
    } else if blocked {
        Verdict::Inconclusive
    } else {
        Verdict::StableCertified
    };
    StabilityReport { verdict, witnesses, points, simple_links: chain.all_simple() }
}

/// The domain of the complement of a nonempty vertex set containing a point outside it.
pub(crate) fn locate_in(gamma: &VertexSet, z: &TypeIIPoint) -> Result<GammaDomain> {
    match locate(z, gamma)? {
        Location::Domain(d) => Ok(d),
        Location::InGamma(p) => Err(crate::error::Error::Precondition(format!("{} is a vertex", p))),
    }
}

/// Vertices whose image lies in a J-domain, with their replayable paths.
pub fn destabilising_points(
    gammas: &[VertexSet],
    chain: &Chain,
    cfg: &StabilizationConfig,
) -> Result<Vec<Witness>> {
    Ok(is_analytically_stable(gammas, chain, cfg)?.witnesses)
}

pub fn is_analytically_stable(
    gammas: &[VertexSet],
    chain: &Chain,
    cfg: &StabilizationConfig,
) -> Result<StabilityReport> {
    is_analytically_stable_with(gammas, chain, &PersistentFDiskRegistry::default(), cfg)
}

/// As [`is_analytically_stable`], accepting registry disks as F certificates.
pub fn is_analytically_stable_with(
    gammas: &[VertexSet],
    chain: &Chain,
    registry: &PersistentFDiskRegistry,
    cfg: &StabilizationConfig,
) -> Result<StabilityReport> {
    let cls = Classifier::new(chain, gammas, registry, cfg)?;
    Ok(check(&cls))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berkovich::parse_point;
    use crate::deffile::{parse_definition, DefinitionFile};
    use crate::rat::rat;
    use crate::vertexset::parse_vertex_set;

    fn fixture(name: &str) -> DefinitionFile {
        let text = match name {
            "thm6" => include_str!("../../fixtures/thm6.skew"),
            "thmB" => include_str!("../../fixtures/thmB.skew"),
            "xy2" => include_str!("../../fixtures/xy2.skew"),
            _ => include_str!("../../fixtures/goodred.skew"),
        };
        parse_definition(text).unwrap()
    }

    fn cfg() -> StabilizationConfig {
        StabilizationConfig { max_rounds: 6, ..Default::default() }
    }

    #[test]
    fn thm6_annulus_is_j() {
        let d = fixture("thm6");
        let report = is_analytically_stable(&d.gammas(), &d.chain, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::DestabilisingFound);
        assert_eq!(report.witnesses.len(), 1);
        let w = &report.witnesses[0];
        assert_eq!(w.point, parse_point("zeta(0, 1)").unwrap());
        assert_eq!(w.image, parse_point("zeta(0, 1/2)").unwrap());
        assert_eq!(w.path.point, parse_point("zeta(0, 2/3)").unwrap());
        assert_eq!(w.path.steps, 1);
        assert_eq!(w.path.target, parse_point("zeta(0, 1)").unwrap());
        assert!(w.path.replay(&d.chain, &d.gammas()).unwrap());
        assert_eq!(report.surface_translation(&d.chain).len(), 1);
    }

    #[test]
    fn thm6_gauss_alone_is_stable() {
        let d = fixture("thm6");
        let g = vec![parse_vertex_set("zeta(0, 0)").unwrap()];
        assert!(destabilising_points(&g, &d.chain, &cfg()).unwrap().is_empty());
    }

    #[test]
    fn thm6_minimal_stabilisation_hits_cap() {
        let d = fixture("thm6");
        let run = minimal_stabilisation(&d.gammas(), &d.chain, &cfg()).unwrap();
        assert_eq!(run.outcome, MinimalOutcome::RoundCapExceeded);
        let ts = run.orbit_t_values();
        assert_eq!(ts[..5], [rat(1, 1), rat(1, 2), rat(3, 4), rat(7, 8), rat(11, 16)]);
    }

    #[test]
    fn xy2_disk_toward_zero_is_attracting() {
        let d = fixture("xy2");
        let gauss = TypeIIPoint::gauss();
        let dir = crate::berkovich::direction_toward(&gauss, &crate::puiseux::PuiseuxPoly::zero()).unwrap();
        let u = GammaDomain::Disk { boundary: gauss, direction: Some(dir) };
        let class =
            classify_domain(&u, 0, &d.gammas(), &d.chain, &PersistentFDiskRegistry::default(), &cfg()).unwrap();
        assert_eq!(class, DomainClass::FCertified(FReason::AttractingCycleCertificate));
    }

    #[test]
    fn xy2_is_stable_and_stabilize_terminates() {
        let d = fixture("xy2");
        let run = minimal_stabilisation(&d.gammas(), &d.chain, &cfg()).unwrap();
        assert_eq!((run.outcome, run.rounds), (MinimalOutcome::Stable, 0));
        let run = stabilize_smooth(&d.gammas(), &d.chain, &cfg()).unwrap();
        assert_eq!(run.outcome, SmoothOutcome::Terminated);
        assert_eq!(run.report.verdict, Verdict::StableCertified);
        assert!(!run.registry.is_empty());
        assert!(run.trace.iter().all(|r| r.violations.is_empty()));
        let fired: Vec<Rule> = run.trace.iter().flat_map(|r| r.firings.iter().map(|f| f.rule)).collect();
        assert!(fired.contains(&Rule::AttractingBasin));
        let independent = is_analytically_stable(&run.gammas, &d.chain, &cfg()).unwrap();
        assert_eq!(independent.verdict, Verdict::StableCertified);
    }

    #[test]
    fn good_reduction_gauss() {
        let d = fixture("goodred");
        let g = vec![parse_vertex_set("zeta(0, 0)").unwrap()];
        let report = is_analytically_stable(&g, &d.chain, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::StableCertified);
        let run = stabilize_smooth(&g, &d.chain, &cfg()).unwrap();
        assert_eq!(run.outcome, SmoothOutcome::Terminated);
        assert_eq!(run.trace.len(), 1);
        let run = minimal_stabilisation(&d.gammas(), &d.chain, &cfg()).unwrap();
        assert_eq!(run.outcome, MinimalOutcome::Stable);
    }

    #[test]
    fn wandering_certificates() {
        let d = fixture("thm6");
        let z = parse_point("zeta(0, 1)").unwrap();
        let c = wandering_julia_report(&d.chain, 0, &z, &cfg()).unwrap();
        assert_eq!((c.fixed_point.clone(), c.multiplier.clone()), (rat(4, 5), rat(-3, 2)));
        assert_eq!(c.orbit_prefix, vec![rat(1, 1), rat(1, 2), rat(3, 4), rat(7, 8), rat(11, 16)]);

        let b = fixture("thmB");
        let c = wandering_julia_report(&b.chain, 0, &TypeIIPoint::gauss(), &cfg()).unwrap();
        assert_eq!(c.transported, z);
        assert_eq!(c.transport_steps, 1);

        let g = fixture("goodred");
        assert!(matches!(
            wandering_julia_report(&g.chain, 0, &z, &cfg()),
            Err(crate::error::Error::NotApplicable(_))
        ));
    }
}
