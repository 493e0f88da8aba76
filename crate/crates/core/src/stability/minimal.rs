//! The minimal stabilisation loop: blow up the images of destabilising vertices.

use super::{is_analytically_stable, StabilityReport, StabilizationConfig, Verdict};
use crate::berkovich::TypeIIPoint;
use crate::error::Result;
use crate::rat::Rat;
use crate::skew::Chain;
use crate::vertexset::VertexSet;

/// One added vertex: `added` over fibre `next(fibre)` is the image of `destabilising`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub round: usize,
    pub fibre: usize,
    pub destabilising: TypeIIPoint,
    pub added: TypeIIPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalOutcome {
    Stable,
    RoundCapExceeded,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalRun {
    pub gammas: Vec<VertexSet>,
    pub report: StabilityReport,
    pub trace: Vec<TraceEntry>,
    pub outcome: MinimalOutcome,
    /// Rounds that added points.
    pub rounds: usize,
}

impl MinimalRun {
    /// Radius exponents along the blown-up orbit: the first destabilising vertex, then every
    /// added point in order.
    pub fn orbit_t_values(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self.trace.first().map(|e| e.destabilising.t().clone()).into_iter().collect();
        out.extend(self.trace.iter().map(|e| e.added.t().clone()));
        out
    }
}

pub fn minimal_stabilisation(gammas: &[VertexSet], chain: &Chain, cfg: &StabilizationConfig) -> Result<MinimalRun> {
    let mut cur = gammas.to_vec();
    let mut trace = Vec::new();
    for round in 0..=cfg.max_rounds {
        let report = is_analytically_stable(&cur, chain, cfg)?;
        let outcome = match report.verdict {
            Verdict::StableCertified => Some(MinimalOutcome::Stable),
            Verdict::Inconclusive => Some(MinimalOutcome::Inconclusive),
            Verdict::DestabilisingFound if round == cfg.max_rounds => Some(MinimalOutcome::RoundCapExceeded),
            Verdict::DestabilisingFound => None,
        };
        if let Some(outcome) = outcome {
            return Ok(MinimalRun { gammas: cur, report, trace, outcome, rounds: round });
        }
        for w in &report.witnesses {
            let next = chain.next(w.fibre);
            if cur[next].insert(w.image.clone()) {
                trace.push(TraceEntry {
                    round,
                    fibre: w.fibre,
                    destabilising: w.point.clone(),
                    added: w.image.clone(),
                });
            }
        }
    }
    unreachable!("the final round always returns")
}
