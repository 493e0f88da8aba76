//! Evidence that a vertex cannot be stabilised: an interval model on its centre ray in which
//! its radius parameter has an infinite orbit inside an expanding invariant interval around a
//! repelling fixed point.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::StabilizationConfig;
use crate::berkovich::TypeIIPoint;
use crate::error::{Error, Result};
use crate::intervalmap::{
    detect_preperiodic, fixed_points, induce_with, iterate, FixedPoint, OrbitCertificate, PLMap, Stability,
    DEFAULT_SEED_SAMPLES,
};
use crate::rat::{int, Ext, Rat};
use crate::skew::Chain;

/// Iterations of the hull-and-image step used to find an invariant interval.
const INVARIANCE_ROUNDS: usize = 8;
/// Orbit length used for the orbit certificate and the initial interval.
const ORBIT_WINDOW: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WanderingCertificate {
    pub fibre: usize,
    pub point: TypeIIPoint,
    /// The point after transport along the tail into the periodic part of the chain.
    pub transported: TypeIIPoint,
    pub transported_fibre: usize,
    pub transport_steps: usize,
    /// Return map of the periodic part on the ray of the transported centre.
    pub map: PLMap,
    pub interval: (Rat, Rat),
    pub fixed_point: Rat,
    pub multiplier: Rat,
    pub orbit: OrbitCertificate,
    pub orbit_prefix: Vec<Rat>,
}

impl fmt::Display for WanderingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertex: {} over fibre {}", self.point, self.fibre)?;
        writeln!(
            f,
            "transported: {} over fibre {} after {} step(s)",
            self.transported, self.transported_fibre, self.transport_steps
        )?;
        write!(f, "return map:\n{}", self.map)?;
        writeln!(f, "invariant interval: [{}, {}]", self.interval.0, self.interval.1)?;
        writeln!(f, "repelling fixed point: t = {} with multiplier {}", self.fixed_point, self.multiplier)?;
        let prefix: Vec<String> = self.orbit_prefix.iter().map(|t| t.to_string()).collect();
        writeln!(f, "orbit: {}, ...", prefix.join(", "))?;
        match &self.orbit {
            OrbitCertificate::InfiniteByDenominatorGrowth { prefix, certificate } => writeln!(
                f,
                "infinite orbit: denominators double for {} steps from t = {} (after {} steps)",
                certificate.exponents.len() - 1,
                certificate.start,
                prefix.len()
            ),
            other => writeln!(f, "orbit certificate: {:?}", other),
        }
    }
}

fn not_applicable<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::NotApplicable(msg.into()))
}

/// `[min, max]` of the map over `[lo, hi]`.
fn image_hull(map: &PLMap, lo: &Rat, hi: &Rat) -> Option<(Rat, Rat)> {
    let mut pts = vec![lo.clone(), hi.clone()];
    pts.extend(map.breakpoints.iter().filter(|b| *b > lo && *b < hi).cloned());
    let vals: Option<Vec<Rat>> = pts.iter().map(|t| map.eval(t)).collect();
    let vals = vals?;
    Some((vals.iter().min()?.clone(), vals.iter().max()?.clone()))
}

/// The smallest interval containing `orbit` that the map sends into itself, if the hull and
/// image iteration settles.
fn invariant_interval(map: &PLMap, orbit: &[Rat]) -> Option<(Rat, Rat)> {
    let (mut lo, mut hi) = (orbit.iter().min()?.clone(), orbit.iter().max()?.clone());
    for _ in 0..INVARIANCE_ROUNDS {
        let (a, b) = image_hull(map, &lo, &hi)?;
        if a >= lo && b <= hi {
            return Some((lo, hi));
        }
        lo = lo.min(a);
        hi = hi.max(b);
    }
    None
}

/// Builds the certificate for `z` over fibre `j`, or reports why none applies.
pub fn wandering_julia_report(
    chain: &Chain,
    j: usize,
    z: &TypeIIPoint,
    cfg: &StabilizationConfig,
) -> Result<WanderingCertificate> {
    let steps = chain.tail().saturating_sub(j);
    let transported = chain.pushforward_chain(j, z, steps)?;
    let fibre = chain.fibre_after(j, steps);
    let period = chain.period();
    let t = transported.t().clone();
    let lo = std::cmp::min(Rat::zero(), t.clone());
    let hi = std::cmp::max(&t * int(2), &t + Rat::one());
    let ret = |p: &TypeIIPoint| chain.pushforward_chain(fibre, p, period);
    let map = match induce_with(&ret, transported.centre(), &lo, &Ext::Fin(hi), DEFAULT_SEED_SAMPLES) {
        Ok(m) => m,
        Err(e) => return not_applicable(format!("no interval model on the ray of {}: {}", transported, e)),
    };
    let prefix = iterate(&map, &t, ORBIT_WINDOW).points;
    let Some(interval) = invariant_interval(&map, &prefix) else {
        return not_applicable("no invariant interval around the orbit");
    };
    let orbit = match map.restrict(&interval.0, &interval.1) {
        Ok(inner) => detect_preperiodic(&inner, &t, ORBIT_WINDOW.max(cfg.horizon)),
        Err(_) => return not_applicable("the orbit does not move"),
    };
    if !matches!(orbit, OrbitCertificate::InfiniteByDenominatorGrowth { .. }) {
        return not_applicable(format!("the orbit of t = {} is not certified infinite", t));
    }
    let inside = |x: &Rat| *x >= interval.0 && *x <= interval.1;
    let Some((fixed_point, multiplier)) = fixed_points(&map).into_iter().find_map(|fp| match fp {
        FixedPoint::Point { t, slope, kind: Stability::Repelling } if inside(&t) => Some((t, slope)),
        _ => None,
    }) else {
        return not_applicable("no repelling fixed point in the invariant interval");
    };
    let expanding = (0..map.pieces.len()).all(|i| {
        let (a, b) = map.piece_range(i);
        let meets = b.fin().is_none_or(|b| *b > interval.0) && a < interval.1;
        !meets || map.pieces[i].slope.abs() > Rat::one()
    });
    if !expanding {
        return not_applicable("the map is not expanding on the invariant interval");
    }
    Ok(WanderingCertificate {
        fibre: j,
        point: z.clone(),
        transported,
        transported_fibre: fibre,
        transport_steps: steps,
        map,
        interval,
        fixed_point,
        multiplier,
        orbit,
        orbit_prefix: prefix.into_iter().take(5).collect(),
    })
}
