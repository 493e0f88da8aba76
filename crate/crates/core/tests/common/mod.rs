//! Independent oracles shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use skewdyn::deffile::{parse_definition, DefinitionFile};
use skewdyn::puiseux::newton::{ypoly_eval, ypoly_shift};
use skewdyn::random::{random_centre, random_rat};
use skewdyn::rat::int;
use skewdyn::skew::SkewLocal;
use skewdyn::berkovich::{hyperbolic_distance, join, leq};
use skewdyn::{Ext, PuiseuxPoly, Rat, TypeIIPoint};

pub fn fixture(name: &str) -> DefinitionFile {
    let path = format!("{}/fixtures/{}.skew", env!("CARGO_MANIFEST_DIR"), name);
    parse_definition(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// The three bundled links with their names.
pub fn bundled_links() -> Vec<(&'static str, SkewLocal)> {
    let thmb = fixture("thmB");
    vec![
        ("thm6", fixture("thm6").chain.link(0).clone()),
        ("xy2", fixture("xy2").chain.link(0).clone()),
        ("thmB over 1", thmb.chain.link(0).clone()),
    ]
}

/// The bundled links whose base map is not superattracting and has leading coefficient 1, so
/// that every transported centre stays rational.
pub fn simple_links() -> Vec<(&'static str, SkewLocal)> {
    vec![
        ("xy2", fixture("xy2").chain.link(0).clone()),
        ("goodred", fixture("goodred").chain.link(0).clone()),
        ("thmB over 1", fixture("thmB").chain.link(0).clone()),
    ]
}

/// `v(y - w)` at `zeta(b, t)`: `min(v(b - w), t)`.
pub fn point_valuation(z: &TypeIIPoint, w: &PuiseuxPoly) -> Rat {
    let t = z.t();
    let d = &z.centre().trunc_lt(t) - &w.trunc_lt(t);
    match d.val_lower() {
        Ext::Fin(v) if v < *t => v,
        _ => t.clone(),
    }
}

/// Gauss valuation `min_i v(c_i) + i t` of a polynomial in `tau = y - a`, or `None` when the
/// coefficients are not known precisely enough to decide it.
fn gauss_valuation(coeffs: &[PuiseuxPoly], t: &Rat) -> Option<Rat> {
    let mut exact: Option<Rat> = None;
    let mut bound: Option<Rat> = None;
    for (i, c) in coeffs.iter().enumerate() {
        let shift = t * int(i as i64);
        match (c.val(), c.val_lower()) {
            (Ok(Ext::Inf), _) => {}
            (Ok(Ext::Fin(v)), _) => {
                let v = v + shift;
                exact = Some(exact.map_or(v.clone(), |e| e.min(v)));
            }
            (Err(_), Ext::Fin(p)) => {
                let p = p + shift;
                bound = Some(bound.map_or(p.clone(), |b| b.min(p)));
            }
            (Err(_), Ext::Inf) => unreachable!("an infinite precision series has a valuation"),
        }
    }
    match (exact, bound) {
        (Some(e), Some(b)) if e < b => Some(e),
        (Some(e), None) => Some(e),
        _ => None,
    }
}

/// The seminorm identity `v_xi(y - w) = scale * v_zeta(phi2 - w o phi1)` for one probe `w`
/// in the target coordinate, with `xi` the computed image of `z`.
pub fn seminorm_identity_holds(link: &SkewLocal, z: &TypeIIPoint, xi: &TypeIIPoint, w: &PuiseuxPoly) -> bool {
    let scale = link.scale_factor();
    let cap = (xi.t() + int(4)) / &scale + int(4);
    let pulled = w.compose(link.base().series(), &cap).expect("composition with the base germ");
    let shift = |f: &Vec<PuiseuxPoly>| ypoly_shift(f, z.centre(), &Ext::Inf);
    let (p, q) = (shift(link.num()), shift(link.den()));
    let n = p.len().max(q.len());
    let zero = PuiseuxPoly::zero();
    let diff: Vec<PuiseuxPoly> =
        (0..n).map(|i| p.get(i).unwrap_or(&zero) - &(&pulled * q.get(i).unwrap_or(&zero))).collect();
    let (Some(top), Some(bottom)) = (gauss_valuation(&diff, z.t()), gauss_valuation(&q, z.t())) else {
        return false;
    };
    point_valuation(xi, w) == (top - bottom) * scale
}

/// Probe functionals `y - w` around the image centre: truncations of it, perturbed.
pub fn random_probe<R: Rng>(rng: &mut R, xi: &TypeIIPoint) -> PuiseuxPoly {
    let depth = random_rat(rng, 4, -1, 3);
    let base = if depth > Rat::from_integer(0.into()) { xi.centre().trunc_lt(&depth).exactify() } else { PuiseuxPoly::zero() };
    &base + &random_centre(rng, 4, 2)
}

/// `phi2(x, b)` in the target coordinate to precision `target`, where `den_val` is the exact
/// valuation of the denominator at `b`.
fn classical_image(link: &SkewLocal, b: &PuiseuxPoly, den_val: &Rat, target: &Rat) -> Option<PuiseuxPoly> {
    let p = target / link.scale_factor() + int(1);
    let cap = &p + den_val.abs() * int(2) + int(2);
    let num = ypoly_eval(link.num(), b, &Ext::Fin(cap.clone()));
    let den = ypoly_eval(link.den(), b, &Ext::Fin(cap.clone()));
    num.div(&den, &p).and_then(|v| link.transport(&v, target)).ok()
}

/// The brute-force disk check. Classical points `a + c0 x^t + c x^s` (`s >= t`, `c0 != 0`) of
/// the closed disk of `z` are pushed through the fibre map one by one. Points in the residue
/// class of a pole of the map are skipped; every other image must lie in the closed disk of the
/// computed image, and at least two must sit at exactly its radius.
pub fn disk_oracle<R: Rng>(
    rng: &mut R,
    link: &SkewLocal,
    z: &TypeIIPoint,
    xi: &TypeIIPoint,
    probes: usize,
) -> Result<(), String> {
    let shifted_den = ypoly_shift(link.den(), z.centre(), &Ext::Inf);
    let Some(den_gauss) = gauss_valuation(&shifted_den, z.t()) else {
        return Err("denominator valuation undetermined".into());
    };
    let nonzero = |rng: &mut R| loop {
        let c = Rat::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=7).into());
        if !c.is_zero() {
            return c;
        }
    };
    let mut on_boundary = 0;
    for k in 0..probes {
        let mut b = z.centre() + &PuiseuxPoly::monomial(nonzero(rng), z.t().clone());
        if k % 2 == 1 {
            let s = z.t() + Rat::new(1.into(), rng.gen_range(1..=2).into());
            b = &b + &PuiseuxPoly::monomial(nonzero(rng), s);
        }
        let den = ypoly_eval(link.den(), &b, &Ext::Fin(&den_gauss + int(1)));
        if den.val_lower() != Ext::Fin(den_gauss.clone()) {
            continue;
        }
        let Some(image) = classical_image(link, &b, &den_gauss, &(xi.t() + int(1))) else {
            return Err(format!("no image for the probe {}", b));
        };
        let d = &image.trunc_lt(&(xi.t() + int(1))) - &xi.centre().trunc_lt(&(xi.t() + int(1)));
        match d.val_lower() {
            Ext::Fin(e) if e < *xi.t() => return Err(format!("{} maps to {}, outside the image disk", b, image)),
            Ext::Fin(e) if e == *xi.t() => on_boundary += 1,
            _ => {}
        }
    }
    if on_boundary < 2 {
        return Err(format!("only {} probe(s) at the image radius", on_boundary));
    }
    Ok(())
}

/// Largest `val(sigma(a) - b)` over the Galois twists `x^(1/m) -> zeta_m x^(1/m)`. A twisted
/// rational coefficient stays rational only for the twists by 1 and -1, so each twist is
/// compared coefficient by coefficient.
pub fn galois_agreement(a: &PuiseuxPoly, b: &PuiseuxPoly) -> Ext {
    let m = a.terms().iter().chain(b.terms()).fold(1u64, |acc, (e, _)| {
        acc.lcm(&e.denom().try_into().expect("small denominator"))
    });
    let mut exps: Vec<Rat> = a.terms().iter().chain(b.terms()).map(|(e, _)| e.clone()).collect();
    exps.sort();
    exps.dedup();
    let mut best = Ext::Fin(exps.first().cloned().unwrap_or_else(Rat::zero));
    for k in 0..m {
        let first_difference = exps.iter().find(|e| {
            let j: u64 = (*e * int((m * k) as i64)).to_integer().mod_floor(&m.into()).try_into().unwrap();
            let (ca, cb) = (a.coeff(e), b.coeff(e));
            if j == 0 {
                ca != cb
            } else if 2 * j == m {
                -ca != cb
            } else {
                !(ca.is_zero() && cb.is_zero())
            }
        });
        let agreement = first_difference.map_or(Ext::Inf, |e| Ext::Fin(e.clone()));
        best = best.max(agreement);
    }
    best
}

/// The tree laws for one triple: join against the agreement oracle, the least upper bound
/// property along the ancestors of `a`, the ultrametric inequality for join depths, and
/// additivity of the distance through joins and along chains.
pub fn tree_laws(a: &TypeIIPoint, b: &TypeIIPoint, c: &TypeIIPoint, s: &Rat) -> Result<(), String> {
    let j = join(a, b);
    let expected = match galois_agreement(a.centre(), b.centre()) {
        Ext::Fin(v) if v < *a.t().min(b.t()) => v,
        _ => a.t().min(b.t()).clone(),
    };
    if *j.t() != expected {
        return Err(format!("join({}, {}) = {}, expected depth {}", a, b, j, expected));
    }
    if !leq(a, &j) || !leq(b, &j) {
        return Err(format!("join({}, {}) = {} is not an upper bound", a, b, j));
    }
    let probes = [j.t() - Rat::one(), j.t().clone(), j.t() + s]
        .into_iter()
        .filter(|u| u <= a.t());
    for u in probes.map(|u| a.ancestor(&u)) {
        if leq(b, &u) != leq(&j, &u) {
            return Err(format!("{} bounds {} and {} but the join is {}", u, a, b, j));
        }
    }
    let depth = |p: &TypeIIPoint, q: &TypeIIPoint| join(p, q).t().clone();
    if depth(a, b) < depth(a, c).min(depth(b, c)) {
        return Err(format!("join depths of {}, {}, {} break the ultrametric inequality", a, b, c));
    }
    let d = hyperbolic_distance;
    if d(a, b) != d(a, &j) + d(&j, b) || d(a, b) != d(b, a) || d(a, b) != a.t() + b.t() - j.t() * int(2) {
        return Err(format!("distance from {} to {} does not split at {}", a, b, j));
    }
    if d(a, c) > d(a, b) + d(b, c) {
        return Err(format!("triangle inequality fails for {}, {}, {}", a, b, c));
    }
    let (u, v) = (a.ancestor(&(a.t() - s)), a.ancestor(&(a.t() - s * int(3))));
    if d(a, &v) != d(a, &u) + d(&u, &v) || !leq(&u, &v) {
        return Err(format!("distance is not additive along {} <= {} <= {}", a, u, v));
    }
    Ok(())
}
