mod common;

use common::fixture;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::Rng;
use skewdyn::intervalmap::{
    denominator_growth_certificate, detect_preperiodic, fixed_points, induce_interval_map, iterate, Affine, FixedPoint,
    OrbitCertificate, PLMap, DEFAULT_SEED_SAMPLES,
};
use skewdyn::random::{random_rat, rng};
use skewdyn::rat::{int, rat};
use skewdyn::skew::SkewLocal;
use skewdyn::{Ext, PuiseuxPoly, Rat, TypeIIPoint};

fn thm6() -> SkewLocal {
    fixture("thm6").chain.link(0).clone()
}

fn tent() -> PLMap {
    induce_interval_map(&thm6(), &PuiseuxPoly::zero(), &int(0), &Ext::Fin(rat(4, 3)), DEFAULT_SEED_SAMPLES).unwrap()
}

/// Links with a ray through centre 0 that they preserve, with a range to model.
fn ray_cases() -> Vec<(&'static str, SkewLocal, Rat, Ext)> {
    vec![
        ("thm6", thm6(), int(0), Ext::Fin(rat(4, 3))),
        ("xy2", fixture("xy2").chain.link(0).clone(), int(0), Ext::Fin(int(4))),
        ("thmB over 1", fixture("thmB").chain.link(0).clone(), int(0), Ext::Fin(int(2))),
    ]
}

/// `a / 2^n` with `a` odd.
fn odd_dyadic(r: &Rat) -> Option<u64> {
    let d = r.denom();
    (r.numer().is_odd() && (d & (d - BigInt::from(1))) == BigInt::from(0)).then(|| d.bits() - 1)
}

#[test]
fn ray_maps_agree_with_pushforward() {
    let mut r = rng(31);
    for (name, link, lo, hi) in ray_cases() {
        let map = induce_interval_map(&link, &PuiseuxPoly::zero(), &lo, &hi, DEFAULT_SEED_SAMPLES)
            .unwrap_or_else(|e| panic!("{}: {}", name, e));
        let top = hi.fin().unwrap().clone();
        for _ in 0..20 {
            let t = &lo + random_rat(&mut r, 12, 0, 1) * (&top - &lo);
            let image = link.pushforward(&TypeIIPoint::on_zero_ray(t.clone())).unwrap();
            assert_eq!(Some(image.t().clone()), map.eval(&t), "{} at t = {}", name, t);
            assert!(!image.centre().trunc_lt(image.t()).has_terms(), "{}: {} left the ray", name, image);
        }
    }
}

#[test]
fn tent_map_pieces() {
    let map = tent();
    assert_eq!(map.breakpoints, vec![rat(2, 3)]);
    assert_eq!(map.pieces, vec![Affine { slope: rat(3, 2), intercept: int(0) }, Affine { slope: rat(-3, 2), intercept: int(2) }]);
    let fps = fixed_points(&map);
    assert!(fps.contains(&FixedPoint::Point {
        t: rat(4, 5),
        slope: rat(-3, 2),
        kind: skewdyn::intervalmap::Stability::Repelling
    }));
}

#[test]
fn fixed_points_match_a_grid_scan() {
    let map = tent();
    let listed: Vec<Rat> = fixed_points(&map)
        .into_iter()
        .filter_map(|f| match f {
            FixedPoint::Point { t, .. } => Some(t),
            FixedPoint::Interval { .. } => None,
        })
        .collect();
    let grid = 240;
    let scanned: Vec<Rat> = (0..=grid * 4 / 3)
        .map(|k| rat(k, grid))
        .filter(|t| map.eval(t).as_ref() == Some(t))
        .collect();
    assert_eq!(listed, scanned);
}

#[test]
fn the_orbit_of_one_is_certified_infinite() {
    let map = tent();
    let orbit = iterate(&map, &int(1), 50).points;
    assert_eq!(orbit[..5], [int(1), rat(1, 2), rat(3, 4), rat(7, 8), rat(11, 16)]);
    let cert = denominator_growth_certificate(&map, &rat(1, 2), 50).unwrap();
    assert!(cert.is_sound());
    match detect_preperiodic(&map, &rat(2, 3), 60) {
        OrbitCertificate::InfiniteByDenominatorGrowth { prefix, .. } => assert_eq!(prefix, vec![rat(2, 3)]),
        other => panic!("{:?}", other),
    }
    assert!(matches!(detect_preperiodic(&map, &rat(4, 5), 10), OrbitCertificate::Preperiodic { .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iteration_follows_the_pushforward_orbit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let link = thm6();
        let map = tent();
        let t = random_rat(&mut r, 16, 0, 1);
        let mut z = TypeIIPoint::on_zero_ray(t.clone());
        for expected in iterate(&map, &t, 8).points.iter().skip(1) {
            z = link.pushforward(&z).unwrap();
            prop_assert_eq!(z.t(), expected);
        }
    }

    #[test]
    fn fixed_points_match_piece_algebra(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=4usize);
        let mut bps: Vec<Rat> = (0..k - 1).map(|_| random_rat(&mut r, 6, 1, 5)).collect();
        bps.sort();
        bps.dedup();
        let mut pieces = vec![Affine { slope: random_rat(&mut r, 3, -3, 3), intercept: random_rat(&mut r, 3, -2, 2) }];
        for b in &bps {
            let prev = pieces.last().unwrap();
            let slope = random_rat(&mut r, 3, -3, 3);
            let intercept = prev.eval(b) - &slope * b;
            pieces.push(Affine { slope, intercept });
        }
        let map = PLMap::new(int(0), Ext::Fin(int(6)), bps, pieces).unwrap();
        let listed: Vec<Rat> = fixed_points(&map)
            .into_iter()
            .filter_map(|f| match f {
                FixedPoint::Point { t, .. } => Some(t),
                FixedPoint::Interval { .. } => None,
            })
            .collect();
        for t in &listed {
            prop_assert_eq!(map.eval(t), Some(t.clone()));
        }
        for (i, p) in map.pieces.iter().enumerate() {
            if p.slope == int(1) {
                continue;
            }
            let t = &p.intercept / (int(1) - &p.slope);
            let (lo, hi) = map.piece_range(i);
            if t >= lo && hi >= t {
                prop_assert!(listed.contains(&t), "{} is fixed but not listed", t);
            }
        }
    }

    #[test]
    fn certificates_replay(a in 0i64..64, n in 1u32..6) {
        let map = tent();
        let t = Rat::new((2 * a + 1).into(), BigInt::from(2).pow(n));
        prop_assume!(map.contains(&t));
        if let Ok(cert) = denominator_growth_certificate(&map, &t, 50) {
            let orbit = iterate(&map, &t, 50).points;
            let replayed: Vec<u64> = orbit.iter().map(|p| odd_dyadic(p).unwrap()).collect();
            prop_assert_eq!(&replayed, &cert.exponents);
            prop_assert!(replayed.windows(2).all(|w| w[1] == w[0] + 1));
        }
    }
}
