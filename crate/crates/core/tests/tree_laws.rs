mod common;

use common::{galois_agreement, tree_laws};
use proptest::prelude::*;
use skewdyn::berkovich::{hyperbolic_distance, join, leq, lt, nearest_lattice_vertices};
use skewdyn::random::{random_point, random_rat, rng};
use skewdyn::rat::{int, rat};
use skewdyn::{parse_point, parse_series, Ext, Rat, TypeIIPoint};

fn p(s: &str) -> TypeIIPoint {
    parse_point(s).unwrap()
}

#[test]
fn agreement_oracle_sees_conjugates() {
    let a = parse_series("x^(1/2)").unwrap();
    let b = parse_series("-x^(1/2)").unwrap();
    assert_eq!(galois_agreement(&a, &b), Ext::Inf);
    let c = parse_series("x^(1/3) + x").unwrap();
    let d = parse_series("x^(1/3) - x").unwrap();
    assert_eq!(galois_agreement(&c, &d), Ext::Fin(int(1)));
    let e = parse_series("x^(1/3)").unwrap();
    let f = parse_series("2*x^(1/3)").unwrap();
    assert_eq!(galois_agreement(&e, &f), Ext::Fin(rat(1, 3)));
}

#[test]
fn conjugate_centres_share_their_points() {
    assert_eq!(p("zeta(x^(1/2), 2)"), p("zeta(-x^(1/2), 2)"));
    assert_eq!(join(&p("zeta(x^(1/2), 2)"), &p("zeta(-x^(1/2), 3)")), p("zeta(x^(1/2), 2)"));
    assert_eq!(hyperbolic_distance(&p("zeta(0, 0)"), &p("zeta(x, 2)")), int(2));
    assert_eq!(hyperbolic_distance(&p("zeta(x, 2)"), &p("zeta(-x, 2)")), int(2));
}

#[test]
fn five_hundred_random_triples() {
    let mut r = rng(10);
    for _ in 0..500 {
        let (a, b, c) = (random_point(&mut r, 4), random_point(&mut r, 4), random_point(&mut r, 4));
        let s = random_rat(&mut r, 4, 0, 1) + rat(1, 4);
        if let Err(e) = tree_laws(&a, &b, &c, &s) {
            panic!("{}", e);
        }
    }
}

/// `g` is the least `n` whose lattice `T_n` has the point as a vertex.
fn lattice_g(z: &TypeIIPoint) -> Option<u64> {
    (1..=8u64).find(|&n| match nearest_lattice_vertices(z, n) {
        Ok((outer, inner)) => outer == *z && inner == *z,
        Err(_) => false,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tree_laws_hold(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_point(&mut r, 4), random_point(&mut r, 4), random_point(&mut r, 4));
        let s = random_rat(&mut r, 4, 0, 1) + rat(1, 4);
        prop_assert_eq!(tree_laws(&a, &b, &c, &s), Ok(()));
    }

    #[test]
    fn generic_multiplicity_is_the_least_lattice(seed in any::<u64>()) {
        let mut r = rng(seed);
        let z = random_point(&mut r, 4);
        if z.g() <= 8 {
            prop_assert_eq!(lattice_g(&z), Some(z.g()), "{}", z);
        } else {
            prop_assert_eq!(lattice_g(&z), None, "{}", z);
        }
    }

    #[test]
    fn lattice_edges_have_length_one_over_n(seed in any::<u64>(), k in 1u64..=4) {
        let mut r = rng(seed);
        let z = random_point(&mut r, 4);
        let n = z.m() * k;
        let (outer, inner) = nearest_lattice_vertices(&z, n).unwrap();
        prop_assert!(leq(&z, &outer) && leq(&inner, &z));
        if lt(&z, &outer) && lt(&inner, &z) {
            prop_assert_eq!(hyperbolic_distance(&outer, &inner), Rat::new(1.into(), n.into()));
        } else {
            prop_assert!(outer == z || inner == z);
        }
    }
}
