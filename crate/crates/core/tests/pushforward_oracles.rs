mod common;

use common::{bundled_links, disk_oracle, random_probe, seminorm_identity_holds, simple_links};
use proptest::prelude::*;
use skewdyn::random::{random_point_in_disk, rng};

#[test]
fn seminorm_identity_on_bundled_maps() {
    let mut r = rng(2024);
    for (name, link) in bundled_links() {
        for _ in 0..20 {
            let z = random_point_in_disk(&mut r, 4);
            let xi = link.pushforward(&z).unwrap_or_else(|e| panic!("{}: {} has no image: {}", name, z, e));
            for _ in 0..5 {
                let w = random_probe(&mut r, &xi);
                assert!(seminorm_identity_holds(&link, &z, &xi, &w), "{}: {} -> {} fails at y - ({})", name, z, xi, w);
            }
        }
    }
}

#[test]
fn disk_oracle_on_bundled_maps() {
    let mut r = rng(77);
    for (name, link) in bundled_links() {
        for _ in 0..20 {
            let z = random_point_in_disk(&mut r, 4);
            let xi = link.pushforward(&z).unwrap();
            if let Err(e) = disk_oracle(&mut r, &link, &z, &xi, 50) {
                panic!("{}: {} -> {}: {}", name, z, xi, e);
            }
        }
    }
}

#[test]
fn multiplicities_divide_on_simple_maps() {
    let mut r = rng(5);
    for (name, link) in simple_links() {
        assert!(link.is_simple(), "{}", name);
        for _ in 0..100 {
            let z = random_point_in_disk(&mut r, 4);
            let xi = link.pushforward(&z).unwrap();
            assert_eq!(z.m() % xi.m(), 0, "{}: m({}) = {} vs m({}) = {}", name, z, z.m(), xi, xi.m());
            assert_eq!(z.g() % xi.g(), 0, "{}: g({}) = {} vs g({}) = {}", name, z, z.g(), xi, xi.g());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn seminorm_identity_for_any_seed(seed in any::<u64>(), which in 0usize..3) {
        let mut r = rng(seed);
        let (_, link) = &bundled_links()[which];
        let z = random_point_in_disk(&mut r, 6);
        let xi = link.pushforward(&z).unwrap();
        let w = random_probe(&mut r, &xi);
        prop_assert!(seminorm_identity_holds(link, &z, &xi, &w));
    }

    #[test]
    fn images_stay_type_two(seed in any::<u64>(), which in 0usize..3) {
        let mut r = rng(seed);
        let (_, link) = &bundled_links()[which];
        let z = random_point_in_disk(&mut r, 6);
        let xi = link.pushforward(&z).unwrap();
        prop_assert!(xi.centre().is_exact());
    }
}
