//! Seeded generators of random points and vertex sets, for property checks and probing.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::berkovich::TypeIIPoint;
use crate::puiseux::PuiseuxPoly;
use crate::rat::{int, Rat};
use crate::vertexset::VertexSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `k/d` with `1 <= d <= max_den` in `[lo, hi]`.
pub fn random_rat<R: Rng>(rng: &mut R, max_den: i64, lo: i64, hi: i64) -> Rat {
    let d = rng.gen_range(1..=max_den);
    Rat::new(rng.gen_range(lo * d..=hi * d).into(), d.into())
}

fn random_coeff<R: Rng>(rng: &mut R) -> Rat {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        int(c)
    } else {
        int(-c)
    }
}

/// A centre with up to `terms` terms at exponents in `[0, 2]` with denominators at most
/// `max_den`.
pub fn random_centre<R: Rng>(rng: &mut R, max_den: i64, terms: usize) -> PuiseuxPoly {
    let k = rng.gen_range(0..=terms);
    PuiseuxPoly::exact((0..k).map(|_| (random_rat(rng, max_den, 0, 2), random_coeff(rng))))
}

/// `zeta(a, t)` with a random centre and `t` in `[-1, 3]`.
pub fn random_point<R: Rng>(rng: &mut R, max_den: i64) -> TypeIIPoint {
    let c = random_centre(rng, max_den, 2);
    let t = random_rat(rng, max_den, -1, 3);
    TypeIIPoint::new(&c, t).expect("exact centre")
}

/// A point whose radius lies in `[0, 3]`, suitable for maps defined on the closed unit disk.
pub fn random_point_in_disk<R: Rng>(rng: &mut R, max_den: i64) -> TypeIIPoint {
    let c = random_centre(rng, max_den, 2);
    let t = random_rat(rng, max_den, 0, 3);
    TypeIIPoint::new(&c, t).expect("exact centre")
}

/// One to `max_points` random points.
pub fn random_vertex_set<R: Rng>(rng: &mut R, max_den: i64, max_points: usize) -> VertexSet {
    let k = rng.gen_range(1..=max_points);
    (0..k).map(|_| random_point(rng, max_den)).collect()
}
