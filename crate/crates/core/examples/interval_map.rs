//! The radius dynamics of `(x, y) -> (x^2, x^4 y^-3 + y^3)` along the ray of centre 0.
//!
//! ```bash
//! cargo run --example interval_map
//! ```

use skewdyn::intervalmap::{
    denominator_growth_certificate, detect_preperiodic, fixed_points, induce_interval_map, iterate, FixedPoint,
    OrbitCertificate,
    DEFAULT_SEED_SAMPLES,
};
use skewdyn::rat::{int, rat};
use skewdyn::skew::SkewLocal;
use skewdyn::{Ext, PuiseuxPoly};

fn main() -> skewdyn::Result<()> {
    let link = SkewLocal::parse("x^2", "x^4*y^-3 + y^3")?;
    let map = induce_interval_map(&link, &PuiseuxPoly::zero(), &int(0), &Ext::Fin(rat(4, 3)), DEFAULT_SEED_SAMPLES)?;
    println!("induced map on [0, 4/3]:\n{}", map);

    for fp in fixed_points(&map) {
        match fp {
            FixedPoint::Point { t, slope, kind } => println!("fixed point t = {} slope {} ({:?})", t, slope, kind),
            FixedPoint::Interval { lo, hi } => println!("fixed interval [{}, {}]", lo, hi),
        }
    }

    let orbit = iterate(&map, &int(1), 8);
    let shown: Vec<String> = orbit.points.iter().map(|t| t.to_string()).collect();
    println!("orbit of t = 1: {}", shown.join(", "));

    match denominator_growth_certificate(&map, &int(1), 50) {
        Ok(cert) => println!(
            "denominators double for {} steps (sound: {})",
            cert.exponents.len() - 1,
            cert.is_sound()
        ),
        Err(e) => println!("no certificate: {}", e),
    }

    for t in [rat(2, 3), rat(4, 5), rat(2, 5)] {
        match detect_preperiodic(&map, &t, 20) {
            OrbitCertificate::Preperiodic { tail, cycle } => {
                println!("t = {}: preperiodic, tail {} and period {}", t, tail.len(), cycle.len())
            }
            OrbitCertificate::InfiniteByDenominatorGrowth { prefix, .. } => {
                println!("t = {}: infinite after {} step(s)", t, prefix.len())
            }
            OrbitCertificate::HorizonExceeded(n) => println!("t = {}: undecided after {} steps", t, n),
        }
    }
    Ok(())
}
