//! A map whose invariant fibre is reached through a preperiodic fibre: `1 -> 0 -> 0`.
//!
//! ```bash
//! cargo run --example theorem_b_chain
//! ```

use skewdyn::deffile::parse_definition;
use skewdyn::rat::int;
use skewdyn::skew::{base_critical_points, parse_ratfn};
use skewdyn::stability::{is_analytically_stable, wandering_julia_report, StabilizationConfig};
use skewdyn::TypeIIPoint;

const THMB: &str = "\
period = 1
tail = 1
psi1 = \"(1 - x)*x^2\"
psi2 = \"(1 - x)*(x^4*y^-3 + y^3)\"

[fibre one]
base = 1
chart = reflect
gamma = zeta(0, 0)

[fibre zero]
base = 0
gamma = zeta(0, 0)

[aux back]
base = -1
target = 2
";

fn main() -> skewdyn::Result<()> {
    let crit = base_critical_points(&parse_ratfn("(1 - x)*x^2")?, &int(8))?;
    for r in &crit.finite.roots {
        println!("critical point of the base map: {}", r.root);
    }
    println!("critical points at infinity: {}", crit.at_infinity);

    let def = parse_definition(THMB)?;
    let one = def.chain.fibre_index("one").expect("declared above");
    let image = def.chain.link(one).pushforward(&TypeIIPoint::gauss())?;
    println!("Gauss point over 1 maps to {} over 0", image);
    for aux in def.chain.aux() {
        println!("auxiliary link has good reduction: {}", aux.local.has_good_reduction());
    }

    let cfg = StabilizationConfig::default();
    let report = is_analytically_stable(&def.gammas(), &def.chain, &cfg)?;
    for line in report.surface_translation(&def.chain) {
        println!("{}", line);
    }
    print!("{}", wandering_julia_report(&def.chain, one, &TypeIIPoint::gauss(), &cfg)?);
    Ok(())
}
