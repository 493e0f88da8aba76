//! Puiseux series arithmetic and Newton–Puiseux root finding.
//!
//! ```bash
//! cargo run --example puiseux_roots
//! ```

use skewdyn::puiseux::newton_puiseux;
use skewdyn::rat::int;
use skewdyn::{parse_series, PuiseuxPoly};

fn main() -> skewdyn::Result<()> {
    let a = parse_series("1 + x^(1/2) + O(x^3)")?;
    let b = parse_series("1 - x")?;
    println!("a = {}", a);
    println!("a * b = {}", a.mul_capped(&b, &int(3)));
    println!("1 / b = {}", b.inv(&int(4))?);
    println!("reversion of x^2 + x^3 = {}", parse_series("x^2 + x^3")?.reversion(&int(3))?);

    // y^2 - x (1 + x) has the two branches +-x^(1/2) (1 + x/2 - ...).
    let f = vec![parse_series("-x - x^2")?, PuiseuxPoly::zero(), PuiseuxPoly::one()];
    let roots = newton_puiseux(&f, &int(3))?;
    for r in &roots.roots {
        println!("root {} (multiplicity {}, m = {})", r.root, r.multiplicity, r.root.ramification_index());
    }

    // y^2 - 2x: the leading coefficient is irrational over Q, so the pair stays a descriptor.
    let g = vec![parse_series("-2*x")?, PuiseuxPoly::zero(), PuiseuxPoly::one()];
    for d in newton_puiseux(&g, &int(3))?.unresolved {
        println!("unresolved pair: degree {} at valuation {}", d.degree, d.valuation);
    }
    Ok(())
}
