//! Images of Type II points under a fibre map, with their multiplicities.
//!
//! ```bash
//! cargo run --example pushforward
//! ```

use skewdyn::berkovich::special_directions;
use skewdyn::skew::SkewLocal;
use skewdyn::parse_point;

fn main() -> skewdyn::Result<()> {
    let link = SkewLocal::parse("x^2", "x^4*y^-3 + y^3")?;
    for text in ["zeta(0, 0)", "zeta(0, 1)", "zeta(0, 4/5)", "zeta(x^(1/2), 3/4)", "zeta(1 + x, 2)"] {
        let z = parse_point(text)?;
        let data = link.image_data(&z)?;
        println!(
            "{} (m={}, g={}) -> {} (m={}, g={})",
            z,
            z.m(),
            z.g(),
            data.image,
            data.image.m(),
            data.image.g()
        );
    }

    let z = parse_point("zeta(0, 1/2)")?;
    for (d, m) in special_directions(&z) {
        let image = link.pushforward_direction(&z, &d, 8)?;
        println!("direction {} at {} (m={}) maps to {}", d, z, m, image);
    }

    let good = SkewLocal::parse("x", "y^2 - 2")?;
    println!("y^2 - 2 has good reduction: {}", good.has_good_reduction());
    let r = good.reduction_mod_x();
    println!("reduction mod x: ({}) / ({}) of degree {}", r.num, r.den, r.degree);
    Ok(())
}
