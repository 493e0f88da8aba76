//! A vertex set that cannot be made stable by blowing up images.
//!
//! ```bash
//! cargo run --example destabilising_orbit
//! ```

use skewdyn::deffile::parse_definition;
use skewdyn::stability::{is_analytically_stable, minimal_stabilisation, wandering_julia_report, StabilizationConfig};
use skewdyn::parse_point;

const THM6: &str = "\
period = 1
tail = 0

[fibre zero]
phi1 = \"x^2\"
phi2 = \"x^4*y^-3 + y^3\"
gamma = zeta(0, 0); zeta(0, 1)
";

fn main() -> skewdyn::Result<()> {
    let def = parse_definition(THM6)?;
    let cfg = StabilizationConfig { max_rounds: 6, ..Default::default() };

    let report = is_analytically_stable(&def.gammas(), &def.chain, &cfg)?;
    print!("{}", report.to_text(&def.chain));
    for w in &report.witnesses {
        println!("J-witness replays: {}", w.path.replay(&def.chain, &def.gammas())?);
    }

    let run = minimal_stabilisation(&def.gammas(), &def.chain, &cfg)?;
    let ts: Vec<String> = run.orbit_t_values().iter().map(|t| t.to_string()).collect();
    println!("minimal stabilisation: {:?} after {} rounds; t = {}", run.outcome, run.rounds, ts.join(", "));

    let cert = wandering_julia_report(&def.chain, 0, &parse_point("zeta(0, 1)")?, &cfg)?;
    print!("{}", cert);
    Ok(())
}
