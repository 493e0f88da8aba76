//! Smooth stabilisation of `(x, y) -> (x, x y^2)` starting from the Gauss point.
//!
//! ```bash
//! cargo run --example smooth_stabilisation
//! ```

use skewdyn::skew::{Chain, SkewLocal};
use skewdyn::stability::{check_registry_axioms, stabilize_smooth, StabilizationConfig};
use skewdyn::vertexset::{is_smooth, VertexSet};
use skewdyn::TypeIIPoint;

fn main() -> skewdyn::Result<()> {
    let chain = Chain::single(SkewLocal::parse("x", "x*y^2")?);
    let gamma: VertexSet = [TypeIIPoint::gauss()].into_iter().collect();
    let run = stabilize_smooth(&[gamma], &chain, &StabilizationConfig::default())?;

    println!("outcome: {:?}", run.outcome);
    for rec in &run.trace {
        println!("round {}: {} hull points added", rec.round, rec.hull_added.len());
        for f in &rec.firings {
            println!("  {} fires rule {} at step {}", f.point, f.rule, f.step);
            for (_, d) in &f.disks {
                println!("    registers D({}, {})", d.centre(), d.t());
            }
        }
    }
    println!("final vertices: {}", run.gammas[0]);
    println!("smooth: {}", is_smooth(&run.gammas[0])?);
    println!("verdict: {:?}", run.report.verdict);
    let violations = check_registry_axioms(&run.registry, None, &run.gammas, &chain)?;
    println!("registry: {} disk(s), {} axiom violation(s)", run.registry.len(), violations.len());
    Ok(())
}
