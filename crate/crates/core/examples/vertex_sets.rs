//! Convex hulls, smooth hulls, domains and the dual graph of a vertex set.
//!
//! ```bash
//! cargo run --example vertex_sets
//! ```

use skewdyn::vertexset::{
    dual_graph, enumerate_domains, is_smooth, n_convex_hull, parse_vertex_set, smooth_n_convex_hull,
    smoothness_violations,
};

fn main() -> skewdyn::Result<()> {
    let gamma = parse_vertex_set("zeta(0, 1/2)")?;
    let smooth = smooth_n_convex_hull(&gamma, 2)?;
    println!("smooth 2-convex hull of {}: {}", gamma, smooth);
    println!("smooth: {}", is_smooth(&smooth)?);

    let gap = parse_vertex_set("zeta(0, 0); zeta(0, 2)")?;
    for v in smoothness_violations(&gap)? {
        println!("violation in {}: {}", gap, v);
    }

    let gamma = parse_vertex_set("zeta(0, 1); zeta(1, 2); zeta(x^(1/2), 3/2)")?;
    println!("2-convex hull: {}", n_convex_hull(&gamma, 2)?);
    for d in enumerate_domains(&gamma)? {
        println!("domain: {}", d);
    }
    let graph = dual_graph(&smooth_n_convex_hull(&gamma, 2)?)?;
    println!("dual graph is a tree: {}", graph.is_tree());
    print!("{}", graph.to_dot());
    Ok(())
}
