//! Drives the command-line front end in-process, as the `skewdyn` binary does.
//!
//! ```bash
//! cargo run --example cli_demo
//! ```

fn main() {
    for args in [
        vec!["skewdyn", "demo", "thm6"],
        vec!["skewdyn", "--format", "dot", "dual-graph", "zeta(0, 1); zeta(1, 2)"],
        vec!["skewdyn", "hull", "random", "--seed", "7"],
    ] {
        println!("$ {}", args.join(" "));
        let code = skewdyn::cli::main_with(args);
        println!("(exit {})\n", code);
    }
}
