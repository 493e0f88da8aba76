//! The `skewdyn` command line tool.
//!
//! Exit codes: 0 for success or a certified stable verdict, 1 for runtime errors, a failed demo
//! check or a non-smooth vertex set, 2 for parse errors and unknown demos, 3 when a destabilising
//! vertex is found, 4 for inconclusive runs and exhausted round caps.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::berkovich::{parse_point, TypeIIPoint};
use crate::deffile::{parse_definition, DefinitionFile};
use crate::error::{Error, Result};
use crate::intervalmap::{
    denominator_growth_certificate, fixed_points, induce_interval_map, iterate, FixedPoint, Stability,
    DEFAULT_SEED_SAMPLES,
};
use crate::puiseux::PuiseuxPoly;
use crate::rat::{int, rat, Ext, Rat};
use crate::skew::{base_critical_points, parse_ratfn};
use crate::stability::{
    is_analytically_stable, minimal_stabilisation, stabilize_smooth, wandering_julia_report, MinimalOutcome,
    SmoothOutcome, StabilityReport, StabilizationConfig, Verdict,
};
use crate::vertexset::{
    dual_graph, enumerate_domains, n_convex_hull, parse_vertex_set, smooth_n_convex_hull, smoothness_violations,
    VertexSet,
};

const THM6: &str = include_str!("../fixtures/thm6.skew");
const THMB: &str = include_str!("../fixtures/thmB.skew");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "skewdyn", version, about = "Dynamics of rational skew products on the Berkovich line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Exponent cap for truncated series computations (overrides the definition file).
    #[arg(long, global = true)]
    pub precision: Option<i64>,
    /// Orbit length explored per classification.
    #[arg(long, global = true, default_value_t = 64)]
    pub horizon: usize,
    #[arg(long, global = true, default_value_t = 32)]
    pub max_rounds: usize,
    /// Seed for the `random` vertex set input.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Vertex set inputs are a definition file (its vertex set over `--fibre`), a literal such as
/// `"zeta(0, 0); zeta(0, 1)"`, or `random`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit of a point with its multiplicities.
    Image {
        def: PathBuf,
        point: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// The n-convex hull.
    Hull {
        input: String,
        #[arg(short)]
        n: Option<u64>,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// The smooth n-convex hull.
    SmoothHull {
        input: String,
        #[arg(short)]
        n: Option<u64>,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// Lists smoothness violations; exits 1 when there are any.
    CheckSmooth {
        input: String,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// The components of the complement.
    Domains {
        input: String,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// The dual graph of the blowup.
    DualGraph {
        input: String,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// Analytic stability of the vertex sets of a definition file.
    CheckStability {
        def: PathBuf,
        /// Replace the vertex set over `--fibre` (default: the first fibre).
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// Blow up images of destabilising vertices until stable or out of rounds.
    MinStabilize {
        def: PathBuf,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        fibre: Option<String>,
    },
    /// Smooth stabilisation with persistent F-disks.
    Stabilize {
        def: PathBuf,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        fibre: Option<String>,
        /// Multiplicity cap (default: the largest g of the input).
        #[arg(long)]
        m0: Option<u64>,
    },
    /// Scripted checks for the bundled examples: `thm6` or `thmB`.
    Demo { name: String },
}

/// Output text and exit code of one invocation.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first) and runs the command, writing to `--out` or stdout.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let out = cli.out.clone();
    match run(&cli) {
        Ok(o) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &o.output) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return 1;
                }
            } else {
                print!("{}", o.output);
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {}", e);
            error_code(&e)
        }
    }
}

fn read_definition(path: &Path, precision: Option<i64>) -> Result<DefinitionFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {}", path.display(), e)))?;
    let mut d = parse_definition(&text)?;
    if let Some(p) = precision {
        d.precision = p;
    }
    Ok(d)
}

fn fibre_index(d: &DefinitionFile, label: Option<&str>) -> Result<usize> {
    match label {
        None => Ok(0),
        Some(l) => d
            .chain
            .fibre_index(l)
            .ok_or_else(|| Error::Precondition(format!("no fibre labelled {}", l))),
    }
}

fn vertex_input(cli: &Cli, input: &str, fibre: Option<&str>) -> Result<VertexSet> {
    if input == "random" {
        let mut rng = crate::random::rng(cli.seed);
        return Ok(crate::random::random_vertex_set(&mut rng, 4, 4));
    }
    let path = Path::new(input);
    if path.is_file() {
        let d = read_definition(path, cli.precision)?;
        let j = fibre_index(&d, fibre)?;
        return Ok(d.gammas().swap_remove(j));
    }
    parse_vertex_set(input)
}

fn gammas_for(d: &DefinitionFile, gamma: Option<&str>, fibre: Option<&str>) -> Result<Vec<VertexSet>> {
    let mut gs = d.gammas();
    if let Some(g) = gamma {
        let j = fibre_index(d, fibre)?;
        gs[j] = parse_vertex_set(g)?;
    }
    Ok(gs)
}

fn config(cli: &Cli) -> StabilizationConfig {
    StabilizationConfig { horizon: cli.horizon, max_rounds: cli.max_rounds, ..Default::default() }
}

fn render_set(g: &VertexSet, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => g.iter().map(|z| format!("{}  m={} g={}\n", z, z.m(), z.g())).collect(),
        Format::Structured => g
            .iter()
            .enumerate()
            .map(|(i, z)| format!("vertex.{i}.point = {z}\nvertex.{i}.m = {}\nvertex.{i}.g = {}\n", z.m(), z.g()))
            .collect(),
        Format::Dot => dual_graph(g)?.to_dot(),
    })
}

fn render_report(r: &StabilityReport, d: &DefinitionFile, format: Format) -> String {
    match format {
        Format::Structured => r.to_structured(&d.chain),
        _ => r.to_text(&d.chain),
    }
}

/// Certificates for witnesses whose vertex sits on a ray with an interval model.
fn wandering_notes(r: &StabilityReport, d: &DefinitionFile, cfg: &StabilizationConfig) -> String {
    let mut s = String::new();
    for w in &r.witnesses {
        if let Ok(c) = wandering_julia_report(&d.chain, w.fibre, &w.point, cfg) {
            s.push_str("wandering-julia certificate:\n");
            for line in c.to_string().lines() {
                let _ = writeln!(s, "  {}", line);
            }
        }
    }
    s
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = config(cli);
    match &cli.command {
        Command::Image { def, point, steps, fibre } => {
            let d = read_definition(def, cli.precision)?;
            let j = fibre_index(&d, fibre.as_deref())?;
            let z = parse_point(point)?;
            let mut s = String::new();
            for (k, (f, p)) in d.chain.orbit(j, &z, *steps)?.iter().enumerate() {
                match cli.format {
                    Format::Structured => {
                        let _ = writeln!(s, "step.{k}.fibre = {}", d.chain.label(*f));
                        let _ = writeln!(s, "step.{k}.point = {p}\nstep.{k}.m = {}\nstep.{k}.g = {}", p.m(), p.g());
                    }
                    _ => {
                        let _ = writeln!(s, "{k}: [{}] {}  m={} g={}", d.chain.label(*f), p, p.m(), p.g());
                    }
                }
            }
            Ok(Outcome::ok(s))
        }
        Command::Hull { input, n, fibre } => {
            let g = vertex_input(cli, input, fibre.as_deref())?;
            let n = n.unwrap_or_else(|| g.max_g());
            Ok(Outcome::ok(render_set(&n_convex_hull(&g, n)?, cli.format)?))
        }
        Command::SmoothHull { input, n, fibre } => {
            let g = vertex_input(cli, input, fibre.as_deref())?;
            let n = n.unwrap_or_else(|| g.max_g());
            Ok(Outcome::ok(render_set(&smooth_n_convex_hull(&g, n)?, cli.format)?))
        }
        Command::CheckSmooth { input, fibre } => {
            let g = vertex_input(cli, input, fibre.as_deref())?;
            let v = smoothness_violations(&g)?;
            let mut s = String::new();
            if v.is_empty() {
                s.push_str("smooth\n");
            }
            for x in &v {
                let _ = writeln!(s, "violation: {}", x);
            }
            Ok(Outcome { output: s, code: if v.is_empty() { 0 } else { 1 } })
        }
        Command::Domains { input, fibre } => {
            let g = vertex_input(cli, input, fibre.as_deref())?;
            let s = enumerate_domains(&g)?.iter().map(|u| format!("{}\n", u)).collect();
            Ok(Outcome::ok(s))
        }
        Command::DualGraph { input, fibre } => {
            let g = vertex_input(cli, input, fibre.as_deref())?;
            let dg = dual_graph(&g)?;
            let s = match cli.format {
                Format::Dot => dg.to_dot(),
                _ => dg.to_structured(),
            };
            Ok(Outcome::ok(s))
        }
        Command::CheckStability { def, gamma, fibre } => {
            let d = read_definition(def, cli.precision)?;
            let gs = gammas_for(&d, gamma.as_deref(), fibre.as_deref())?;
            let r = is_analytically_stable(&gs, &d.chain, &cfg)?;
            let mut s = render_report(&r, &d, cli.format);
            s.push_str(&wandering_notes(&r, &d, &cfg));
            Ok(Outcome { output: s, code: r.verdict.exit_code() })
        }
        Command::MinStabilize { def, gamma, fibre } => {
            let d = read_definition(def, cli.precision)?;
            let gs = gammas_for(&d, gamma.as_deref(), fibre.as_deref())?;
            let run = minimal_stabilisation(&gs, &d.chain, &cfg)?;
            let mut s = format!("outcome: {:?} after {} rounds\n", run.outcome, run.rounds);
            for e in &run.trace {
                let _ = writeln!(
                    s,
                    "round {}: {} over fibre {} is destabilising; added {}",
                    e.round,
                    e.destabilising,
                    d.chain.label(e.fibre),
                    e.added
                );
            }
            s.push_str(&render_report(&run.report, &d, cli.format));
            let code = match run.outcome {
                MinimalOutcome::Stable => 0,
                MinimalOutcome::RoundCapExceeded | MinimalOutcome::Inconclusive => 4,
            };
            Ok(Outcome { output: s, code })
        }
        Command::Stabilize { def, gamma, fibre, m0 } => {
            let d = read_definition(def, cli.precision)?;
            let gs = gammas_for(&d, gamma.as_deref(), fibre.as_deref())?;
            let cfg = StabilizationConfig { m0: *m0, ..cfg };
            let run = stabilize_smooth(&gs, &d.chain, &cfg)?;
            let mut s = format!("outcome: {:?}\n", run.outcome);
            for (f, z) in &run.seed {
                let _ = writeln!(s, "seed [{}] {}", d.chain.label(*f), z);
            }
            for rec in &run.trace {
                let _ = writeln!(s, "round {}:", rec.round);
                for (f, z) in &rec.hull_added {
                    let _ = writeln!(s, "  hull adds [{}] {}", d.chain.label(*f), z);
                }
                for v in &rec.violations {
                    let _ = writeln!(s, "  axiom violation {}", v);
                }
                for fr in &rec.firings {
                    let _ = writeln!(s, "  [{}] {}: rule {} at step {}", d.chain.label(fr.fibre), fr.point, fr.rule, fr.step);
                    for (f, z) in &fr.added {
                        let _ = writeln!(s, "    adds [{}] {}", d.chain.label(*f), z);
                    }
                    for (f, disk) in &fr.disks {
                        let _ =
                            writeln!(s, "    registers D({}, {}) over fibre {}", disk.centre(), disk.t(), d.chain.label(*f));
                    }
                }
            }
            for (j, g) in run.gammas.iter().enumerate() {
                let _ = writeln!(s, "vertices [{}]: {}", d.chain.label(j), g);
            }
            for r in run.registry.disks() {
                let _ = writeln!(s, "registry: {}", r);
            }
            s.push_str(&render_report(&run.report, &d, cli.format));
            let code = match (&run.outcome, run.report.verdict) {
                (SmoothOutcome::Terminated, Verdict::StableCertified) => 0,
                (_, Verdict::DestabilisingFound) => 3,
                _ => 4,
            };
            Ok(Outcome { output: s, code })
        }
        Command::Demo { name } => match name.as_str() {
            "thm6" => demo_thm6(&cfg),
            "thmB" => demo_thm_b(&cfg, cli.precision),
            other => Err(Error::Parse { line: 1, col: 1, msg: format!("unknown demo '{}' (expected thm6 or thmB)", other) }),
        },
    }
}

/// Collects PASS/FAIL lines for a scripted demo.
struct Checks {
    out: String,
    failed: usize,
}

impl Checks {
    fn new(title: &str) -> Self {
        Checks { out: format!("{}\n", title), failed: 0 }
    }

    fn check(&mut self, name: &str, expected: impl std::fmt::Display, got: Result<String>) {
        let expected = expected.to_string();
        match got {
            Ok(g) if g == expected => {
                let _ = writeln!(self.out, "PASS {}: {}", name, g);
            }
            Ok(g) => {
                self.failed += 1;
                let _ = writeln!(self.out, "FAIL {}: expected {}, got {}", name, expected, g);
            }
            Err(e) => {
                self.failed += 1;
                let _ = writeln!(self.out, "FAIL {}: expected {}, error {}", name, expected, e);
            }
        }
    }

    fn finish(self) -> Outcome {
        Outcome { code: if self.failed == 0 { 0 } else { 1 }, output: self.out }
    }
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn demo_thm6(cfg: &StabilizationConfig) -> Result<Outcome> {
    let d = parse_definition(THM6)?;
    let link = d.chain.link(0);
    let mut c = Checks::new("demo thm6: (x, y) -> (x^2, x^4 y^-3 + y^3)");
    let map = induce_interval_map(link, &PuiseuxPoly::zero(), &int(0), &Ext::Fin(rat(4, 3)), DEFAULT_SEED_SAMPLES);
    c.check("breakpoints", "2/3", map.as_ref().map(|m| join(&m.breakpoints)).map_err(Clone::clone));
    c.check(
        "pieces",
        "3/2*t + 0; -3/2*t + 2",
        map.as_ref().map(|m| m.pieces.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")).map_err(Clone::clone),
    );
    let repelling = map.as_ref().map_err(Clone::clone).map(|m| {
        fixed_points(m)
            .into_iter()
            .filter_map(|f| match f {
                FixedPoint::Point { t, slope, kind: Stability::Repelling } if t > Rat::from_integer(0.into()) => {
                    Some((t, slope))
                }
                _ => None,
            })
            .collect::<Vec<_>>()
    });
    c.check("fixed point", "4/5", repelling.clone().map(|v| join(&v.iter().map(|p| p.0.clone()).collect::<Vec<_>>())));
    c.check("multiplier", "3/2", repelling.map(|v| join(&v.iter().map(|p| num_traits::Signed::abs(&p.1)).collect::<Vec<_>>())));
    c.check(
        "orbit prefix",
        "1, 1/2, 3/4, 7/8, 11/16",
        map.as_ref().map(|m| join(&iterate(m, &int(1), 4).points)).map_err(Clone::clone),
    );
    c.check(
        "infinite orbit",
        "sound over 50 steps",
        map.as_ref().map_err(Clone::clone).and_then(|m| {
            denominator_growth_certificate(m, &int(1), 50)
                .map(|cert| if cert.is_sound() { "sound over 50 steps".to_string() } else { "unsound".to_string() })
                .map_err(|e| Error::ValidationFailure(e.to_string()))
        }),
    );
    let report = is_analytically_stable(&d.gammas(), &d.chain, cfg);
    c.check(
        "destabilising vertex",
        "zeta(0, 1) -> zeta(0, 1/2)",
        report.as_ref().map_err(Clone::clone).map(|r| {
            r.witnesses.iter().map(|w| format!("{} -> {}", w.point, w.image)).collect::<Vec<_>>().join("; ")
        }),
    );
    c.check(
        "J-witness",
        "zeta(0, 2/3) -> zeta(0, 1) in 1 step(s) (replayed)",
        report.as_ref().map_err(Clone::clone).and_then(|r| {
            let w = r.witnesses.first().ok_or_else(|| Error::ValidationFailure("no witness".into()))?;
            let ok = w.path.replay(&d.chain, &d.gammas())?;
            Ok(format!(
                "{} -> {} in {} step(s) ({})",
                w.path.point,
                w.path.target,
                w.path.steps,
                if ok { "replayed" } else { "replay failed" }
            ))
        }),
    );
    let small = StabilizationConfig { max_rounds: 4, ..cfg.clone() };
    c.check(
        "minimal stabilisation",
        "RoundCapExceeded; 1, 1/2, 3/4, 7/8, 11/16",
        minimal_stabilisation(&d.gammas(), &d.chain, &small)
            .map(|run| format!("{:?}; {}", run.outcome, join(&run.orbit_t_values()))),
    );
    c.check(
        "wandering certificate",
        "fixed point 4/5, multiplier -3/2",
        wandering_julia_report(&d.chain, 0, &parse_point("zeta(0, 1)")?, cfg)
            .map(|w| format!("fixed point {}, multiplier {}", w.fixed_point, w.multiplier)),
    );
    Ok(c.finish())
}

fn demo_thm_b(cfg: &StabilizationConfig, precision: Option<i64>) -> Result<Outcome> {
    let d = parse_definition(THMB)?;
    let prec = int(precision.unwrap_or(d.precision).min(16));
    let mut c = Checks::new("demo thmB: psi = ((1 - x) x^2, (1 - x)(x^4 y^-3 + y^3)) over 1 -> 0 -> 0");
    c.check(
        "critical points of psi1",
        "0, 2/3, inf",
        parse_ratfn("(1 - x)*x^2").and_then(|f| base_critical_points(&f, &prec)).map(|cs| {
            let mut roots: Vec<Rat> = cs.finite.roots.iter().map(|r| r.root.coeff(&Rat::from_integer(0.into()))).collect();
            roots.sort();
            let mut out: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
            if cs.at_infinity > 0 {
                out.push("inf".into());
            }
            out.join(", ")
        }),
    );
    let one = d.chain.fibre_index("one").ok_or_else(|| Error::ValidationFailure("fibre one missing".into()))?;
    c.check(
        "transport over 1 -> 0",
        "zeta(0, 1)",
        d.chain.link(one).pushforward(&TypeIIPoint::gauss()).map(|z| z.to_string()),
    );
    c.check(
        "fibre 1 link reduction",
        "bad",
        Ok(if d.chain.link(one).has_good_reduction() { "good" } else { "bad" }.to_string()),
    );
    c.check(
        "auxiliary link reduction",
        "good",
        Ok(if !d.chain.aux().is_empty() && d.chain.aux().iter().all(|a| a.local.has_good_reduction()) {
            "good"
        } else {
            "bad"
        }
        .to_string()),
    );
    let report = is_analytically_stable(&d.gammas(), &d.chain, cfg);
    c.check(
        "destabilising vertex",
        "zeta(0, 0) over one",
        report.as_ref().map_err(Clone::clone).map(|r| {
            r.witnesses
                .iter()
                .map(|w| format!("{} over {}", w.point, d.chain.label(w.fibre)))
                .collect::<Vec<_>>()
                .join("; ")
        }),
    );
    c.check(
        "wandering certificate",
        "zeta(0, 1) over zero; fixed point 4/5, multiplier -3/2",
        wandering_julia_report(&d.chain, one, &TypeIIPoint::gauss(), cfg).map(|w| {
            format!(
                "{} over {}; fixed point {}, multiplier {}",
                w.transported,
                d.chain.label(w.transported_fibre),
                w.fixed_point,
                w.multiplier
            )
        }),
    );
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("skewdyn").chain(args.iter().copied())).expect("arguments parse");
        run(&cli)
    }

    fn code(args: &[&str]) -> i32 {
        main_with(std::iter::once("skewdyn").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["check-stability", "fixtures/xy2.skew"]), 0);
        assert_eq!(code(&["check-stability", "fixtures/thm6.skew"]), 3);
        assert_eq!(code(&["--max-rounds", "3", "min-stabilize", "fixtures/thm6.skew"]), 4);
        assert_eq!(code(&["demo", "nonsense"]), 2);
        assert_eq!(code(&["hull", "zeta(0,"]), 2);
        assert_eq!(code(&["--format", "yaml", "hull", "zeta(0, 1)"]), 2);
        assert_eq!(code(&["check-smooth", "zeta(0, 0); zeta(0, 2)"]), 1);
        assert_eq!(code(&["check-smooth", "zeta(0, 0); zeta(0, 1); zeta(0, 2)"]), 0);
    }

    #[test]
    fn image_lists_the_orbit() {
        let o = run_args(&["image", "fixtures/thm6.skew", "zeta(0, 1)", "--steps", "4"]).unwrap();
        let ts: Vec<&str> = o.output.lines().map(|l| l.split("zeta(0, ").nth(1).unwrap().split(')').next().unwrap()).collect();
        assert_eq!(ts, ["1", "1/2", "3/4", "7/8", "11/16"]);
    }

    #[test]
    fn demos_pass() {
        for name in ["thm6", "thmB"] {
            let o = run_args(&["demo", name]).unwrap();
            assert_eq!(o.code, 0, "{}", o.output);
            assert!(!o.output.contains("FAIL"));
        }
    }

    #[test]
    fn formats() {
        let dot = run_args(&["--format", "dot", "dual-graph", "zeta(0, 1); zeta(1, 2)"]).unwrap();
        assert!(dot.output.starts_with("graph dual {"));
        let st = run_args(&["--format", "structured", "check-stability", "fixtures/xy2.skew"]).unwrap();
        assert!(st.output.contains("verdict = StableCertified"));
    }

    #[test]
    fn stabilize_xy2_terminates() {
        let o = run_args(&["stabilize", "fixtures/xy2.skew"]).unwrap();
        assert_eq!(o.code, 0, "{}", o.output);
        assert!(o.output.starts_with("outcome: Terminated"));
    }

    #[test]
    fn out_flag_writes_file() {
        let path = std::env::temp_dir().join(format!("skewdyn-cli-{}.txt", std::process::id()));
        let p = path.to_str().unwrap();
        assert_eq!(code(&["--out", p, "hull", "zeta(0, 1)"]), 0);
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(text, "zeta(0, 1)  m=1 g=1\n");
    }

    #[test]
    fn random_input_is_seeded() {
        let a = run_args(&["--seed", "11", "hull", "random"]).unwrap();
        let b = run_args(&["--seed", "11", "hull", "random"]).unwrap();
        assert_eq!(a.output, b.output);
    }
}
