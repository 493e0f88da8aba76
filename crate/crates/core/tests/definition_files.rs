mod common;

use common::fixture;
use proptest::prelude::*;
use rand::Rng;
use skewdyn::cli::main_with;
use skewdyn::deffile::parse_definition;
use skewdyn::random::{random_point, rng};
use skewdyn::stability::{is_analytically_stable, StabilizationConfig};
use skewdyn::Error;

/// A single-fibre definition with a random fibre map and vertex set.
fn random_definition(seed: u64) -> String {
    let mut r = rng(seed);
    let phi1 = ["x", "x^2", "x + x^2", "4*x^2 - x^3"][r.gen_range(0..4)];
    let terms: Vec<String> = (0..r.gen_range(1..=3))
        .map(|_| {
            let c = r.gen_range(1..=5);
            let d = r.gen_range(1..=3);
            format!("{}/{}*x^{}*y^({})", c, d, r.gen_range(0..=4), r.gen_range(-2..=3))
        })
        .collect();
    let gamma: Vec<String> = (0..r.gen_range(1..=3)).map(|_| random_point(&mut r, 3).to_string()).collect();
    format!(
        "# generated\nperiod = 1\ntail = 0\n\n[fibre zero]\nphi1 = \"{}\"\nphi2 = \"y + {}\"\ngamma = {}\n",
        phi1,
        terms.join(" + "),
        gamma.join("; ")
    )
}

fn write_fixture_copy(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("skewdyn-defs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}.skew", name));
    std::fs::write(&path, fixture(name).to_string()).unwrap();
    path
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_definition("period = 1\ntail = 0\n\n[fibre zero]\nphi1 = \"x\"\nphi2 = \"y +\"\n").unwrap_err();
    match err {
        Error::Parse { line, col, .. } => assert_eq!((line, col > 0), (6, true)),
        other => panic!("{:?}", other),
    }
    let err = parse_definition("period = 1\ntail = 0\n[fibre zero]\nphi1 = \"x\"\nphi2 = \"y\"\ngamma = zeta(0\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 6, .. }), "{:?}", err);
}

#[test]
fn structured_reports_are_byte_identical() {
    for name in ["thm6", "xy2", "goodred", "thmB"] {
        let cfg = StabilizationConfig { max_rounds: 4, ..Default::default() };
        let render = || {
            let d = fixture(name);
            is_analytically_stable(&d.gammas(), &d.chain, &cfg).unwrap().to_structured(&d.chain)
        };
        assert_eq!(render(), render(), "{}", name);
    }
}

#[test]
fn cli_output_is_deterministic() {
    let def = write_fixture_copy("thm6");
    let out = |k: usize| {
        let path = def.with_extension(format!("out{}", k));
        let code = main_with([
            "skewdyn",
            "min-stabilize",
            def.to_str().unwrap(),
            "--max-rounds",
            "4",
            "--format",
            "structured",
            "--out",
            path.to_str().unwrap(),
        ]);
        (code, std::fs::read(&path).unwrap())
    };
    let (a, b) = (out(1), out(2));
    assert_eq!(a.0, 4);
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_a_fixed_point(seed in any::<u64>()) {
        let text = random_definition(seed);
        let parsed = parse_definition(&text).unwrap();
        let printed = parsed.to_string();
        let again = parse_definition(&printed).unwrap();
        prop_assert_eq!(again.to_string(), printed.clone());
        prop_assert_eq!(&again.chain, &parsed.chain);
        prop_assert_eq!(again.gammas(), parsed.gammas());
    }
}
