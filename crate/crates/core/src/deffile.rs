//! Skew-product definition files.
//!
//! ```text
//! # comments start with '#'
//! period = 1
//! tail = 1
//! precision = 64
//! psi1 = "(1 - x)*x^2"                  # optional global model
//! psi2 = "(1 - x)*(x^4*y^-3 + y^3)"
//!
//! [fibre one]                           # tail fibres first, then the cycle
//! base = 1
//! chart = reflect                       # local coordinate x' = base - x
//! gamma = zeta(0, 0); zeta(0, 1)
//!
//! [fibre zero]
//! base = 0
//!
//! [aux back]                            # extra link checked for good reduction
//! base = -1
//! target = 2
//! ```
//!
//! Without `psi1`/`psi2`, every section gives its local model directly with `phi1` and `phi2`.
//! Values may be quoted. Local models of a global map use `x = base + x'` (`chart = identity`)
//! or `x = base - x'` (`chart = reflect`).

use std::fmt;

use num_traits::Zero;

use crate::berkovich::{parse_point_at, TypeIIPoint};
use crate::error::{Error, Result};
use crate::puiseux::parse::Cursor;
use crate::puiseux::{parse_series_at, PuiseuxPoly, DEFAULT_PRECISION};
use crate::rat::{int, parse_rat, Rat};
use crate::skew::ratfn::parse_ratfn_at;
use crate::skew::{AuxLink, BaseGerm, Chain, RatFn, SkewLocal};
use crate::vertexset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Identity,
    Reflect,
}

impl Chart {
    pub fn sign(self) -> i64 {
        match self {
            Chart::Identity => 1,
            Chart::Reflect => -1,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::Identity => "identity",
            Chart::Reflect => "reflect",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FibreDecl {
    pub label: String,
    pub base: Option<Rat>,
    pub chart: Chart,
    pub gamma: Vec<TypeIIPoint>,
}

/// A parsed definition file: the chain, its fibre declarations and initial vertex sets.
#[derive(Clone, Debug, PartialEq)]
pub struct DefinitionFile {
    pub chain: Chain,
    pub fibres: Vec<FibreDecl>,
    pub precision: i64,
}

impl DefinitionFile {
    /// Initial vertex set of fibre `j`.
    pub fn gamma(&self, j: usize) -> &[TypeIIPoint] {
        &self.fibres[j].gamma
    }

    /// The initial vertex sets, one per fibre.
    pub fn gammas(&self) -> Vec<VertexSet> {
        self.fibres.iter().map(|f| f.gamma.iter().cloned().collect()).collect()
    }
}

#[derive(Default)]
struct Section {
    kind: String,
    label: String,
    line: usize,
    keys: Vec<(String, String, usize, usize)>,
}

impl Section {
    fn get(&self, k: &str) -> Option<(&str, usize, usize)> {
        self.keys.iter().find(|(key, ..)| key == k).map(|(_, v, l, c)| (v.as_str(), *l, *c))
    }
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

/// Strip surrounding quotes, adjusting the column of the value.
fn unquote(v: &str, col: usize) -> (&str, usize) {
    if v.len() >= 2 && v.starts_with('"') && v.ends_with('"') {
        (&v[1..v.len() - 1], col + 1)
    } else {
        (v, col)
    }
}

fn split_sections(text: &str) -> Result<(Section, Vec<Section>)> {
    let mut header = Section::default();
    let mut sections: Vec<Section> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = match raw.find('#') {
            Some(i) if !raw[..i].contains('"') || raw[..i].matches('"').count() % 2 == 0 => &raw[..i],
            _ => raw,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if trimmed.starts_with('[') {
            let Some(inner) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
                return perr(line, indent + 1, "unterminated section header");
            };
            let mut parts = inner.split_whitespace();
            let kind = parts.next().unwrap_or("").to_string();
            let label = parts.next().unwrap_or("").to_string();
            if !matches!(kind.as_str(), "fibre" | "aux") || label.is_empty() || parts.next().is_some() {
                return perr(line, indent + 2, "expected [fibre <label>] or [aux <label>]");
            }
            sections.push(Section { kind, label, line, keys: Vec::new() });
            continue;
        }
        let Some(eq) = content.find('=') else {
            return perr(line, indent + 1, "expected key = value");
        };
        let key = content[..eq].trim().to_string();
        let after = &content[eq + 1..];
        let vcol = eq + 1 + (after.len() - after.trim_start().len());
        let value = after.trim().to_string();
        let target = sections.last_mut().unwrap_or(&mut header);
        if target.keys.iter().any(|(k, ..)| *k == key) {
            return perr(line, indent + 1, format!("duplicate key '{}'", key));
        }
        target.keys.push((key, value, line, vcol));
    }
    Ok((header, sections))
}

fn check_keys(s: &Section, allowed: &[&str]) -> Result<()> {
    for (k, _, l, _) in &s.keys {
        if !allowed.contains(&k.as_str()) {
            return perr(*l, 1, format!("unknown key '{}'", k));
        }
    }
    Ok(())
}

fn need<'s>(s: &'s Section, k: &str) -> Result<(&'s str, usize, usize)> {
    s.get(k).ok_or_else(|| Error::Parse {
        line: s.line,
        col: 1,
        msg: format!("section [{} {}] needs '{}'", s.kind, s.label, k),
    })
}

fn parse_usize(s: &Section, k: &str) -> Result<Option<usize>> {
    match s.get(k) {
        None => Ok(None),
        Some((v, l, c)) => v.parse().map(Some).or_else(|_| perr(l, c + 1, format!("'{}' must be a non-negative integer", k))),
    }
}

fn parse_rat_value(v: &str, l: usize, c: usize) -> Result<Rat> {
    let (v, c) = unquote(v, c);
    parse_rat(v.trim()).ok_or_else(|| Error::Parse { line: l, col: c + 1, msg: format!("expected a rational, got '{}'", v) })
}

fn parse_series_value(v: &str, l: usize, c: usize) -> Result<PuiseuxPoly> {
    let (v, c) = unquote(v, c);
    let mut cur = Cursor::new(v, l, c);
    let s = parse_series_at(&mut cur)?;
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    Ok(s)
}

fn parse_fn_value(v: &str, l: usize, c: usize) -> Result<RatFn> {
    let (v, c) = unquote(v, c);
    parse_ratfn_at(v, l, c)
}

fn parse_gamma(v: &str, l: usize, c: usize) -> Result<Vec<TypeIIPoint>> {
    let (v, c) = unquote(v, c);
    let mut cur = Cursor::new(v, l, c);
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        out.push(parse_point_at(&mut cur)?);
        if cur.at_end() {
            break;
        }
        if !cur.eat(b';') && !cur.eat(b',') {
            return cur.err("expected ';' between points");
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_chart(s: &Section) -> Result<Chart> {
    match s.get("chart") {
        None => Ok(Chart::Identity),
        Some((v, l, c)) => match unquote(v, c).0 {
            "identity" => Ok(Chart::Identity),
            "reflect" => Ok(Chart::Reflect),
            _ => perr(l, c + 1, "chart must be 'identity' or 'reflect'"),
        },
    }
}

/// Local model of a global map between fibres at `(b, e)` and `(bt, et)`.
fn localise(psi1: &RatFn, psi2: &RatFn, b: &Rat, e: Chart, bt: &Rat, et: Chart, line: usize) -> Result<SkewLocal> {
    let wrap = |err: Error| Error::Parse { line, col: 1, msg: err.to_string() };
    let p1 = psi1.recentre(b, e.sign()).map_err(wrap)?;
    let p1 = p1.as_series().cloned().ok_or_else(|| Error::Parse {
        line,
        col: 1,
        msg: "psi1 must be a polynomial in x".into(),
    })?;
    let phi1 = (&p1 - &PuiseuxPoly::constant(bt.clone())).scale(&int(et.sign()));
    if !phi1.coeff(&Rat::zero()).is_zero() {
        return perr(line, 1, format!("psi1({}) is not the base {} of the next fibre", b, bt));
    }
    let phi2 = psi2.recentre(b, e.sign()).map_err(wrap)?;
    let base = BaseGerm::new(phi1).map_err(wrap)?;
    SkewLocal::new(base, phi2).map_err(wrap)
}

fn local_model(s: &Section) -> Result<SkewLocal> {
    let (v1, l1, c1) = need(s, "phi1")?;
    let (v2, l2, c2) = need(s, "phi2")?;
    let phi1 = parse_series_value(v1, l1, c1)?;
    let base = BaseGerm::new(phi1).map_err(|e| Error::Parse { line: l1, col: c1 + 1, msg: e.to_string() })?;
    let phi2 = parse_fn_value(v2, l2, c2)?;
    SkewLocal::new(base, phi2).map_err(|e| Error::Parse { line: l2, col: c2 + 1, msg: e.to_string() })
}

pub fn parse_definition(text: &str) -> Result<DefinitionFile> {
    let (header, sections) = split_sections(text)?;
    check_keys(&header, &["period", "tail", "precision", "psi1", "psi2"])?;
    let period = parse_usize(&header, "period")?.unwrap_or(1);
    let tail = parse_usize(&header, "tail")?.unwrap_or(0);
    let precision = parse_usize(&header, "precision")?.map(|p| p as i64).unwrap_or(DEFAULT_PRECISION);
    let global = match (header.get("psi1"), header.get("psi2")) {
        (Some((a, la, ca)), Some((b, lb, cb))) => Some((parse_fn_value(a, la, ca)?, parse_fn_value(b, lb, cb)?)),
        (None, None) => None,
        _ => return perr(header.line.max(1), 1, "psi1 and psi2 must be given together"),
    };
    let fibre_secs: Vec<&Section> = sections.iter().filter(|s| s.kind == "fibre").collect();
    let aux_secs: Vec<&Section> = sections.iter().filter(|s| s.kind == "aux").collect();
    if fibre_secs.len() != period + tail {
        return perr(1, 1, format!("period {} and tail {} need {} fibre sections, found {}", period, tail, period + tail, fibre_secs.len()));
    }
    let mut fibres = Vec::new();
    for s in &fibre_secs {
        if fibres.iter().any(|f: &FibreDecl| f.label == s.label) {
            return perr(s.line, 1, format!("duplicate fibre '{}'", s.label));
        }
        let allowed: &[&str] = if global.is_some() { &["base", "chart", "gamma"] } else { &["base", "chart", "gamma", "phi1", "phi2"] };
        check_keys(s, allowed)?;
        let base = s.get("base").map(|(v, l, c)| parse_rat_value(v, l, c)).transpose()?;
        let gamma = match s.get("gamma") {
            Some((v, l, c)) => parse_gamma(v, l, c)?,
            None => Vec::new(),
        };
        fibres.push(FibreDecl { label: s.label.clone(), base, chart: parse_chart(s)?, gamma });
    }
    let n = fibres.len();
    let next = |j: usize| if j + 1 < n { j + 1 } else { tail };
    let mut links = Vec::new();
    for (j, s) in fibre_secs.iter().enumerate() {
        let link = match &global {
            Some((p1, p2)) => {
                let f = &fibres[j];
                let t = &fibres[next(j)];
                let b = f.base.clone().ok_or_else(|| Error::Parse { line: s.line, col: 1, msg: "fibre needs 'base' with a global model".into() })?;
                let bt = t.base.clone().ok_or_else(|| Error::Parse { line: s.line, col: 1, msg: format!("fibre '{}' needs 'base'", t.label) })?;
                localise(p1, p2, &b, f.chart, &bt, t.chart, s.line)?
            }
            None => local_model(s)?,
        };
        links.push(link);
    }
    let mut aux = Vec::new();
    for s in &aux_secs {
        let allowed: &[&str] = if global.is_some() { &["base", "target", "chart", "target_chart"] } else { &["base", "target", "phi1", "phi2"] };
        check_keys(s, allowed)?;
        let (bv, bl, bc) = need(s, "base")?;
        let (tv, tl, tc) = need(s, "target")?;
        let (b, bt) = (parse_rat_value(bv, bl, bc)?, parse_rat_value(tv, tl, tc)?);
        let local = match &global {
            Some((p1, p2)) => localise(p1, p2, &b, Chart::Identity, &bt, Chart::Identity, s.line)?,
            None => local_model(s)?,
        };
        aux.push(AuxLink { label: s.label.clone(), source: b, target: bt, local });
    }
    let labels = fibres.iter().map(|f| f.label.clone()).collect();
    let chain = Chain::new(labels, links, period, tail)?.with_aux(aux);
    Ok(DefinitionFile { chain, fibres, precision })
}

fn fmt_phi2(s: &SkewLocal) -> String {
    RatFn { num: s.num().clone(), den: s.den().clone() }.to_string()
}

/// Canonical form: header, then local models for every fibre and auxiliary link.
impl fmt::Display for DefinitionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "period = {}", self.chain.period())?;
        writeln!(f, "tail = {}", self.chain.tail())?;
        writeln!(f, "precision = {}", self.precision)?;
        for (j, fib) in self.fibres.iter().enumerate() {
            let link = self.chain.link(j);
            writeln!(f, "\n[fibre {}]", fib.label)?;
            if let Some(b) = &fib.base {
                writeln!(f, "base = {}", b)?;
            }
            if fib.chart != Chart::Identity {
                writeln!(f, "chart = {}", fib.chart)?;
            }
            writeln!(f, "phi1 = \"{}\"", link.base().series())?;
            writeln!(f, "phi2 = \"{}\"", fmt_phi2(link))?;
            if !fib.gamma.is_empty() {
                let pts: Vec<String> = fib.gamma.iter().map(|p| p.to_string()).collect();
                writeln!(f, "gamma = {}", pts.join("; "))?;
            }
        }
        for a in self.chain.aux() {
            writeln!(f, "\n[aux {}]", a.label)?;
            writeln!(f, "base = {}", a.source)?;
            writeln!(f, "target = {}", a.target)?;
            writeln!(f, "phi1 = \"{}\"", a.local.base().series())?;
            writeln!(f, "phi2 = \"{}\"", fmt_phi2(&a.local))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn fixture(name: &str) -> String {
        std::fs::read_to_string(format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)).unwrap()
    }

    #[test]
    fn thm_b_chain_transports_gauss() {
        let d = parse_definition(&fixture("thmB.skew")).unwrap();
        let c = &d.chain;
        assert_eq!((c.len(), c.next(0), c.next(1)), (2, 1, 1));
        let one = c.link(0);
        assert!(one.is_simple());
        let img = c.pushforward_chain(0, &TypeIIPoint::gauss(), 1).unwrap();
        assert_eq!(img, TypeIIPoint::on_zero_ray(rat(1, 1)));
        assert_eq!(c.link(1).scale_factor(), rat(1, 2));
        let aux = &c.aux()[0];
        assert!(aux.local.has_good_reduction());
        assert!(!one.has_good_reduction());
    }

    #[test]
    fn canonical_form_round_trips() {
        for name in ["thm6.skew", "thmB.skew", "xy2.skew", "goodred.skew"] {
            let d = parse_definition(&fixture(name)).unwrap();
            let printed = d.to_string();
            let again = parse_definition(&printed).unwrap();
            assert_eq!(again.to_string(), printed, "{}", name);
            assert_eq!(again.chain, d.chain, "{}", name);
            assert_eq!(again.fibres.iter().map(|f| &f.gamma).collect::<Vec<_>>(), d.fibres.iter().map(|f| &f.gamma).collect::<Vec<_>>());
        }
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "period = 1\n\n[fibre a]\nphi1 = \"x^2\"\nphi2 = \"x^4*y^-3 + * y\"\n";
        match parse_definition(bad) {
            Err(Error::Parse { line: 5, col, .. }) => assert_eq!(col, 20),
            other => panic!("{:?}", other),
        }
        let missing = "period = 2\n[fibre a]\nphi1 = x\nphi2 = y\n";
        assert!(matches!(parse_definition(missing), Err(Error::Parse { .. })));
        let badpt = "[fibre a]\nphi1 = x\nphi2 = y\ngamma = zeta(0, 1); zeta(1\n";
        assert!(matches!(parse_definition(badpt), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn base_must_map_to_next_fibre() {
        let txt = "psi1 = \"x^2\"\npsi2 = \"y\"\n[fibre a]\nbase = 2\n";
        assert!(parse_definition(txt).is_err());
    }
}
