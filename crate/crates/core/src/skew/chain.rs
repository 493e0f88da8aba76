//! Chains of local models over a preperiodic base orbit.

use super::SkewLocal;
use crate::berkovich::TypeIIPoint;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// A local model between two base points outside the chain, kept for reduction checks.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxLink {
    pub label: String,
    pub source: Rat,
    pub target: Rat,
    pub local: SkewLocal,
}

/// Fibres `0..N` with `N = tail + period`; link `j` maps fibre `j` to fibre `next(j)`, where
/// `next(N - 1) = tail`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    labels: Vec<String>,
    links: Vec<SkewLocal>,
    period: usize,
    tail: usize,
    aux: Vec<AuxLink>,
}

impl Chain {
    pub fn new(labels: Vec<String>, links: Vec<SkewLocal>, period: usize, tail: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::Precondition("chain period must be positive".into()));
        }
        if links.len() != period + tail || labels.len() != links.len() {
            return Err(Error::Precondition(format!(
                "chain with period {} and tail {} needs {} fibres, got {}",
                period,
                tail,
                period + tail,
                links.len()
            )));
        }
        Ok(Chain { labels, links, period, tail, aux: Vec::new() })
    }

    /// The period-1 chain of a single fixed-fibre map.
    pub fn single(local: SkewLocal) -> Self {
        Chain { labels: vec!["0".into()], links: vec![local], period: 1, tail: 0, aux: Vec::new() }
    }

    pub fn with_aux(mut self, aux: Vec<AuxLink>) -> Self {
        self.aux = aux;
        self
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, j: usize) -> &str {
        &self.labels[j]
    }

    pub fn fibre_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn link(&self, j: usize) -> &SkewLocal {
        &self.links[j]
    }

    pub fn links(&self) -> &[SkewLocal] {
        &self.links
    }

    pub fn aux(&self) -> &[AuxLink] {
        &self.aux
    }

    pub fn next(&self, j: usize) -> usize {
        if j + 1 < self.len() {
            j + 1
        } else {
            self.tail
        }
    }

    pub fn fibre_after(&self, mut j: usize, n: usize) -> usize {
        for _ in 0..n {
            j = self.next(j);
        }
        j
    }

    pub fn is_periodic_fibre(&self, j: usize) -> bool {
        j >= self.tail
    }

    pub fn all_simple(&self) -> bool {
        self.links.iter().all(|l| l.is_simple())
    }

    /// Good reduction of every link, auxiliary links included.
    pub fn all_good_reduction(&self) -> bool {
        self.links.iter().all(|l| l.has_good_reduction())
            && self.aux.iter().all(|a| a.local.has_good_reduction())
    }

    /// `n` link pushforwards starting at fibre `j`.
    pub fn pushforward_chain(&self, j: usize, z: &TypeIIPoint, n: usize) -> Result<TypeIIPoint> {
        Ok(self.orbit(j, z, n)?.pop().map(|(_, p)| p).unwrap_or_else(|| z.clone()))
    }

    /// The orbit `(fibre, point)` for `n` steps, starting point included.
    pub fn orbit(&self, j: usize, z: &TypeIIPoint, n: usize) -> Result<Vec<(usize, TypeIIPoint)>> {
        let mut out = vec![(j, z.clone())];
        let (mut j, mut z) = (j, z.clone());
        for _ in 0..n {
            z = self.links[j].pushforward(&z)?;
            j = self.next(j);
            out.push((j, z.clone()));
        }
        Ok(out)
    }
}
