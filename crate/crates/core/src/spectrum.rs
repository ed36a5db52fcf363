//! Spectrum reports shared by all three computation routes, plus the
//! tolerance-based multiset comparison used to cross-check them.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Overlift,
    Contfrac,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Overlift => "overlift",
            Method::Contfrac => "contfrac",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a sector eigenvalue was not carried into the token-graph spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiscardReason {
    /// The eigenspace does not vanish on the listed short orbits, whose
    /// periods are not multiples of the sector order.
    ShortOrbit { orbits: Vec<usize>, order: usize },
    /// The `lambda = 4` root of an odd sector of an even 2-token cycle.
    ExcludedFour,
}

impl fmt::Display for DiscardReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscardReason::ShortOrbit { orbits, order } => {
                write!(f, "nonzero on short orbit(s) {orbits:?} with period not divisible by o(r) = {order}")
            }
            DiscardReason::ExcludedFour => f.write_str("lambda = 4 with f_nu != 0 on the period-n/2 orbit"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorEntry {
    pub lambda: f64,
    pub kept: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<DiscardReason>,
}

/// All eigenvalues produced for one evaluation point z = exp(2 pi i r / n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorSpectrum {
    pub r: usize,
    pub entries: Vec<SectorEntry>,
}

impl SectorSpectrum {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }

    pub fn kept(&self) -> Vec<f64> {
        self.entries.iter().filter(|e| e.kept).map(|e| e.lambda).collect()
    }

    pub fn discarded(&self) -> Vec<f64> {
        self.entries.iter().filter(|e| !e.kept).map(|e| e.lambda).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub k: usize,
    pub method: Method,
    /// Empty for the brute-force route.
    pub sectors: Vec<SectorSpectrum>,
    kept: Vec<f64>,
}

impl SpectrumReport {
    pub fn unsectored(n: usize, k: usize, method: Method, mut kept: Vec<f64>) -> Self {
        kept.sort_by(f64::total_cmp);
        Self {
            n,
            k,
            method,
            sectors: Vec::new(),
            kept,
        }
    }

    /// Assembles a report from per-sector results; the kept multiset is the
    /// sorted union of every kept entry.
    pub fn from_sectors(n: usize, k: usize, method: Method, mut sectors: Vec<SectorSpectrum>) -> Self {
        sectors.sort_by_key(|s| s.r);
        let mut kept: Vec<f64> = sectors.iter().flat_map(SectorSpectrum::kept).collect();
        kept.sort_by(f64::total_cmp);
        Self {
            n,
            k,
            method,
            sectors,
            kept,
        }
    }

    /// Sorted ascending.
    pub fn kept(&self) -> &[f64] {
        &self.kept
    }

    /// Every discarded `(r, lambda)` with its reason.
    pub fn discarded(&self) -> Vec<(usize, f64, DiscardReason)> {
        self.sectors
            .iter()
            .flat_map(|s| {
                s.entries.iter().filter(|e| !e.kept).map(move |e| {
                    (s.r, e.lambda, e.reason.clone().unwrap_or(DiscardReason::ExcludedFour))
                })
            })
            .collect()
    }

    pub fn entry_count(&self) -> usize {
        self.sectors.iter().map(|s| s.entries.len()).sum()
    }

    pub fn sector(&self, r: usize) -> Option<&SectorSpectrum> {
        self.sectors.iter().find(|s| s.r == r)
    }

    /// Smallest kept eigenvalue above `zero_tol`.
    pub fn algebraic_connectivity(&self, zero_tol: f64) -> Option<f64> {
        self.kept.iter().copied().find(|&x| x > zero_tol)
    }
}

/// First position where two sorted multisets disagree.
#[derive(Debug, Clone, PartialEq)]
pub enum Mismatch {
    Length { left: usize, right: usize },
    Value { index: usize, left: f64, right: f64 },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Length { left, right } => write!(f, "sizes differ: {left} vs {right}"),
            Mismatch::Value { index, left, right } => {
                write!(f, "value #{index} differs: {left} vs {right} (|diff| = {:e})", (left - right).abs())
            }
        }
    }
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Sorts both sides and compares pointwise with absolute tolerance `tol`.
pub fn compare_multisets(left: &[f64], right: &[f64], tol: f64) -> Result<(), Mismatch> {
    if left.len() != right.len() {
        return Err(Mismatch::Length {
            left: left.len(),
            right: right.len(),
        });
    }
    let (l, r) = (sorted(left), sorted(right));
    for (index, (&a, &b)) in l.iter().zip(&r).enumerate() {
        if !((a - b).abs() <= tol) {
            return Err(Mismatch::Value { index, left: a, right: b });
        }
    }
    Ok(())
}

/// Largest pointwise deviation after sorting, or `None` on a length mismatch.
pub fn max_deviation(left: &[f64], right: &[f64]) -> Option<f64> {
    if left.len() != right.len() {
        return None;
    }
    let (l, r) = (sorted(left), sorted(right));
    Some(l.iter().zip(&r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// Whether `sub` embeds into `sup` as a sub-multiset, matching values within
/// `tol`. Both inputs are sorted internally; greedy matching is exact for
/// sorted real sequences.
pub fn is_submultiset(sub: &[f64], sup: &[f64], tol: f64) -> bool {
    let (sub, sup) = (sorted(sub), sorted(sup));
    let mut j = 0;
    for &x in &sub {
        while j < sup.len() && sup[j] < x - tol {
            j += 1;
        }
        if j == sup.len() || (sup[j] - x).abs() > tol {
            return false;
        }
        j += 1;
    }
    true
}

/// Groups sorted values into runs whose consecutive gaps are at most `tol`.
/// Returns index ranges into `values`.
pub fn cluster_sorted(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}
