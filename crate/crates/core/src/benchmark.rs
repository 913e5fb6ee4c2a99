//! Sequence-similarity benchmark: RRBS, fixed-size binning and a
//! least-squares summary of SimMax against RRBS.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{BenchmarkError, MissingScore};

/// Pairs whose RRBS is within this distance of 1 count as identical.
pub const IDENTICAL_TOLERANCE: f64 = 1e-12;

pub const DEFAULT_BIN_SIZE: usize = 1000;

/// Directed bit scores keyed by query, then subject.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BitScores {
    scores: BTreeMap<String, BTreeMap<String, f64>>,
    len: usize,
}

impl BitScores {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a score. A repeated `(query, subject)` keeps the larger
    /// score; returns `true` when the key was already present.
    pub fn insert(&mut self, query: &str, subject: &str, score: f64) -> bool {
        let row = match self.scores.get_mut(query) {
            Some(row) => row,
            None => self.scores.entry(String::from(query)).or_default(),
        };
        match row.get_mut(subject) {
            Some(old) => {
                if score > *old {
                    *old = score;
                }
                true
            }
            None => {
                row.insert(String::from(subject), score);
                self.len += 1;
                false
            }
        }
    }

    pub fn get(&self, query: &str, subject: &str) -> Option<f64> {
        self.scores.get(query)?.get(subject).copied()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.scores
            .iter()
            .flat_map(|(q, row)| row.iter().map(move |(s, v)| (q.as_str(), s.as_str(), *v)))
    }

    /// Unordered pairs of distinct proteins that have a score in at least
    /// one direction, each as `(smaller id, larger id)`, sorted.
    pub fn candidate_pairs(&self) -> Vec<(&str, &str)> {
        let mut pairs: Vec<(&str, &str)> = self
            .iter()
            .filter(|(q, s, _)| q != s)
            .map(|(q, s, _)| if q < s { (q, s) } else { (s, q) })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Gathers the four scores RRBS needs for `a` and `b`.
    pub fn score_pair(&self, a: &str, b: &str) -> Result<ScorePair, BenchmarkError> {
        let fetch = |q: &str, s: &str| {
            self.get(q, s).ok_or_else(|| {
                BenchmarkError::MissingScore(MissingScore {
                    query: q.into(),
                    subject: s.into(),
                })
            })
        };
        Ok(ScorePair {
            a: a.into(),
            b: b.into(),
            bits_ab: fetch(a, b)?,
            bits_ba: fetch(b, a)?,
            bits_aa: fetch(a, a)?,
            bits_bb: fetch(b, b)?,
        })
    }

    pub fn rrbs(&self, a: &str, b: &str) -> Result<f64, BenchmarkError> {
        self.score_pair(a, b)?.rrbs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScorePair {
    pub a: String,
    pub b: String,
    pub bits_ab: f64,
    pub bits_ba: f64,
    pub bits_aa: f64,
    pub bits_bb: f64,
}

impl ScorePair {
    /// Relative reciprocal BLAST score.
    pub fn rrbs(&self) -> Result<f64, BenchmarkError> {
        rrbs(self.bits_ab, self.bits_ba, self.bits_aa, self.bits_bb)
            .ok_or_else(|| BenchmarkError::ZeroDenominator(self.a.clone(), self.b.clone()))
    }
}

/// `(ab + ba) / (aa + bb)`, or `None` when the self scores sum to zero.
pub fn rrbs(bits_ab: f64, bits_ba: f64, bits_aa: f64, bits_bb: f64) -> Option<f64> {
    let denom = bits_aa + bits_bb;
    (denom > 0.0).then(|| (bits_ab + bits_ba) / denom)
}

/// One benchmark data point: a gene/protein pair with both similarities.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoredPair {
    pub a: String,
    pub b: String,
    pub simmax: f64,
    pub rrbs: f64,
}

impl ScoredPair {
    pub fn new(a: impl Into<String>, b: impl Into<String>, simmax: f64, rrbs: f64) -> Self {
        ScoredPair {
            a: a.into(),
            b: b.into(),
            simmax,
            rrbs,
        }
    }

    pub fn is_identical(&self) -> bool {
        (self.rrbs - 1.0).abs() <= IDENTICAL_TOLERANCE
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RegressionInput {
    /// Regress bin mean SimMax on bin mean RRBS.
    #[default]
    BinMeans,
    /// Regress over individual pairs.
    RawPairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchmarkOptions {
    pub bin_size: usize,
    pub exclude_identical: bool,
    pub regression: RegressionInput,
}

impl Default for BenchmarkOptions {
    fn default() -> Self {
        BenchmarkOptions {
            bin_size: DEFAULT_BIN_SIZE,
            exclude_identical: true,
            regression: RegressionInput::BinMeans,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bin {
    pub index: usize,
    pub count: usize,
    pub mean_rrbs: f64,
    pub mean_simmax: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkReport {
    /// Bins over every pair, identical ones included.
    pub bins: Vec<Bin>,
    /// `max - min`.
    pub range: f64,
    /// Mean SimMax of the lowest-RRBS bin.
    pub min: f64,
    /// Mean SimMax of the highest-RRBS bin.
    pub max: f64,
    pub r2: f64,
    pub fit: LinearFit,
    /// Pairs dropped from the regression as identical.
    pub excluded_identical: usize,
}

fn sort_pairs(pairs: &mut [&ScoredPair]) {
    pairs.sort_by(|x, y| {
        x.rrbs
            .total_cmp(&y.rrbs)
            .then(x.simmax.total_cmp(&y.simmax))
            .then_with(|| (&x.a, &x.b).cmp(&(&y.a, &y.b)))
    });
}

/// Consecutive bins of `bin_size` over already sorted pairs. The last bin
/// may be partial.
pub fn bin_pairs(sorted: &[&ScoredPair], bin_size: usize) -> Vec<Bin> {
    sorted
        .chunks(bin_size)
        .enumerate()
        .map(|(index, chunk)| {
            let count = chunk.len();
            let sum_r: f64 = chunk.iter().map(|p| p.rrbs).sum();
            let sum_s: f64 = chunk.iter().map(|p| p.simmax).sum();
            Bin {
                index,
                count,
                mean_rrbs: sum_r / count as f64,
                mean_simmax: sum_s / count as f64,
            }
        })
        .collect()
}

/// Closed-form simple linear regression of `y` on `x`.
///
/// `r2 = 1 - SS_res / SS_tot`. When `y` is constant the fit is exact and
/// `r2` is reported as 1.
pub fn ols(x: &[f64], y: &[f64]) -> Result<LinearFit, BenchmarkError> {
    let n = x.len().min(y.len());
    if n < 2 {
        return Err(BenchmarkError::TooFewBins(n));
    }
    let nf = n as f64;
    let mean_x = x[..n].iter().sum::<f64>() / nf;
    let mean_y = y[..n].iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (xi, yi) in x[..n].iter().zip(&y[..n]) {
        let (dx, dy) = (xi - mean_x, yi - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx <= 0.0 {
        return Err(BenchmarkError::DegenerateRegression);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = x[..n]
        .iter()
        .zip(&y[..n])
        .map(|(xi, yi)| {
            let e = yi - (intercept + slope * xi);
            e * e
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(LinearFit {
        slope,
        intercept,
        r2,
        points: n,
    })
}

pub fn run_benchmark(
    pairs: &[ScoredPair],
    options: BenchmarkOptions,
) -> Result<BenchmarkReport, BenchmarkError> {
    if options.bin_size == 0 {
        return Err(BenchmarkError::ZeroBinSize);
    }
    if pairs.len() < 2 {
        return Err(BenchmarkError::TooFewPairs(pairs.len()));
    }
    if let Some(p) = pairs
        .iter()
        .find(|p| !p.rrbs.is_finite() || !p.simmax.is_finite())
    {
        return Err(BenchmarkError::NonFinite(alloc::format!("{}/{}", p.a, p.b)));
    }

    let mut sorted: Vec<&ScoredPair> = pairs.iter().collect();
    sort_pairs(&mut sorted);
    let bins = bin_pairs(&sorted, options.bin_size);
    let min = bins[0].mean_simmax;
    let max = bins[bins.len() - 1].mean_simmax;

    let retained: Vec<&ScoredPair> = if options.exclude_identical {
        sorted
            .iter()
            .copied()
            .filter(|p| !p.is_identical())
            .collect()
    } else {
        sorted.clone()
    };
    let excluded_identical = sorted.len() - retained.len();

    let fit = match options.regression {
        RegressionInput::BinMeans => {
            let reg_bins = bin_pairs(&retained, options.bin_size);
            let x: Vec<f64> = reg_bins.iter().map(|b| b.mean_rrbs).collect();
            let y: Vec<f64> = reg_bins.iter().map(|b| b.mean_simmax).collect();
            ols(&x, &y)?
        }
        RegressionInput::RawPairs => {
            let x: Vec<f64> = retained.iter().map(|p| p.rrbs).collect();
            let y: Vec<f64> = retained.iter().map(|p| p.simmax).collect();
            ols(&x, &y)?
        }
    };

    Ok(BenchmarkReport {
        bins,
        range: max - min,
        min,
        max,
        r2: fit.r2,
        fit,
        excluded_identical,
    })
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap_or(Ordering::Equal));
        let mut r = alloc::vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / libm::sqrt(sxx * syy))
}
