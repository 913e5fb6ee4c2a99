//! Information-content tables.
//!
//! Three metrics share one table type:
//!
//! - **gIC**: relative drop in ontology entropy once a term and its
//!   ancestors have been assigned, `(H − H_z) / H`. Needs no corpus.
//! - **sIC**: `1 − ln(|Δ_t| + 1) / ln |N|`, from descendant counts only.
//! - **rIC**: surprisal `−log2 p(t)` of the propagated corpus frequency.
//!
//! Every table also carries values divided by the table maximum, which is
//! what similarity measures consume.

use alloc::vec::Vec;
use core::fmt;

use crate::corpus::AnnotationCorpus;
use crate::entropy::EntropyModel;
use crate::error::MetricError;
use crate::ontology::{Ontology, TermIdx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IcMetric {
    Gic,
    Ric,
    Sic,
}

impl IcMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            IcMetric::Gic => "gic",
            IcMetric::Ric => "ric",
            IcMetric::Sic => "sic",
        }
    }
}

impl fmt::Display for IcMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for IcMetric {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gic" => Ok(IcMetric::Gic),
            "ric" => Ok(IcMetric::Ric),
            "sic" => Ok(IcMetric::Sic),
            _ => Err(UnknownMetric),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("metric must be one of gic, ric, sic")]
pub struct UnknownMetric;

#[derive(Clone, Debug, PartialEq)]
pub struct IcTable {
    metric: IcMetric,
    /// `None` marks a term without a defined value (rIC only).
    raw: Vec<Option<f64>>,
    normalized: Vec<Option<f64>>,
    max_raw: f64,
    /// Defined terms whose raw value falls outside `[0, 1]` for bounded
    /// metrics. Values are kept as computed.
    out_of_range: Vec<TermIdx>,
}

impl IcTable {
    /// Normalizes `raw` by its maximum over defined values.
    ///
    /// A table whose maximum is zero (every defined term carries no
    /// information) normalizes to all zeros.
    pub fn from_raw(metric: IcMetric, raw: Vec<Option<f64>>) -> IcTable {
        let max_raw = raw
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let max_raw = if max_raw.is_finite() { max_raw } else { 0.0 };
        let normalized = raw
            .iter()
            .map(|v| v.map(|v| if max_raw > 0.0 { v / max_raw } else { 0.0 }))
            .collect();
        let bounded = matches!(metric, IcMetric::Gic | IcMetric::Sic);
        let out_of_range = raw
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match v {
                Some(v) if bounded && !(0.0..=1.0).contains(v) => Some(TermIdx::from_usize(i)),
                _ => None,
            })
            .collect();
        IcTable {
            metric,
            raw,
            normalized,
            max_raw,
            out_of_range,
        }
    }

    pub fn metric(&self) -> IcMetric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn raw(&self, t: TermIdx) -> Option<f64> {
        self.raw[t.index()]
    }

    pub fn normalized(&self, t: TermIdx) -> Option<f64> {
        self.normalized[t.index()]
    }

    pub fn raw_values(&self) -> &[Option<f64>] {
        &self.raw
    }

    pub fn normalized_values(&self) -> &[Option<f64>] {
        &self.normalized
    }

    pub fn max_raw(&self) -> f64 {
        self.max_raw
    }

    pub fn is_defined(&self, t: TermIdx) -> bool {
        self.raw[t.index()].is_some()
    }

    pub fn undefined_terms(&self) -> impl Iterator<Item = TermIdx> + '_ {
        self.raw
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(i, _)| TermIdx::from_usize(i))
    }

    pub fn out_of_range(&self) -> &[TermIdx] {
        &self.out_of_range
    }

    /// Same table with every raw value multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> IcTable {
        let raw = self.raw.iter().map(|v| v.map(|v| v * factor)).collect();
        IcTable::from_raw(self.metric, raw)
    }
}

fn gic_values(
    model: &EntropyModel<'_>,
    h: f64,
    terms: impl Iterator<Item = TermIdx>,
) -> Vec<Option<f64>> {
    terms
        .map(|z| Some((h - model.conditional_bits(z)) / h))
        .collect()
}

/// gIC for every term, single-threaded.
pub fn gic(o: &Ontology) -> Result<IcTable, MetricError> {
    let model = EntropyModel::new(o);
    let h = model.total_bits();
    if h <= 0.0 {
        return Err(MetricError::DegenerateOntology);
    }
    Ok(IcTable::from_raw(
        IcMetric::Gic,
        gic_values(&model, h, o.terms()),
    ))
}

/// gIC for every term on `workers` threads.
///
/// Each term is independent and results are gathered by index, so the
/// table is bit-identical to [`gic`] for any worker count.
#[cfg(feature = "parallel")]
pub fn gic_parallel(o: &Ontology, workers: usize) -> Result<IcTable, MetricError> {
    use rayon::prelude::*;

    if workers <= 1 {
        return gic(o);
    }
    let model = EntropyModel::new(o);
    let h = model.total_bits();
    if h <= 0.0 {
        return Err(MetricError::DegenerateOntology);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let raw: Vec<Option<f64>> = pool.install(|| {
        (0..o.len())
            .into_par_iter()
            .map(|i| Some((h - model.conditional_bits(TermIdx::from_usize(i))) / h))
            .collect()
    });
    Ok(IcTable::from_raw(IcMetric::Gic, raw))
}

/// gIC of a single term.
pub fn gic_of(o: &Ontology, id: &str) -> Result<f64, MetricError> {
    let z = o.term(id)?;
    let model = EntropyModel::new(o);
    let h = model.total_bits();
    if h <= 0.0 {
        return Err(MetricError::DegenerateOntology);
    }
    Ok((h - model.conditional_bits(z)) / h)
}

pub fn sic(o: &Ontology) -> Result<IcTable, MetricError> {
    let n = o.len();
    if n < 2 {
        return Err(MetricError::DegenerateOntology);
    }
    let ln_n = libm::log(n as f64);
    let raw = o
        .terms()
        .map(|t| Some(1.0 - libm::log((o.descendant_count(t) + 1) as f64) / ln_n))
        .collect();
    Ok(IcTable::from_raw(IcMetric::Sic, raw))
}

pub fn ric(o: &Ontology, corpus: &AnnotationCorpus) -> Result<IcTable, MetricError> {
    if corpus.total() == 0 {
        return Err(MetricError::EmptyCorpus);
    }
    if corpus.term_slots() != o.len() {
        return Err(MetricError::SizeMismatch {
            table: corpus.term_slots(),
            ontology: o.len(),
        });
    }
    let raw = o
        .terms()
        .map(|t| {
            let p = corpus.probability(t);
            // Subtracting from +0.0 keeps -log2(1) from printing as -0.
            (p > 0.0).then(|| 0.0 - libm::log2(p))
        })
        .collect();
    Ok(IcTable::from_raw(IcMetric::Ric, raw))
}

/// Edges `(child, parent)` where the child's raw value is below the
/// parent's, both defined.
pub fn monotonicity_violations(o: &Ontology, table: &IcTable) -> usize {
    o.edges()
        .iter()
        .filter(|(c, p)| match (table.raw(*c), table.raw(*p)) {
            (Some(c), Some(p)) => c < p,
            _ => false,
        })
        .count()
}
