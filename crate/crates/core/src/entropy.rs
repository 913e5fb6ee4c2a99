//! Joint entropy of drawing a two-term annotation from an ontology.
//!
//! The first term `x` is drawn uniformly from the candidate first terms. The
//! second term is drawn uniformly from the terms `x` does not already imply
//! or refine: everything except `x`, its ancestors and its descendants, with
//! the root always kept selectable. Conditioning on a previously assigned
//! term `z` additionally removes `z` and its ancestors from both draws.
//!
//! All sizes reduce to closure cardinalities. `Δ_x` and `Π_x` are disjoint
//! and `Π_x` always holds the root, so for the unconditioned case
//! `|Y_x| = |N| − |Δ_x| − |Π_x| + 1`, and for the conditioned case the
//! overlap `|(Δ_x ∪ Π_x) ∩ Π_z|` is subtracted back in.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MetricError, OntologyError};
use crate::ontology::{Ontology, TermIdx, TermSet};

/// Default term cap for [`ontology_entropy_oracle`].
pub const ORACLE_TERM_CAP: usize = 2_000;

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    /// `H(X, Y_x)` in bits.
    pub total_bits: f64,
    /// `H(X) = log2 |N|`.
    pub first_term_entropy: f64,
    /// Per first term `x`, `log2 |Y_x|`, indexed by term.
    pub conditional_bits: Vec<f64>,
    /// Per first term `x`, `|Y_x|`, indexed by term.
    pub y_sizes: Vec<usize>,
}

impl EntropyReport {
    /// `H(Y_x | X)`.
    pub fn conditional_entropy(&self) -> f64 {
        self.total_bits - self.first_term_entropy
    }
}

/// Second-term candidates `Y_x` for first term `id`.
pub fn candidate_second_terms(o: &Ontology, id: &str) -> Result<TermSet, OntologyError> {
    let x = o.term(id)?;
    let mut words: Vec<u64> = o
        .ancestor_row(x)
        .iter()
        .zip(o.descendant_row(x))
        .map(|(a, d)| !(a | d))
        .collect();
    let n = o.len();
    if !n.is_multiple_of(64) {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << (n % 64)) - 1;
        }
    }
    let r = o.root().index();
    words[r / 64] |= 1 << (r % 64);
    Ok(TermSet::from_words(words))
}

/// Precomputed per-ontology quantities shared by every entropy evaluation.
///
/// Holds `log2 k` for every size that can occur and `|Δ_x| + |Π_x|` per
/// term. Read-only after construction; share one model across workers.
#[derive(Clone, Debug)]
pub struct EntropyModel<'a> {
    ontology: &'a Ontology,
    log2: Vec<f64>,
    related: Vec<usize>,
}

impl<'a> EntropyModel<'a> {
    pub fn new(ontology: &'a Ontology) -> Self {
        let n = ontology.len();
        let log2 = (0..=n + 1)
            .map(|k| if k == 0 { 0.0 } else { libm::log2(k as f64) })
            .collect();
        let related = ontology
            .terms()
            .map(|t| ontology.ancestor_count(t) + ontology.descendant_count(t))
            .collect();
        EntropyModel {
            ontology,
            log2,
            related,
        }
    }

    pub fn ontology(&self) -> &'a Ontology {
        self.ontology
    }

    #[inline]
    fn y_size(&self, x: TermIdx) -> usize {
        self.ontology.len() - self.related[x.index()] + 1
    }

    pub fn report(&self) -> EntropyReport {
        let o = self.ontology;
        let y_sizes: Vec<usize> = o.terms().map(|x| self.y_size(x)).collect();
        let conditional_bits: Vec<f64> = y_sizes.iter().map(|&k| self.log2[k]).collect();
        let total_bits = joint_bits(&self.log2, o.len(), conditional_bits.iter().copied());
        EntropyReport {
            total_bits,
            first_term_entropy: self.log2[o.len()],
            conditional_bits,
            y_sizes,
        }
    }

    pub fn total_bits(&self) -> f64 {
        let o = self.ontology;
        joint_bits(
            &self.log2,
            o.len(),
            o.terms().map(|x| self.log2[self.y_size(x)]),
        )
    }

    /// `H(X_z, Y_xz | z)` in bits.
    ///
    /// Terms are visited in index order so the floating-point sum is the same
    /// as [`EntropyModel::total_bits`] when `z` is the root.
    pub fn conditional_bits(&self, z: TermIdx) -> f64 {
        let o = self.ontology;
        let n = o.len();
        let pi_z = o.ancestor_row(z);
        let pi_z_len = o.ancestor_count(z);
        // Only words where Π_z has bits can contribute to the overlap.
        let pi_z_words: Vec<(usize, u64)> = pi_z
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0)
            .map(|(i, w)| (i, *w))
            .collect();
        let root = o.root();

        let mut x_count = 0usize;
        let mut sum = 0.0f64;
        for x in o.terms() {
            if x != root && o.is_ancestor(x, z) {
                continue;
            }
            x_count += 1;
            let (anc, desc) = (o.ancestor_row(x), o.descendant_row(x));
            let overlap: usize = pi_z_words
                .iter()
                .map(|&(i, w)| ((anc[i] | desc[i]) & w).count_ones() as usize)
                .sum();
            let union = self.related[x.index()] + pi_z_len - overlap;
            sum += self.log2[n - union + 1];
        }
        joint_bits(&self.log2, x_count, core::iter::once(sum))
    }
}

/// `log2 count + (Σ log2 |Y|) / count`.
#[inline]
fn joint_bits(log2: &[f64], count: usize, terms: impl Iterator<Item = f64>) -> f64 {
    let sum: f64 = terms.fold(0.0, |acc, v| acc + v);
    log2[count] + sum / count as f64
}

/// `H(M)` with per-first-term detail.
pub fn ontology_entropy(o: &Ontology) -> EntropyReport {
    EntropyModel::new(o).report()
}

/// `H(X_z, Y_xz | z)` for a single `z`.
pub fn conditional_entropy_given(o: &Ontology, z: &str) -> Result<f64, OntologyError> {
    let z = o.term(z)?;
    Ok(EntropyModel::new(o).conditional_bits(z))
}

/// Materializes the joint distribution `p(x, y)` term by term and sums
/// `−p log2 p`. Quadratic in `|N|`; refuses ontologies above `cap` terms.
pub fn ontology_entropy_oracle(o: &Ontology, cap: usize) -> Result<f64, MetricError> {
    let n = o.len();
    if n > cap {
        return Err(MetricError::TooLargeForOracle { terms: n, cap });
    }
    let root = o.root();
    let mut joint: Vec<f64> = Vec::new();
    let mut candidates = vec![false; n];
    for x in o.terms() {
        for y in o.terms() {
            let excluded = o.is_ancestor(y, x) || o.is_ancestor(x, y);
            candidates[y.index()] = y == root || !excluded;
        }
        let size = candidates.iter().filter(|c| **c).count();
        let p = (1.0 / n as f64) * (1.0 / size as f64);
        joint.extend(candidates.iter().filter(|c| **c).map(|_| p));
    }
    Ok(-joint
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| p * libm::log2(*p))
        .sum::<f64>())
}
