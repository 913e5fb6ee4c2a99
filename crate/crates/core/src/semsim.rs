//! Maximally informative common ancestor (MICA) similarity.
//!
//! Term similarity is the largest normalized IC over the shared reflexive
//! ancestors of both terms. Gene similarity (SimMax) is the largest term
//! similarity over every pair of retained annotations of the two genes.

use alloc::string::String;

use crate::bitset::Ones;
use crate::corpus::AnnotationCorpus;
use crate::error::SimilarityError;
use crate::ic::IcTable;
use crate::ontology::{Ontology, TermIdx};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermSimilarity {
    pub value: f64,
    pub mica: TermIdx,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenePairSim {
    pub gene_a: String,
    pub gene_b: String,
    pub simmax: f64,
    /// `(term of gene_a, term of gene_b, mica)`.
    pub best_pair: (TermIdx, TermIdx, TermIdx),
}

/// Similarity of two terms by index. Ties between candidate ancestors go to
/// the smallest index, i.e. the lexicographically smallest id.
pub fn term_similarity_idx(
    o: &Ontology,
    ic: &IcTable,
    t1: TermIdx,
    t2: TermIdx,
) -> Option<TermSimilarity> {
    let (a, b) = (o.ancestor_row(t1), o.ancestor_row(t2));
    let mut best: Option<TermSimilarity> = None;
    for (wi, (x, y)) in a.iter().zip(b).enumerate() {
        let common = x & y;
        for bit in Ones::new(core::slice::from_ref(&common)) {
            let t = TermIdx::from_usize(wi * 64 + bit);
            let Some(v) = ic.normalized(t) else { continue };
            if best.is_none_or(|b| v > b.value) {
                best = Some(TermSimilarity { value: v, mica: t });
            }
        }
    }
    best
}

pub fn term_similarity(
    o: &Ontology,
    ic: &IcTable,
    t1: &str,
    t2: &str,
) -> Result<TermSimilarity, SimilarityError> {
    let (a, b) = (o.term(t1)?, o.term(t2)?);
    term_similarity_idx(o, ic, a, b)
        .ok_or_else(|| SimilarityError::NoDefinedCommonAncestor(t1.into(), t2.into()))
}

/// SimMax of two genes.
///
/// Ties across term pairs are resolved on `(mica, min term, max term)` so
/// the result does not depend on argument order.
pub fn gene_similarity(
    o: &Ontology,
    ic: &IcTable,
    corpus: &AnnotationCorpus,
    g1: &str,
    g2: &str,
) -> Result<GenePairSim, SimilarityError> {
    let terms1 = corpus.terms_of(g1)?;
    let terms2 = corpus.terms_of(g2)?;
    if terms1.is_empty() {
        return Err(SimilarityError::EmptyTermSet(g1.into()));
    }
    if terms2.is_empty() {
        return Err(SimilarityError::EmptyTermSet(g2.into()));
    }

    type Key = (TermIdx, TermIdx, TermIdx);
    let mut best: Option<(f64, Key, (TermIdx, TermIdx))> = None;
    for &t1 in terms1 {
        for &t2 in terms2 {
            let Some(s) = term_similarity_idx(o, ic, t1, t2) else {
                continue;
            };
            let key = (s.mica, t1.min(t2), t1.max(t2));
            let better = match &best {
                None => true,
                Some((v, k, _)) => s.value > *v || (s.value == *v && key < *k),
            };
            if better {
                best = Some((s.value, key, (t1, t2)));
            }
        }
    }
    let (simmax, (mica, _, _), (t1, t2)) =
        best.ok_or_else(|| SimilarityError::NoDefinedCommonAncestor(g1.into(), g2.into()))?;
    Ok(GenePairSim {
        gene_a: g1.into(),
        gene_b: g2.into(),
        simmax,
        best_pair: (t1, t2, mica),
    })
}
