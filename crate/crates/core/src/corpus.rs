//! Gene → term annotation corpora and propagated term frequencies.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::Ones;
use crate::error::CorpusError;
use crate::ontology::{Ontology, TermIdx};

/// What one unit of frequency is.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Counting {
    /// A gene adds at most one to every term it (transitively) annotates.
    #[default]
    Genes,
    /// Every distinct (gene, term) annotation adds one to the term and each
    /// of its ancestors.
    Events,
}

/// Where the minimum-depth filter sits relative to ancestor propagation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DepthFilter {
    /// Shallow direct annotations are removed before frequencies are counted.
    #[default]
    BeforePropagation,
    /// Frequencies are counted from every annotation; the filter only
    /// restricts the term sets used for gene similarity.
    AfterPropagation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusOptions {
    pub min_depth: u32,
    pub counting: Counting,
    pub depth_filter: DepthFilter,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            min_depth: 2,
            counting: Counting::Genes,
            depth_filter: DepthFilter::BeforePropagation,
        }
    }
}

impl CorpusOptions {
    pub fn with_min_depth(min_depth: u32) -> Self {
        CorpusOptions {
            min_depth,
            ..Default::default()
        }
    }
}

/// Tally of input pairs that did not make it into the corpus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DropTally {
    pub unknown_term: usize,
    pub too_shallow: usize,
    pub duplicate: usize,
}

#[derive(Clone, Debug)]
pub struct AnnotationCorpus {
    gene_terms: BTreeMap<String, Vec<TermIdx>>,
    direct_count: Vec<u64>,
    propagated_count: Vec<u64>,
    total: u64,
    dropped: DropTally,
    options: CorpusOptions,
}

impl AnnotationCorpus {
    pub fn build<I, G, T>(
        pairs: I,
        ontology: &Ontology,
        options: CorpusOptions,
    ) -> Result<AnnotationCorpus, CorpusError>
    where
        I: IntoIterator<Item = (G, T)>,
        G: AsRef<str>,
        T: AsRef<str>,
    {
        let n = ontology.len();
        let mut dropped = DropTally::default();
        // Every annotation to a known term; the depth filter is applied below.
        let mut all: BTreeMap<String, Vec<TermIdx>> = BTreeMap::new();
        for (gene, term) in pairs {
            let Ok(t) = ontology.term(term.as_ref()) else {
                dropped.unknown_term += 1;
                continue;
            };
            match all.get_mut(gene.as_ref()) {
                Some(v) => v.push(t),
                None => {
                    all.insert(String::from(gene.as_ref()), vec![t]);
                }
            }
        }
        for terms in all.values_mut() {
            let before = terms.len();
            terms.sort_unstable();
            terms.dedup();
            dropped.duplicate += before - terms.len();
        }

        let deep_enough = |t: &TermIdx| ontology.depth_of(*t) >= options.min_depth;
        let mut gene_terms: BTreeMap<String, Vec<TermIdx>> = BTreeMap::new();
        for (gene, terms) in &all {
            let kept: Vec<TermIdx> = terms.iter().copied().filter(deep_enough).collect();
            dropped.too_shallow += terms.len() - kept.len();
            if !kept.is_empty() {
                gene_terms.insert(gene.clone(), kept);
            }
        }
        if gene_terms.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }

        let counted = match options.depth_filter {
            DepthFilter::BeforePropagation => &gene_terms,
            DepthFilter::AfterPropagation => &all,
        };

        let mut direct_count = vec![0u64; n];
        let mut propagated_count = vec![0u64; n];
        let mut total = 0u64;
        let mut scratch = vec![0u64; ontology.words_per_row()];
        for terms in counted.values() {
            for t in terms {
                direct_count[t.index()] += 1;
            }
            match options.counting {
                Counting::Genes => {
                    scratch.iter_mut().for_each(|w| *w = 0);
                    for t in terms {
                        for (s, a) in scratch.iter_mut().zip(ontology.ancestor_row(*t)) {
                            *s |= a;
                        }
                    }
                    for a in Ones::new(&scratch) {
                        propagated_count[a] += 1;
                    }
                    total += 1;
                }
                Counting::Events => {
                    for t in terms {
                        for a in ontology.iter_ancestors(*t) {
                            propagated_count[a.index()] += 1;
                        }
                    }
                    total += terms.len() as u64;
                }
            }
        }

        Ok(AnnotationCorpus {
            gene_terms,
            direct_count,
            propagated_count,
            total,
            dropped,
            options,
        })
    }

    /// Number of counting units: genes, or annotation events under
    /// [`Counting::Events`].
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn options(&self) -> CorpusOptions {
        self.options
    }

    pub fn dropped(&self) -> DropTally {
        self.dropped
    }

    pub fn gene_count(&self) -> usize {
        self.gene_terms.len()
    }

    pub fn genes(&self) -> impl Iterator<Item = &str> {
        self.gene_terms.keys().map(String::as_str)
    }

    /// Retained direct annotations of `gene`, sorted by term index.
    pub fn terms_of(&self, gene: &str) -> Result<&[TermIdx], CorpusError> {
        self.gene_terms
            .get(gene)
            .map(Vec::as_slice)
            .ok_or_else(|| CorpusError::UnknownGene(gene.into()))
    }

    pub fn direct_count(&self, t: TermIdx) -> u64 {
        self.direct_count[t.index()]
    }

    pub fn propagated_count(&self, t: TermIdx) -> u64 {
        self.propagated_count[t.index()]
    }

    pub(crate) fn term_slots(&self) -> usize {
        self.propagated_count.len()
    }

    /// Frequency of `t` among annotated units.
    pub fn probability(&self, t: TermIdx) -> f64 {
        self.propagated_count[t.index()] as f64 / self.total as f64
    }

    pub fn term_probability(&self, ontology: &Ontology, id: &str) -> Result<f64, CorpusError> {
        let t = ontology
            .term(id)
            .map_err(|_| CorpusError::UnknownTerm(id.into()))?;
        if t.index() >= self.propagated_count.len() {
            return Err(CorpusError::UnknownTerm(id.into()));
        }
        Ok(self.probability(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Ontology {
        Ontology::build(
            ["r", "a", "b", "c"],
            [("a", "r"), ("b", "r"), ("c", "a"), ("c", "b")],
        )
        .unwrap()
    }

    fn count(o: &Ontology, c: &AnnotationCorpus, id: &str) -> u64 {
        c.propagated_count(o.term(id).unwrap())
    }

    #[test]
    fn leaf_annotation_propagates_to_all_ancestors() {
        let o = diamond();
        let c =
            AnnotationCorpus::build([("g1", "c")], &o, CorpusOptions::with_min_depth(0)).unwrap();
        for id in ["c", "a", "b", "r"] {
            assert_eq!(count(&o, &c, id), 1, "{id}");
        }
        assert_eq!(c.total(), 1);
        assert_eq!(c.term_probability(&o, "c").unwrap(), 1.0);
        assert_eq!(c.term_probability(&o, "r").unwrap(), 1.0);
    }

    #[test]
    fn depth_filter_applies_to_direct_annotations() {
        let o = diamond();
        let c = AnnotationCorpus::build(
            [("g1", "c"), ("g2", "a"), ("g3", "b")],
            &o,
            CorpusOptions::with_min_depth(2),
        )
        .unwrap();
        assert_eq!(c.gene_count(), 1);
        assert_eq!(c.total(), 1);
        assert_eq!(c.dropped().too_shallow, 2);
        assert!(matches!(c.terms_of("g2"), Err(CorpusError::UnknownGene(_))));
    }

    #[test]
    fn gene_counted_once_per_term() {
        let o = diamond();
        let c = AnnotationCorpus::build(
            [("g1", "a"), ("g1", "c")],
            &o,
            CorpusOptions::with_min_depth(0),
        )
        .unwrap();
        assert_eq!(count(&o, &c, "a"), 1);
        assert_eq!(c.direct_count(o.term("a").unwrap()), 1);

        let events = CorpusOptions {
            min_depth: 0,
            counting: Counting::Events,
            ..Default::default()
        };
        let e = AnnotationCorpus::build([("g1", "a"), ("g1", "c")], &o, events).unwrap();
        assert_eq!(count(&o, &e, "a"), 2);
        assert_eq!(e.total(), 2);
        assert_eq!(e.term_probability(&o, "r").unwrap(), 1.0);
    }

    #[test]
    fn unannotated_term_has_zero_probability() {
        let o = diamond();
        let c = AnnotationCorpus::build(
            [("g1", "a"), ("g2", "a"), ("g3", "a"), ("g4", "a")],
            &o,
            CorpusOptions::with_min_depth(0),
        )
        .unwrap();
        assert_eq!(c.term_probability(&o, "b").unwrap(), 0.0);
        assert_eq!(c.term_probability(&o, "c").unwrap(), 0.0);
        assert!(matches!(
            c.term_probability(&o, "zz"),
            Err(CorpusError::UnknownTerm(_))
        ));
    }

    #[test]
    fn unknown_and_duplicate_pairs_are_tallied() {
        let o = diamond();
        let c = AnnotationCorpus::build(
            [("g1", "c"), ("g1", "c"), ("g2", "nope")],
            &o,
            CorpusOptions::with_min_depth(0),
        )
        .unwrap();
        assert_eq!(c.dropped().unknown_term, 1);
        assert_eq!(c.dropped().duplicate, 1);
        assert_eq!(c.gene_count(), 1);
    }

    #[test]
    fn empty_after_filter() {
        let o = diamond();
        assert!(matches!(
            AnnotationCorpus::build([("g1", "a")], &o, CorpusOptions::with_min_depth(2)),
            Err(CorpusError::EmptyCorpus)
        ));
        assert!(matches!(
            AnnotationCorpus::build(Vec::<(&str, &str)>::new(), &o, CorpusOptions::default()),
            Err(CorpusError::EmptyCorpus)
        ));
    }

    #[test]
    fn filter_after_propagation_keeps_shallow_frequencies() {
        let o = diamond();
        let opts = CorpusOptions {
            min_depth: 2,
            depth_filter: DepthFilter::AfterPropagation,
            ..Default::default()
        };
        let c = AnnotationCorpus::build([("g1", "c"), ("g2", "a")], &o, opts).unwrap();
        assert_eq!(c.total(), 2);
        assert_eq!(count(&o, &c, "a"), 2);
        assert_eq!(c.gene_count(), 1);
    }
}
