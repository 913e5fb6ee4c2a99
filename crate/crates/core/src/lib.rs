//! Information-theoretic analysis of subsumption ontologies.
//!
//! The crate computes the Shannon entropy of a single-rooted ontology DAG
//! under maximum-entropy two-term annotation, the graph-based information
//! content (gIC) of each term derived from it, the descendant-count (sIC)
//! and corpus-surprisal (rIC) baselines, MICA-based gene similarity, and the
//! RRBS binning/regression harness used to compare them.
//!
//! It is `no_std` with `alloc`. The `parallel` feature adds a multi-threaded
//! gIC driver and requires `std`.

#![cfg_attr(not(feature = "parallel"), no_std)]

extern crate alloc;

pub mod benchmark;
pub mod bitset;
pub mod corpus;
pub mod entropy;
pub mod error;
pub mod ic;
pub mod ontology;
pub mod semsim;

pub use benchmark::{
    run_benchmark, BenchmarkOptions, BenchmarkReport, Bin, BitScores, RegressionInput, ScorePair,
    ScoredPair,
};
pub use corpus::{AnnotationCorpus, CorpusOptions, Counting, DepthFilter};
pub use entropy::{
    candidate_second_terms, conditional_entropy_given, ontology_entropy, ontology_entropy_oracle,
    EntropyModel, EntropyReport,
};
pub use error::{BenchmarkError, CorpusError, MetricError, OntologyError, SimilarityError};
pub use ic::{gic, ric, sic, IcMetric, IcTable};
pub use ontology::{Ontology, TermIdx, TermSet};
pub use semsim::{gene_similarity, term_similarity, GenePairSim, TermSimilarity};

#[cfg(feature = "parallel")]
pub use ic::gic_parallel;
