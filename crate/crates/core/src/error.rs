use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OntologyError {
    #[error("ontology has no terms")]
    Empty,
    #[error("duplicate term id `{0}`")]
    DuplicateTerm(String),
    #[error("too many terms ({0})")]
    TooManyTerms(usize),
    #[error("edge {child} -> {parent} references a term outside the term list")]
    UnknownTermInEdge { child: String, parent: String },
    #[error("cycle detected: {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("expected exactly one root, found {}: {}", .0.len(), .0.join(", "))]
    MultipleRoots(Vec<String>),
    #[error("unknown term `{0}`")]
    UnknownTerm(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("no annotations left after filtering")]
    EmptyCorpus,
    #[error("unknown term `{0}`")]
    UnknownTerm(String),
    #[error("unknown gene `{0}`")]
    UnknownGene(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("ontology entropy is zero (single-term ontology)")]
    DegenerateOntology,
    #[error("oracle refuses {terms} terms (cap {cap})")]
    TooLargeForOracle { terms: usize, cap: usize },
    #[error("annotation corpus is empty")]
    EmptyCorpus,
    #[error("IC table was built for {table} terms, ontology has {ontology}")]
    SizeMismatch { table: usize, ontology: usize },
    #[error(transparent)]
    Ontology(#[from] OntologyError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimilarityError {
    #[error("no common ancestor of `{0}` and `{1}` has a defined IC")]
    NoDefinedCommonAncestor(String, String),
    #[error("gene `{0}` has no retained annotations")]
    EmptyTermSet(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Ontology(#[from] OntologyError),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BenchmarkError {
    #[error("missing bit score {0}")]
    MissingScore(MissingScore),
    #[error("self scores of `{0}` and `{1}` sum to zero")]
    ZeroDenominator(String, String),
    #[error("need at least 2 pairs, got {0}")]
    TooFewPairs(usize),
    #[error("bin size must be positive")]
    ZeroBinSize,
    #[error("too few bins for regression: need at least 2, got {0}")]
    TooFewBins(usize),
    #[error("regression predictor has zero variance")]
    DegenerateRegression,
    #[error("non-finite value for pair {0}")]
    NonFinite(String),
}

/// Which of the four scores entering RRBS is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingScore {
    pub query: String,
    pub subject: String,
}

impl core::fmt::Display for MissingScore {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} vs {}", self.query, self.subject)
    }
}
