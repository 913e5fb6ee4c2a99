use std::io;
use std::path::PathBuf;

use ontropy_core::{BenchmarkError, CorpusError, MetricError, OntologyError, SimilarityError};

use crate::annotations::AnnotationError;
use crate::bitscores::BitscoreError;
use crate::config::ConfigError;
use crate::obo::OboError;

/// Top-level error of the command-line pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Obo(#[from] OboError),
    #[error(transparent)]
    Annotation(#[from] AnnotationError),
    #[error(transparent)]
    Bitscore(#[from] BitscoreError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ontology(#[from] OntologyError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
    #[error(transparent)]
    Benchmark(#[from] BenchmarkError),
    #[error("metric `ric` needs an annotation corpus (--corpus)")]
    MissingCorpus,
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for I/O failures, 2 for validation and domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 1,
            Error::Obo(OboError::Io(_))
            | Error::Annotation(AnnotationError::Io(_))
            | Error::Bitscore(BitscoreError::Io(_)) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
