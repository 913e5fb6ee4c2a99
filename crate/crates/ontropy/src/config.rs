//! Run configuration.
//!
//! Values come from three layers, highest first: command-line flags (or
//! their `ONTROPY_*` environment variables), a flat `key = value` config
//! file, and built-in defaults. Keys in the file are the long flag names
//! with `-` or `_` accepted interchangeably.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use ontropy_core::{Counting, DepthFilter, IcMetric, RegressionInput};

use crate::annotations::AnnotationFormat;

pub const DEFAULT_MIN_DEPTH: u32 = 2;
pub const DEFAULT_BIN_SIZE: usize = 1000;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("config key `{key}`: {reason}")]
    Value { key: String, reason: String },
}

/// One configuration layer; unset fields fall through to the next layer.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigLayer {
    pub obo: Option<PathBuf>,
    pub namespace: Option<String>,
    pub relations: Option<Vec<String>>,
    pub corpus: Option<PathBuf>,
    pub corpus_format: Option<AnnotationFormat>,
    pub min_depth: Option<u32>,
    pub metric: Option<IcMetric>,
    pub bin_size: Option<usize>,
    pub include_identical: Option<bool>,
    pub workers: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub bitscores: Option<PathBuf>,
    pub pairs: Option<PathBuf>,
    pub semsim: Option<PathBuf>,
    pub count_events: Option<bool>,
    pub filter_after_propagation: Option<bool>,
    pub regress_raw: Option<bool>,
}

impl ConfigLayer {
    /// Fills every unset field from `lower`.
    pub fn or(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            obo: self.obo.or(lower.obo),
            namespace: self.namespace.or(lower.namespace),
            relations: self.relations.or(lower.relations),
            corpus: self.corpus.or(lower.corpus),
            corpus_format: self.corpus_format.or(lower.corpus_format),
            min_depth: self.min_depth.or(lower.min_depth),
            metric: self.metric.or(lower.metric),
            bin_size: self.bin_size.or(lower.bin_size),
            include_identical: self.include_identical.or(lower.include_identical),
            workers: self.workers.or(lower.workers),
            out_dir: self.out_dir.or(lower.out_dir),
            bitscores: self.bitscores.or(lower.bitscores),
            pairs: self.pairs.or(lower.pairs),
            semsim: self.semsim.or(lower.semsim),
            count_events: self.count_events.or(lower.count_events),
            filter_after_propagation: self
                .filter_after_propagation
                .or(lower.filter_after_propagation),
            regress_raw: self.regress_raw.or(lower.regress_raw),
        }
    }

    pub fn parse_file(text: &str) -> Result<ConfigLayer, ConfigError> {
        let mut layer = ConfigLayer::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: i + 1,
                    reason: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            layer.set(&key, value).map_err(|reason| match reason {
                SetError::UnknownKey => ConfigError::Syntax {
                    line: i + 1,
                    reason: format!("unknown key `{key}`"),
                },
                SetError::Bad(reason) => ConfigError::Value {
                    key: key.clone(),
                    reason,
                },
            })?;
        }
        Ok(layer)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), SetError> {
        fn parse<T: FromStr>(v: &str) -> Result<T, SetError> {
            v.parse()
                .map_err(|_| SetError::Bad(format!("cannot parse `{v}`")))
        }
        match key {
            "obo" => self.obo = Some(value.into()),
            "namespace" => self.namespace = Some(value.into()),
            "relations" => self.relations = Some(split_list(value)),
            "corpus" => self.corpus = Some(value.into()),
            "corpus_format" => {
                self.corpus_format = Some(value.parse().map_err(
                    |e: crate::annotations::AnnotationError| SetError::Bad(e.to_string()),
                )?)
            }
            "min_depth" => self.min_depth = Some(parse(value)?),
            "metric" => {
                self.metric = Some(
                    value
                        .parse()
                        .map_err(|e: ontropy_core::ic::UnknownMetric| {
                            SetError::Bad(e.to_string())
                        })?,
                )
            }
            "bin_size" => self.bin_size = Some(parse(value)?),
            "include_identical" => self.include_identical = Some(parse(value)?),
            "exclude_identical" => self.include_identical = Some(!parse::<bool>(value)?),
            "workers" => self.workers = Some(parse(value)?),
            "out_dir" => self.out_dir = Some(value.into()),
            "bitscores" => self.bitscores = Some(value.into()),
            "pairs" => self.pairs = Some(value.into()),
            "semsim" => self.semsim = Some(value.into()),
            "count_events" => self.count_events = Some(parse(value)?),
            "filter_after_propagation" => self.filter_after_propagation = Some(parse(value)?),
            "regress_raw" => self.regress_raw = Some(parse(value)?),
            _ => return Err(SetError::UnknownKey),
        }
        Ok(())
    }
}

enum SetError {
    UnknownKey,
    Bad(String),
}

pub fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Fully resolved settings for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub obo: Option<PathBuf>,
    pub namespace: Option<String>,
    /// Relationship types followed in addition to `is_a`.
    pub relations: BTreeSet<String>,
    pub corpus: Option<PathBuf>,
    pub corpus_format: AnnotationFormat,
    pub min_depth: u32,
    pub metric: IcMetric,
    pub bin_size: usize,
    pub exclude_identical: bool,
    pub workers: usize,
    pub out_dir: Option<PathBuf>,
    pub bitscores: Option<PathBuf>,
    pub pairs: Option<PathBuf>,
    pub semsim: Option<PathBuf>,
    pub counting: Counting,
    pub depth_filter: DepthFilter,
    pub regression: RegressionInput,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(ConfigLayer::default())
    }
}

impl RunConfig {
    pub fn resolve(layer: ConfigLayer) -> RunConfig {
        let corpus_format = layer.corpus_format.unwrap_or_else(|| {
            match layer
                .corpus
                .as_ref()
                .and_then(|p| p.extension())
                .and_then(|e| e.to_str())
            {
                Some(ext) if ext.eq_ignore_ascii_case("gaf") => AnnotationFormat::Gaf,
                _ => AnnotationFormat::Tsv,
            }
        });
        RunConfig {
            obo: layer.obo,
            namespace: layer.namespace.filter(|s| !s.is_empty()),
            relations: layer
                .relations
                .unwrap_or_default()
                .into_iter()
                .filter(|r| r != "is_a")
                .collect(),
            corpus: layer.corpus,
            corpus_format,
            min_depth: layer.min_depth.unwrap_or(DEFAULT_MIN_DEPTH),
            metric: layer.metric.unwrap_or(IcMetric::Gic),
            bin_size: layer.bin_size.unwrap_or(DEFAULT_BIN_SIZE),
            exclude_identical: !layer.include_identical.unwrap_or(false),
            workers: layer.workers.unwrap_or(1).max(1),
            out_dir: layer.out_dir,
            bitscores: layer.bitscores,
            pairs: layer.pairs,
            semsim: layer.semsim,
            counting: if layer.count_events.unwrap_or(false) {
                Counting::Events
            } else {
                Counting::Genes
            },
            depth_filter: if layer.filter_after_propagation.unwrap_or(false) {
                DepthFilter::AfterPropagation
            } else {
                DepthFilter::BeforePropagation
            },
            regression: if layer.regress_raw.unwrap_or(false) {
                RegressionInput::RawPairs
            } else {
                RegressionInput::BinMeans
            },
        }
    }

    /// Settings that determine results, as `(key, value)` text pairs in a
    /// fixed order. Paths are echoed as given; the worker count is left out
    /// because it never changes output.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let path = |p: &Option<PathBuf>| {
            p.as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        };
        let mut relations = vec!["is_a".to_string()];
        relations.extend(self.relations.iter().cloned());
        vec![
            ("obo", path(&self.obo)),
            ("namespace", self.namespace.clone().unwrap_or_default()),
            ("relations", relations.join(",")),
            ("corpus", path(&self.corpus)),
            ("corpus_format", self.corpus_format.as_str().to_string()),
            ("min_depth", self.min_depth.to_string()),
            ("metric", self.metric.to_string()),
            ("bin_size", self.bin_size.to_string()),
            ("exclude_identical", self.exclude_identical.to_string()),
            ("bitscores", path(&self.bitscores)),
            ("semsim", path(&self.semsim)),
            (
                "counting",
                match self.counting {
                    Counting::Genes => "genes",
                    Counting::Events => "events",
                }
                .to_string(),
            ),
            (
                "depth_filter",
                match self.depth_filter {
                    DepthFilter::BeforePropagation => "before_propagation",
                    DepthFilter::AfterPropagation => "after_propagation",
                }
                .to_string(),
            ),
            (
                "regression",
                match self.regression {
                    RegressionInput::BinMeans => "bin_means",
                    RegressionInput::RawPairs => "raw_pairs",
                }
                .to_string(),
            ),
        ]
    }
}
