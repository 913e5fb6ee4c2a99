use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ontropy::annotations::AnnotationFormat;
use ontropy::commands;
use ontropy::config::{split_list, ConfigLayer, RunConfig};
use ontropy::{Error, Result};
use ontropy_core::IcMetric;

#[derive(Parser, Debug)]
#[command(
    name = "ontropy",
    version,
    about = "Ontology entropy, information content and semantic similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy of the ontology structure.
    Entropy {
        #[command(flatten)]
        common: Common,
        /// Write per-term |Y_x| to this TSV file.
        #[arg(long, value_name = "FILE")]
        y_sizes: Option<PathBuf>,
    },
    /// Per-term information content.
    Ic {
        #[command(flatten)]
        common: Common,
    },
    /// Gene-pair SimMax scores.
    Semsim {
        #[command(flatten)]
        common: Common,
        /// Gene pairs to score, `gene_a<TAB>gene_b` per line.
        #[arg(long, env = "ONTROPY_PAIRS", value_name = "FILE")]
        pairs: Option<PathBuf>,
    },
    /// Compare SimMax against relative reciprocal bit scores.
    Benchmark {
        #[command(flatten)]
        common: Common,
        /// Precomputed `semsim` output to use instead of recomputing.
        #[arg(long, env = "ONTROPY_SEMSIM", value_name = "FILE")]
        semsim: Option<PathBuf>,
        #[arg(long, env = "ONTROPY_BIN_SIZE")]
        bin_size: Option<usize>,
        /// Keep pairs with RRBS = 1 in the regression.
        #[arg(long, env = "ONTROPY_INCLUDE_IDENTICAL")]
        include_identical: bool,
        /// Fit the regression on individual pairs instead of bin means.
        #[arg(long, env = "ONTROPY_REGRESS_RAW")]
        regress_raw: bool,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Flat `key = value` file; flags and environment take precedence.
    #[arg(long, env = "ONTROPY_CONFIG", value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, env = "ONTROPY_OBO", value_name = "FILE")]
    obo: Option<PathBuf>,
    /// Keep only terms of this namespace.
    #[arg(long, env = "ONTROPY_NAMESPACE")]
    namespace: Option<String>,
    /// Comma-separated relationship types followed besides is_a.
    #[arg(long, env = "ONTROPY_RELATIONS")]
    relations: Option<String>,
    #[arg(long, env = "ONTROPY_CORPUS", value_name = "FILE")]
    corpus: Option<PathBuf>,
    #[arg(long, env = "ONTROPY_CORPUS_FORMAT", value_parser = parse_format)]
    corpus_format: Option<AnnotationFormat>,
    #[arg(long, env = "ONTROPY_MIN_DEPTH")]
    min_depth: Option<u32>,
    /// gic, ric or sic.
    #[arg(long, env = "ONTROPY_METRIC", value_parser = parse_metric)]
    metric: Option<IcMetric>,
    #[arg(long, env = "ONTROPY_WORKERS")]
    workers: Option<usize>,
    #[arg(long, env = "ONTROPY_OUT_DIR", value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Tab-separated `query subject bitscore` table.
    #[arg(long, env = "ONTROPY_BITSCORES", value_name = "FILE")]
    bitscores: Option<PathBuf>,
    /// Count annotation events rather than genes for rIC.
    #[arg(long, env = "ONTROPY_COUNT_EVENTS")]
    count_events: bool,
    /// Apply the depth filter after propagation instead of before.
    #[arg(long, env = "ONTROPY_FILTER_AFTER_PROPAGATION")]
    filter_after_propagation: bool,
}

fn parse_format(s: &str) -> std::result::Result<AnnotationFormat, String> {
    s.parse()
        .map_err(|e: ontropy::annotations::AnnotationError| e.to_string())
}

fn parse_metric(s: &str) -> std::result::Result<IcMetric, String> {
    s.parse()
        .map_err(|_| format!("unknown metric `{s}` (expected gic, ric or sic)"))
}

fn flag(b: bool) -> Option<bool> {
    b.then_some(true)
}

impl Common {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            obo: self.obo.clone(),
            namespace: self.namespace.clone(),
            relations: self.relations.as_deref().map(split_list),
            corpus: self.corpus.clone(),
            corpus_format: self.corpus_format,
            min_depth: self.min_depth,
            metric: self.metric,
            workers: self.workers,
            out_dir: self.out_dir.clone(),
            bitscores: self.bitscores.clone(),
            count_events: flag(self.count_events),
            filter_after_propagation: flag(self.filter_after_propagation),
            ..Default::default()
        }
    }

    fn resolve(&self, extra: ConfigLayer) -> Result<RunConfig> {
        let mut layer = extra.or(self.layer());
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            layer = layer.or(ConfigLayer::parse_file(&text)?);
        }
        Ok(RunConfig::resolve(layer))
    }
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Entropy { common, y_sizes } => commands::cmd_entropy(
            &common.resolve(ConfigLayer::default())?,
            y_sizes.as_deref(),
            &mut out,
        ),
        Command::Ic { common } => {
            commands::cmd_ic(&common.resolve(ConfigLayer::default())?, &mut out)
        }
        Command::Semsim { common, pairs } => {
            let cfg = common.resolve(ConfigLayer {
                pairs,
                ..Default::default()
            })?;
            commands::cmd_semsim(&cfg, &mut out)
        }
        Command::Benchmark {
            common,
            semsim,
            bin_size,
            include_identical,
            regress_raw,
        } => {
            let cfg = common.resolve(ConfigLayer {
                semsim,
                bin_size,
                include_identical: flag(include_identical),
                regress_raw: flag(regress_raw),
                ..Default::default()
            })?;
            commands::cmd_benchmark(&cfg, &mut out)
        }
    }?;
    out.flush().map_err(|e| Error::io("<stdout>", e))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
