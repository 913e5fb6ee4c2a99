//! The four pipeline commands: `entropy`, `ic`, `semsim` and `benchmark`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use log::{info, warn};
use ontropy_core::semsim::gene_similarity;
use ontropy_core::{
    gic_parallel, ontology_entropy, ric, run_benchmark, sic, AnnotationCorpus, BenchmarkOptions,
    BenchmarkReport, BitScores, CorpusOptions, GenePairSim, IcMetric, IcTable, Ontology,
    ScoredPair,
};
use rayon::prelude::*;

use crate::annotations::parse_annotations;
use crate::bitscores::load_bitscores;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::obo::{parse_obo, to_graph};
use crate::output::{bins_csv, fmt6, ic_tsv, plot_data, summary_json};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::Usage(format!("missing required input --{flag}")))
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
}

pub fn load_ontology(cfg: &RunConfig) -> Result<Ontology> {
    let path = required(&cfg.obo, "obo")?;
    let terms = parse_obo(open(path)?)?;
    let graph = to_graph(&terms, cfg.namespace.as_deref(), &cfg.relations)?;
    if graph.dropped_edges > 0 {
        warn!(
            "{} edge(s) point outside the retained terms and were dropped",
            graph.dropped_edges
        );
    }
    Ok(Ontology::build(graph.terms, graph.edges)?)
}

pub fn load_corpus(cfg: &RunConfig, o: &Ontology) -> Result<Option<AnnotationCorpus>> {
    let Some(path) = cfg.corpus.as_deref() else {
        return Ok(None);
    };
    let pairs = parse_annotations(open(path)?, cfg.corpus_format)?;
    let options = CorpusOptions {
        min_depth: cfg.min_depth,
        counting: cfg.counting,
        depth_filter: cfg.depth_filter,
    };
    let corpus = AnnotationCorpus::build(pairs, o, options)?;
    let d = corpus.dropped();
    if d.unknown_term > 0 {
        warn!(
            "{} annotation(s) reference terms outside the ontology",
            d.unknown_term
        );
    }
    info!(
        "corpus: {} genes, {} shallow and {} duplicate annotation(s) dropped",
        corpus.gene_count(),
        d.too_shallow,
        d.duplicate
    );
    Ok(Some(corpus))
}

pub fn compute_ic(
    cfg: &RunConfig,
    o: &Ontology,
    corpus: Option<&AnnotationCorpus>,
) -> Result<IcTable> {
    let table = match cfg.metric {
        IcMetric::Gic => gic_parallel(o, cfg.workers)?,
        IcMetric::Sic => sic(o)?,
        IcMetric::Ric => ric(o, corpus.ok_or(Error::MissingCorpus)?)?,
    };
    for &t in table.out_of_range() {
        warn!(
            "{} {} = {} lies outside [0, 1]",
            cfg.metric,
            o.id(t),
            table.raw(t).unwrap_or(f64::NAN)
        );
    }
    Ok(table)
}

pub fn cmd_entropy(cfg: &RunConfig, y_sizes: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let o = load_ontology(cfg)?;
    let rep = ontology_entropy(&o);
    let mut text = String::new();
    let _ = writeln!(text, "terms: {}", o.len());
    let _ = writeln!(text, "edges: {}", o.edge_count());
    let _ = writeln!(text, "root: {}", o.id(o.root()));
    let _ = writeln!(text, "H(X) = {} bits", fmt6(rep.first_term_entropy));
    let _ = writeln!(text, "H(Y|X) = {} bits", fmt6(rep.conditional_entropy()));
    let _ = writeln!(text, "H(M) = {} bits", fmt6(rep.total_bits));
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))?;

    if let Some(path) = y_sizes {
        let mut tsv = String::from("term_id\ty_size\tlog2_y_size\n");
        for t in o.terms() {
            let _ = writeln!(
                tsv,
                "{}\t{}\t{}",
                o.id(t),
                rep.y_sizes[t.index()],
                fmt6(rep.conditional_bits[t.index()])
            );
        }
        write_file(path, &tsv)?;
    }
    Ok(())
}

pub fn cmd_ic(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    if cfg.metric == IcMetric::Ric && cfg.corpus.is_none() {
        return Err(Error::MissingCorpus);
    }
    let o = load_ontology(cfg)?;
    let corpus = load_corpus(cfg, &o)?;
    let table = compute_ic(cfg, &o, corpus.as_ref())?;
    let tsv = ic_tsv(&o, &table);
    match &cfg.out_dir {
        Some(dir) => write_file(&dir.join(format!("ic_{}.tsv", cfg.metric)), &tsv),
        None => out
            .write_all(tsv.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

/// Reads `gene_a\tgene_b` lines; a header starting with `gene_a` is skipped.
fn read_pair_list(path: &Path) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') || line.starts_with("gene_a\t") {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 2 {
            return Err(Error::Usage(format!(
                "{}: line {}: expected gene_a<TAB>gene_b",
                path.display(),
                i + 1
            )));
        }
        pairs.push((cols[0].trim().to_string(), cols[1].trim().to_string()));
    }
    Ok(pairs)
}

fn similarity_rows(
    cfg: &RunConfig,
    o: &Ontology,
    ic: &IcTable,
    corpus: &AnnotationCorpus,
    pairs: &[(String, String)],
) -> Vec<Option<GenePairSim>> {
    pool(cfg.workers).install(|| {
        pairs
            .par_iter()
            .map(|(a, b)| gene_similarity(o, ic, corpus, a, b).ok())
            .collect()
    })
}

pub fn cmd_semsim(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let o = load_ontology(cfg)?;
    let corpus = load_corpus(cfg, &o)?
        .ok_or_else(|| Error::Usage("semsim needs an annotation corpus (--corpus)".into()))?;
    let ic = compute_ic(cfg, &o, Some(&corpus))?;
    let pairs: Vec<(String, String)> = match (&cfg.pairs, &cfg.bitscores) {
        (Some(p), _) => read_pair_list(p)?,
        (None, Some(b)) => load_bitscores(open(b)?)?
            .scores
            .candidate_pairs()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        (None, None) => {
            let genes: Vec<&str> = corpus.genes().collect();
            let mut all = Vec::new();
            for (i, a) in genes.iter().enumerate() {
                for b in &genes[i + 1..] {
                    all.push((a.to_string(), b.to_string()));
                }
            }
            all
        }
    };

    let rows = similarity_rows(cfg, &o, &ic, &corpus, &pairs);
    let mut tsv = String::from("gene_a\tgene_b\tsimmax\tterm_a\tterm_b\tmica\n");
    let mut skipped = 0;
    for ((a, b), row) in pairs.iter().zip(&rows) {
        let Some(s) = row else {
            skipped += 1;
            continue;
        };
        let (ta, tb, m) = s.best_pair;
        let _ = writeln!(
            tsv,
            "{a}\t{b}\t{}\t{}\t{}\t{}",
            fmt6(s.simmax),
            o.id(ta),
            o.id(tb),
            o.id(m)
        );
    }
    if skipped > 0 {
        warn!("{skipped} pair(s) skipped: a gene has no retained annotations");
    }
    match &cfg.out_dir {
        Some(dir) => write_file(&dir.join(format!("semsim_{}.tsv", cfg.metric)), &tsv),
        None => out
            .write_all(tsv.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

/// Reads a `semsim` table back as `(gene_a, gene_b) → simmax`.
fn read_semsim_table(path: &Path) -> Result<HashMap<(String, String), f64>> {
    let mut map = HashMap::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() || line.starts_with("gene_a\t") || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let value = cols.get(2).and_then(|v| v.trim().parse::<f64>().ok());
        let (Some(v), true) = (value, cols.len() >= 3) else {
            return Err(Error::Usage(format!(
                "{}: line {}: expected gene_a<TAB>gene_b<TAB>simmax",
                path.display(),
                i + 1
            )));
        };
        let (a, b) = (cols[0].to_string(), cols[1].to_string());
        let key = if a <= b { (a, b) } else { (b, a) };
        map.insert(key, v);
    }
    Ok(map)
}

/// Joins sequence and semantic similarity for every scored protein pair.
pub fn benchmark_pairs(cfg: &RunConfig, scores: &BitScores) -> Result<Vec<ScoredPair>> {
    let candidates = scores.candidate_pairs();
    let mut rrbs = Vec::with_capacity(candidates.len());
    let mut missing = 0;
    for &(a, b) in &candidates {
        match scores.rrbs(a, b) {
            Ok(r) => rrbs.push((a, b, r)),
            Err(ontropy_core::BenchmarkError::MissingScore(_)) => missing += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if missing > 0 {
        warn!("{missing} pair(s) skipped: one of the four bit scores is missing");
    }

    let mut out = Vec::with_capacity(rrbs.len());
    let mut unannotated = 0;
    if let Some(path) = &cfg.semsim {
        let table = read_semsim_table(path)?;
        for (a, b, r) in rrbs {
            match table.get(&(a.to_string(), b.to_string())) {
                Some(&s) => out.push(ScoredPair::new(a, b, s, r)),
                None => unannotated += 1,
            }
        }
    } else {
        let o = load_ontology(cfg)?;
        let corpus = load_corpus(cfg, &o)?
            .ok_or_else(|| Error::Usage("benchmark needs --corpus or --semsim".into()))?;
        let ic = compute_ic(cfg, &o, Some(&corpus))?;
        let pairs: Vec<(String, String)> = rrbs
            .iter()
            .map(|(a, b, _)| (a.to_string(), b.to_string()))
            .collect();
        let sims = similarity_rows(cfg, &o, &ic, &corpus, &pairs);
        for ((a, b, r), s) in rrbs.into_iter().zip(sims) {
            match s {
                Some(s) => out.push(ScoredPair::new(a, b, s.simmax, r)),
                None => unannotated += 1,
            }
        }
    }
    if unannotated > 0 {
        warn!("{unannotated} pair(s) skipped: no semantic similarity available");
    }
    Ok(out)
}

pub fn benchmark_report(cfg: &RunConfig) -> Result<(Vec<ScoredPair>, BenchmarkReport)> {
    let path = required(&cfg.bitscores, "bitscores")?;
    let loaded = load_bitscores(open(path)?)?;
    let pairs = benchmark_pairs(cfg, &loaded.scores)?;
    let options = BenchmarkOptions {
        bin_size: cfg.bin_size,
        exclude_identical: cfg.exclude_identical,
        regression: cfg.regression,
    };
    let report = run_benchmark(&pairs, options)?;
    Ok((pairs, report))
}

pub fn cmd_benchmark(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let (pairs, report) = benchmark_report(cfg)?;
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let metric = cfg.metric.as_str();
    let summary = summary_json(metric, &report, pairs.len(), &cfg.echo());
    write_file(&dir.join(format!("bins_{metric}.csv")), &bins_csv(&report))?;
    write_file(&dir.join(format!("summary_{metric}.json")), &summary)?;
    write_file(&dir.join(format!("plot_{metric}.dat")), &plot_data(&report))?;
    out.write_all(summary.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}
