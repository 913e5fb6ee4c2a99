//! Byte-stable text output: every number is fixed-point with 6 decimals.

use std::fmt::Write as _;

use ontropy_core::{BenchmarkReport, IcTable, Ontology};

/// `{:.6}` without a negative sign on values that round to zero.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt6).unwrap_or_else(|| "NA".into())
}

/// `term_id\traw\tnormalized`, one row per term in id order.
pub fn ic_tsv(o: &Ontology, table: &IcTable) -> String {
    let mut out = String::from("term_id\traw\tnormalized\n");
    for t in o.terms() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            o.id(t),
            fmt_opt(table.raw(t)),
            fmt_opt(table.normalized(t))
        );
    }
    out
}

pub fn bins_csv(report: &BenchmarkReport) -> String {
    let mut out = String::from("bin_index,count,mean_rrbs,mean_simmax\n");
    for b in &report.bins {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            b.index,
            b.count,
            fmt6(b.mean_rrbs),
            fmt6(b.mean_simmax)
        );
    }
    out
}

/// Two whitespace-separated columns, loadable by gnuplot or numpy.
pub fn plot_data(report: &BenchmarkReport) -> String {
    let mut out = String::from("# mean_rrbs mean_simmax\n");
    for b in &report.bins {
        let _ = writeln!(out, "{} {}", fmt6(b.mean_rrbs), fmt6(b.mean_simmax));
    }
    out
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

/// Summary JSON with a fixed key order and 6-decimal numbers.
pub fn summary_json(
    metric: &str,
    report: &BenchmarkReport,
    pairs: usize,
    config: &[(&str, String)],
) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"metric\": {},", json_str(metric));
    let _ = writeln!(out, "  \"range\": {},", fmt6(report.range));
    let _ = writeln!(out, "  \"min\": {},", fmt6(report.min));
    let _ = writeln!(out, "  \"max\": {},", fmt6(report.max));
    let _ = writeln!(out, "  \"r2\": {},", fmt6(report.r2));
    let _ = writeln!(out, "  \"bins\": {},", report.bins.len());
    let _ = writeln!(
        out,
        "  \"excluded_identical\": {},",
        report.excluded_identical
    );
    let _ = writeln!(out, "  \"pairs\": {pairs},");
    out.push_str("  \"config\": {");
    for (i, (k, v)) in config.iter().enumerate() {
        let sep = if i + 1 == config.len() { "" } else { "," };
        let _ = write!(out, "\n    {}: {}{sep}", json_str(k), json_str(v));
    }
    out.push_str("\n  }\n}\n");
    out
}
