//! Gene → term annotation input.
//!
//! Two layouts are accepted:
//! - TSV: `<gene-id>\t<term-id>` per line, no header.
//! - GAF 2.x: tab-separated, `!` comment lines; column 2 (object id) and
//!   column 5 (term id) are read, everything else is ignored.

use std::io::BufRead;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnotationFormat {
    Tsv,
    Gaf,
}

impl AnnotationFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            AnnotationFormat::Tsv => "tsv",
            AnnotationFormat::Gaf => "gaf",
        }
    }
}

impl FromStr for AnnotationFormat {
    type Err = AnnotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(AnnotationFormat::Tsv),
            "gaf" => Ok(AnnotationFormat::Gaf),
            _ => Err(AnnotationError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AnnotationError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("unknown annotation format `{0}` (expected tsv or gaf)")]
    UnknownFormat(String),
    #[error("line {line}: input is not valid UTF-8")]
    InvalidUtf8 { line: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// GAF 2.x has 15 mandatory columns; 2.1 and later may carry up to 17.
const GAF_MIN_COLUMNS: usize = 15;

/// Reads `(gene, term)` pairs in input order; duplicates are kept.
pub fn parse_annotations<R: BufRead>(
    mut reader: R,
    format: AnnotationFormat,
) -> Result<Vec<(String, String)>, AnnotationError> {
    let mut pairs = Vec::new();
    let mut buf = Vec::new();
    let mut lineno = 0;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        lineno += 1;
        let line = std::str::from_utf8(&buf)
            .map_err(|_| AnnotationError::InvalidUtf8 { line: lineno })?
            .trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |reason: String| AnnotationError::MalformedLine {
            line: lineno,
            reason,
        };
        let cols: Vec<&str> = line.split('\t').collect();
        let (gene, term) = match format {
            AnnotationFormat::Tsv => {
                if cols.len() != 2 {
                    return Err(malformed(format!(
                        "expected 2 tab-separated columns, found {}",
                        cols.len()
                    )));
                }
                (cols[0].trim(), cols[1].trim())
            }
            AnnotationFormat::Gaf => {
                if line.starts_with('!') {
                    continue;
                }
                if cols.len() < GAF_MIN_COLUMNS {
                    return Err(malformed(format!(
                        "GAF line has {} columns, expected at least {GAF_MIN_COLUMNS}",
                        cols.len()
                    )));
                }
                (cols[1].trim(), cols[4].trim())
            }
        };
        if gene.is_empty() || term.is_empty() {
            return Err(malformed("empty gene or term id".into()));
        }
        pairs.push((gene.to_string(), term.to_string()));
    }
    Ok(pairs)
}
