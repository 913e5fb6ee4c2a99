//! Pairwise BLAST bit-score tables: `query\tsubject\tscore` per line.

use std::io::BufRead;

use ontropy_core::BitScores;

#[derive(Debug, thiserror::Error)]
pub enum BitscoreError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: negative bit score {score}")]
    NegativeScore { line: usize, score: f64 },
    #[error("line {line}: input is not valid UTF-8")]
    InvalidUtf8 { line: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LoadedScores {
    pub scores: BitScores,
    /// Lines that repeated an existing `(query, subject)` key.
    pub duplicates: usize,
}

pub fn load_bitscores<R: BufRead>(mut reader: R) -> Result<LoadedScores, BitscoreError> {
    let mut out = LoadedScores::default();
    let mut buf = Vec::new();
    let mut lineno = 0;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        lineno += 1;
        let line = std::str::from_utf8(&buf)
            .map_err(|_| BitscoreError::InvalidUtf8 { line: lineno })?
            .trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |reason: String| BitscoreError::MalformedLine {
            line: lineno,
            reason,
        };
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [query, subject, score] = cols[..] else {
            return Err(malformed(format!(
                "expected 3 tab-separated columns, found {}",
                cols.len()
            )));
        };
        if query.is_empty() || subject.is_empty() {
            return Err(malformed("empty protein id".into()));
        }
        let score: f64 = score
            .parse()
            .map_err(|_| malformed(format!("bad score `{score}`")))?;
        if !score.is_finite() {
            return Err(malformed(format!("non-finite score `{score}`")));
        }
        if score < 0.0 {
            return Err(BitscoreError::NegativeScore {
                line: lineno,
                score,
            });
        }
        if out.scores.insert(query, subject, score) {
            log::warn!(
                "line {lineno}: duplicate score for {query} -> {subject}; keeping the maximum"
            );
            out.duplicates += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_score() {
        let l = load_bitscores("p1\tp1\t100\n".as_bytes()).unwrap();
        assert_eq!(l.scores.get("p1", "p1"), Some(100.0));
    }

    #[test]
    fn duplicate_keeps_max() {
        let l = load_bitscores("p1\tp2\t50\np1\tp2\t70\n".as_bytes()).unwrap();
        assert_eq!(l.scores.get("p1", "p2"), Some(70.0));
        assert_eq!(l.duplicates, 1);
        let l = load_bitscores("p1\tp2\t70\np1\tp2\t50\n".as_bytes()).unwrap();
        assert_eq!(l.scores.get("p1", "p2"), Some(70.0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(
            load_bitscores("p1\tp1\t1\np1\tp2\n".as_bytes()),
            Err(BitscoreError::MalformedLine { line: 2, .. })
        ));
        assert!(matches!(
            load_bitscores("p1\tp2\tabc\n".as_bytes()),
            Err(BitscoreError::MalformedLine { line: 1, .. })
        ));
        assert!(matches!(
            load_bitscores("p1\tp2\t-3\n".as_bytes()),
            Err(BitscoreError::NegativeScore { line: 1, .. })
        ));
    }
}
