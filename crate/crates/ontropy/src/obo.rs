//! OBO 1.2 flat-file reader.
//!
//! Only `[Term]` stanzas are kept. Within them the tags `id`, `name`,
//! `namespace`, `is_a`, `relationship` and `is_obsolete` are read; every
//! other tag is skipped without effect. A trailing `! comment` is removed
//! from identifier-valued tags.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::io::BufRead;

#[derive(Debug, thiserror::Error)]
pub enum OboError {
    #[error("line {line}: {reason}")]
    MalformedStanza { line: usize, reason: String },
    #[error("line {line}: duplicate term id `{id}`")]
    DuplicateTermId { line: usize, id: String },
    #[error("line {line}: input is not valid UTF-8")]
    InvalidUtf8 { line: usize },
    #[error("no terms left after namespace/obsolete filtering")]
    EmptyAfterFilter,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OboTerm {
    pub id: String,
    pub name: String,
    pub namespace: String,
    pub is_a: Vec<String>,
    pub relationships: Vec<(String, String)>,
    pub obsolete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stanza {
    Header,
    Term,
    Other,
}

fn malformed(line: usize, reason: impl Into<String>) -> OboError {
    OboError::MalformedStanza {
        line,
        reason: reason.into(),
    }
}

fn strip_comment(value: &str) -> &str {
    match value.find(" !") {
        Some(i) => value[..i].trim_end(),
        None if value.starts_with('!') => "",
        None => value,
    }
}

/// Drops a trailing `{...}` qualifier block.
fn strip_qualifiers(value: &str) -> &str {
    let v = value.trim_end();
    if v.ends_with('}') {
        if let Some(i) = v.rfind('{') {
            return v[..i].trim_end();
        }
    }
    v
}

fn identifier(value: &str) -> &str {
    strip_qualifiers(strip_comment(value)).trim()
}

struct Pending {
    term: OboTerm,
    start: usize,
    has_id: bool,
}

/// Parses every `[Term]` stanza of an OBO document.
pub fn parse_obo<R: BufRead>(mut reader: R) -> Result<Vec<OboTerm>, OboError> {
    let mut terms = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut stanza = Stanza::Header;
    let mut pending: Option<Pending> = None;

    let mut finish = |p: Option<Pending>, terms: &mut Vec<OboTerm>| -> Result<(), OboError> {
        let Some(p) = p else { return Ok(()) };
        if !p.has_id {
            return Err(malformed(p.start, "[Term] stanza without id"));
        }
        if !seen.insert(p.term.id.clone()) {
            return Err(OboError::DuplicateTermId {
                line: p.start,
                id: p.term.id,
            });
        }
        terms.push(p.term);
        Ok(())
    };

    let mut buf = Vec::new();
    let mut lineno = 0usize;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        lineno += 1;
        let raw = std::str::from_utf8(&buf).map_err(|_| OboError::InvalidUtf8 { line: lineno })?;
        let line = raw.trim_end_matches(['\n', '\r']).trim();
        if line.is_empty() || line.starts_with('!') {
            continue;
        }

        if line.starts_with('[') {
            let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) else {
                return Err(malformed(lineno, format!("bad stanza header `{line}`")));
            };
            finish(pending.take(), &mut terms)?;
            stanza = if name == "Term" {
                pending = Some(Pending {
                    term: OboTerm::default(),
                    start: lineno,
                    has_id: false,
                });
                Stanza::Term
            } else {
                Stanza::Other
            };
            continue;
        }

        let Some((tag, value)) = line.split_once(':') else {
            return Err(malformed(
                lineno,
                format!("expected `tag: value`, got `{line}`"),
            ));
        };
        let (tag, value) = (tag.trim(), value.trim());
        if stanza != Stanza::Term {
            continue;
        }
        let p = pending.as_mut().expect("term stanza open");
        let term = &mut p.term;
        match tag {
            "id" => {
                let id = identifier(value);
                if id.is_empty() {
                    return Err(malformed(lineno, "empty id"));
                }
                if p.has_id {
                    return Err(malformed(lineno, "second id in one stanza"));
                }
                term.id = id.to_string();
                p.has_id = true;
            }
            "name" => term.name = value.to_string(),
            "namespace" => term.namespace = identifier(value).to_string(),
            "is_a" => {
                let parent = identifier(value);
                if parent.is_empty() || parent.contains(char::is_whitespace) {
                    return Err(malformed(lineno, format!("bad is_a target `{value}`")));
                }
                term.is_a.push(parent.to_string());
            }
            "relationship" => {
                let mut parts = identifier(value).split_whitespace();
                match (parts.next(), parts.next()) {
                    (Some(rel), Some(target)) => term
                        .relationships
                        .push((rel.to_string(), target.to_string())),
                    _ => {
                        return Err(malformed(
                            lineno,
                            format!("relationship needs a type and a target, got `{value}`"),
                        ))
                    }
                }
            }
            "is_obsolete" => {
                term.obsolete = match identifier(value) {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(malformed(
                            lineno,
                            format!("is_obsolete must be true/false, got `{other}`"),
                        ))
                    }
                }
            }
            _ => {}
        }
    }
    finish(pending.take(), &mut terms)?;
    Ok(terms)
}

/// Terms and `(child, parent)` edges ready for [`ontropy_core::Ontology::build`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphInput {
    pub terms: Vec<String>,
    pub edges: Vec<(String, String)>,
    /// Edges whose parent was filtered out.
    pub dropped_edges: usize,
}

/// Applies the obsolete, namespace and relation filters.
///
/// `is_a` edges are always emitted; a `relationship` edge only when its
/// type is in `relations`.
pub fn to_graph(
    terms: &[OboTerm],
    namespace: Option<&str>,
    relations: &BTreeSet<String>,
) -> Result<GraphInput, OboError> {
    let keep = |t: &OboTerm| !t.obsolete && namespace.is_none_or(|ns| t.namespace == ns);
    let kept: HashSet<&str> = terms
        .iter()
        .filter(|t| keep(t))
        .map(|t| t.id.as_str())
        .collect();
    if kept.is_empty() {
        return Err(OboError::EmptyAfterFilter);
    }
    let mut out = GraphInput::default();
    for t in terms.iter().filter(|t| keep(t)) {
        out.terms.push(t.id.clone());
        let rel_targets = t
            .relationships
            .iter()
            .filter(|(rel, _)| relations.contains(rel))
            .map(|(_, target)| target);
        for parent in t.is_a.iter().chain(rel_targets) {
            if kept.contains(parent.as_str()) {
                out.edges.push((t.id.clone(), parent.clone()));
            } else {
                out.dropped_edges += 1;
            }
        }
    }
    Ok(out)
}

/// Serializes terms back to minimal OBO text (only the tags read above).
pub fn emit_obo(terms: &[OboTerm]) -> String {
    let mut out = String::from("format-version: 1.2\n");
    for t in terms {
        let _ = write!(out, "\n[Term]\nid: {}\n", t.id);
        if !t.name.is_empty() {
            let _ = writeln!(out, "name: {}", t.name);
        }
        if !t.namespace.is_empty() {
            let _ = writeln!(out, "namespace: {}", t.namespace);
        }
        for p in &t.is_a {
            let _ = writeln!(out, "is_a: {p}");
        }
        for (rel, target) in &t.relationships {
            let _ = writeln!(out, "relationship: {rel} {target}");
        }
        if t.obsolete {
            out.push_str("is_obsolete: true\n");
        }
    }
    out
}
