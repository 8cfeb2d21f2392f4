//! Line-oriented text formats.
//!
//! Universe file:
//!
//! ```text
//! k=2
//! v 5 9
//! v 3 8
//! e 0 1
//! ```
//!
//! `v` lines list vertices, `e <source> <target>` lines refer to 0-based
//! positions in the `v` list, `#` starts a comment. A labeling file is a
//! universe file followed by `l <vertex-index> <label>` lines covering every
//! vertex exactly once.
//!
//! Writers emit the canonical form: vertices in lexicographic order, edges
//! sorted by source then target, labels in vertex order, no comments.
//! Parsing and re-serializing a canonical file reproduces it byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::{ParseError, UniverseError};
use crate::labeling::LabeledUniverse;
use crate::lattice::{Universe, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

struct RawDocument {
    k: usize,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize, usize)>,
    labels: Vec<(usize, usize, u32)>,
}

fn numbers<T: std::str::FromStr>(
    line_no: usize,
    tokens: std::str::SplitWhitespace<'_>,
) -> Result<Vec<T>, ParseError> {
    tokens
        .map(|t| {
            t.parse::<T>().map_err(|_| {
                ParseError::new(
                    line_no,
                    format!("expected a nonnegative integer, got `{t}`"),
                )
            })
        })
        .collect()
}

fn read_document(text: &str, allow_labels: bool) -> Result<RawDocument, ParseError> {
    let mut k = None;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(value) = line.strip_prefix("k=") {
            if k.is_some() {
                return Err(ParseError::new(line_no, "duplicate `k=` header"));
            }
            let value = value
                .trim()
                .parse::<usize>()
                .map_err(|_| ParseError::new(line_no, format!("bad dimension `{value}`")))?;
            k = Some(value);
            continue;
        }
        let Some(dim) = k else {
            return Err(ParseError::new(line_no, "expected `k=<int>` header first"));
        };
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let coords: Vec<u32> = numbers(line_no, tokens)?;
                if coords.len() != dim {
                    return Err(ParseError::new(
                        line_no,
                        format!("vertex has {} coordinates, expected {dim}", coords.len()),
                    ));
                }
                vertices.push(Vertex::new(coords));
            }
            Some("e") => match numbers::<usize>(line_no, tokens)?.as_slice() {
                &[s, t] => edges.push((line_no, s, t)),
                _ => return Err(ParseError::new(line_no, "edge needs exactly two indices")),
            },
            Some("l") if allow_labels => match numbers::<u64>(line_no, tokens)?.as_slice() {
                &[i, label] => {
                    let label = u32::try_from(label)
                        .map_err(|_| ParseError::new(line_no, "label out of range"))?;
                    labels.push((line_no, i as usize, label));
                }
                _ => return Err(ParseError::new(line_no, "label needs an index and a value")),
            },
            Some(other) => {
                return Err(ParseError::new(
                    line_no,
                    format!("unknown directive `{other}`"),
                ))
            }
            None => {}
        }
    }
    let k = k.ok_or_else(|| ParseError::new(0, "missing `k=<int>` header"))?;
    Ok(RawDocument {
        k,
        vertices,
        edges,
        labels,
    })
}

fn build_universe(doc: &RawDocument) -> Result<Universe, FormatError> {
    let endpoint = |line: usize, i: usize| {
        doc.vertices.get(i).cloned().ok_or_else(|| {
            ParseError::new(line, format!("edge endpoint {i} is not a listed vertex"))
        })
    };
    let edges = doc
        .edges
        .iter()
        .map(|&(line, s, t)| Ok((endpoint(line, s)?, endpoint(line, t)?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(Universe::new(doc.k, doc.vertices.iter().cloned(), edges)?)
}

pub fn parse_universe(text: &str) -> Result<Universe, FormatError> {
    build_universe(&read_document(text, false)?)
}

pub fn parse_labeling(text: &str) -> Result<LabeledUniverse, FormatError> {
    let doc = read_document(text, true)?;
    let universe = build_universe(&doc)?;
    let mut labels: Vec<Option<u32>> = vec![None; universe.len()];
    for &(line, i, label) in &doc.labels {
        let v = doc.vertices.get(i).ok_or_else(|| {
            ParseError::new(line, format!("label index {i} is not a listed vertex"))
        })?;
        let slot = &mut labels[universe.index_of(v).expect("listed vertex")];
        match slot {
            Some(old) if *old != label => {
                return Err(ParseError::new(line, format!("conflicting labels for {v}")).into())
            }
            _ => *slot = Some(label),
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| {
                ParseError::new(0, format!("vertex {} has no label", universe.vertex(i))).into()
            })
        })
        .collect::<Result<Vec<u32>, FormatError>>()?;
    Ok(LabeledUniverse::new(universe, labels))
}

pub fn write_universe(universe: &Universe) -> String {
    let mut out = String::new();
    writeln!(out, "k={}", universe.dimension()).unwrap();
    for v in universe.vertices() {
        out.push('v');
        for c in v.coords() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    for (s, t) in universe.edge_indices() {
        writeln!(out, "e {s} {t}").unwrap();
    }
    out
}

pub fn write_labeling(universe: &Universe, labels: &[u32]) -> String {
    assert_eq!(universe.len(), labels.len(), "labeling must be total");
    let mut out = write_universe(universe);
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "l {i} {label}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sample_fragment;

    #[test]
    fn canonical_round_trip() {
        let u = sample_fragment();
        let text = write_universe(&u);
        assert!(text.starts_with("k=2\nv 0 0\nv 0 1\n"));
        let back = parse_universe(&text).unwrap();
        assert_eq!(back, u);
        assert_eq!(write_universe(&back), text);
    }

    #[test]
    fn non_canonical_input_is_reindexed() {
        let text = "# two vertices\nk=2\nv 5 9\nv 3 8   # trailing comment\n\ne 0 1\n";
        let u = parse_universe(text).unwrap();
        assert_eq!(write_universe(&u), "k=2\nv 3 8\nv 5 9\ne 1 0\n");
        let lab = parse_labeling("k=2\nv 5 9\nv 3 8\ne 0 1\nl 0 3\nl 1 3\n").unwrap();
        assert_eq!(lab.labels, vec![3, 3]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_universe("v 1 2\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Parse(ParseError { line: 1, .. })
        ));
        let err = parse_universe("k=2\nv 1 2 3\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Parse(ParseError { line: 2, .. })
        ));
        let err = parse_universe("k=2\nv 1 2\ne 0 4\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Parse(ParseError { line: 3, .. })
        ));
        let err = parse_universe("k=2\nv 2 6\nv 3 4\ne 1 0\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Universe(UniverseError::DownwardViolation { .. })
        ));
        assert!(parse_universe("k=2\nl 0 1\n").is_err());
        assert!(parse_labeling("k=2\nv 1 2\nv 0 0\nl 0 1\n").is_err());
        assert!(parse_labeling("k=2\nv 1 2\nl 0 1\nl 0 2\n").is_err());
        assert!(parse_universe("k=2\nv -1 2\n").is_err());
    }

    #[test]
    fn empty_universe() {
        let u = parse_universe("k=3\n").unwrap();
        assert!(u.is_empty());
        assert_eq!(write_universe(&u), "k=3\n");
    }
}
