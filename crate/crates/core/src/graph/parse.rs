use std::collections::{HashMap, HashSet};
use std::path::Path;

use super::{Edge, Sign, SignedGraph};
use crate::error::{Error, ParseErrorKind, Result};

fn intern<'a>(label: &'a str, index: &mut HashMap<&'a str, usize>, labels: &mut Vec<String>) -> usize {
    let next = labels.len();
    *index.entry(label).or_insert_with(|| {
        labels.push(label.to_string());
        next
    })
}

fn parse_sign(token: &str) -> Option<Sign> {
    match token {
        "+" | "+1" | "1" => Some(Sign::Positive),
        "-" | "-1" => Some(Sign::Negative),
        _ => None,
    }
}

/// Parses whitespace-separated `<u> <v> <sign>` lines.
///
/// `#` starts a comment and blank lines are skipped. A line holding a single
/// label declares a node without edges, which is how isolated nodes survive
/// a round trip through [`SignedGraph::to_edge_list`]. Labels are compacted to
/// `0..n` in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<SignedGraph> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            [label] => {
                intern(label, &mut index, &mut labels);
            }
            [a, b, s] => {
                let sign = parse_sign(s).ok_or_else(|| Error::Parse {
                    line,
                    kind: ParseErrorKind::BadSign(s.to_string()),
                })?;
                if a == b {
                    return Err(Error::Parse {
                        line,
                        kind: ParseErrorKind::SelfLoop(a.to_string()),
                    });
                }
                let i = intern(a, &mut index, &mut labels);
                let j = intern(b, &mut index, &mut labels);
                let key = (i.min(j), i.max(j));
                if !seen.insert(key) {
                    return Err(Error::Parse {
                        line,
                        kind: ParseErrorKind::DuplicateEdge(a.to_string(), b.to_string()),
                    });
                }
                edges.push(Edge {
                    u: key.0,
                    v: key.1,
                    sign,
                });
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    kind: ParseErrorKind::Malformed(raw.trim().to_string()),
                })
            }
        }
    }
    edges.sort_unstable();
    Ok(SignedGraph::from_sorted_edges(labels, edges))
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<SignedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_file() {
        let g = parse_edge_list("1 2 +\n2 3 -\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.negative_edge_count(), 1);
        assert_eq!(g.labels(), ["1", "2", "3"]);
    }

    #[test]
    fn all_sign_spellings() {
        let g = parse_edge_list("a b +1\nb c 1\nc d -1\nd e +\ne f -\n").unwrap();
        assert_eq!(g.negative_edge_count(), 2);
        assert_eq!(g.positive_edge_count(), 3);
    }

    #[test]
    fn comments_blank_lines_and_declarations() {
        let g = parse_edge_list("# header\n\nx\n y z -  # trailing\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_names_the_line() {
        let err = parse_edge_list("1 1 +").unwrap_err();
        match err {
            Error::Parse { line, kind } => {
                assert_eq!(line, 1);
                assert_eq!(kind, ParseErrorKind::SelfLoop("1".into()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_in_either_orientation() {
        let err = parse_edge_list("a b +\nb a -\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, kind: ParseErrorKind::DuplicateEdge(..) }));
    }

    #[test]
    fn bad_sign_and_malformed() {
        assert!(matches!(
            parse_edge_list("a b 2").unwrap_err(),
            Error::Parse { line: 1, kind: ParseErrorKind::BadSign(_) }
        ));
        assert!(matches!(
            parse_edge_list("a b\n").unwrap_err(),
            Error::Parse { line: 1, kind: ParseErrorKind::Malformed(_) }
        ));
        assert!(matches!(
            parse_edge_list("ok x +\na b + 1\n").unwrap_err(),
            Error::Parse { line: 2, kind: ParseErrorKind::Malformed(_) }
        ));
    }

    #[test]
    fn error_message_mentions_line() {
        let msg = parse_edge_list("a b +\nc c -\n").unwrap_err().to_string();
        assert!(msg.starts_with("line 2:"), "{msg}");
    }
}
