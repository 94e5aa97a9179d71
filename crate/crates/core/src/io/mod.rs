//! Text formats: edge lists (read and write), adjacency matrices and DOT
//! (write only), and JSON run reports.
//!
//! Edge-list format: the first non-comment line holds the order `n`; every
//! following non-comment line is `u v` for a directed edge `u -> v`. A `#`
//! starts a comment that runs to the end of the line; blank lines are ignored.

mod report;

pub use report::{from_report_json, to_report_json};

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, Vertex, MAX_ORDER};
use crate::error::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: Error,
    },

    #[error("line {line}: duplicate edge {u} -> {v}")]
    Duplicate { line: usize, u: Vertex, v: Vertex },

    #[error("missing order line")]
    MissingOrder,
}

fn parse_number(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::Syntax {
        line,
        message: format!("expected a non-negative integer, found {token:?}"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, ParseError> {
    let mut graph: Option<Digraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                let [order] = tokens[..] else {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("expected the vertex count alone, found {content:?}"),
                    });
                };
                let n = parse_number(order, line)?;
                if n > MAX_ORDER {
                    return Err(ParseError::Invalid {
                        line,
                        source: Error::Capacity { requested: n, max: MAX_ORDER },
                    });
                }
                graph = Some(Digraph::new(n).expect("order checked"));
            }
            Some(d) => {
                let [a, b] = tokens[..] else {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("expected `u v`, found {content:?}"),
                    });
                };
                let (u, v) = (parse_number(a, line)?, parse_number(b, line)?);
                if d.has_edge(u, v) {
                    return Err(ParseError::Duplicate { line, u, v });
                }
                d.add_edge(u, v).map_err(|source| ParseError::Invalid { line, source })?;
            }
        }
    }
    graph.ok_or(ParseError::MissingOrder)
}

/// Canonical edge list: order line, then edges sorted by `(u, v)`.
pub fn serialize_edge_list(d: &Digraph) -> String {
    let mut out = format!("{}\n", d.order());
    for (u, v) in d.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// `n` lines of `n` characters, `1` at column `v` of line `u` iff `u -> v`.
pub fn serialize_matrix(d: &Digraph) -> String {
    let n = d.order();
    let mut out = String::with_capacity(n * (n + 1));
    for u in 0..n {
        for v in 0..n {
            out.push(if d.has_edge(u, v) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Graphviz DOT with numeric ids; every vertex is declared so isolated ones survive.
pub fn serialize_dot(d: &Digraph) -> String {
    let mut out = String::from("digraph {\n");
    for v in 0..d.order() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in d.edges() {
        writeln!(out, "  {u} -> {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criticality::extremal_digraph;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_edge_list("2\n0 1\n1 0\n").unwrap(), Digraph::complete(2).unwrap());
        assert_eq!(
            parse_edge_list("4\n0 1\n1 2\n2 3\n3 0\n3 2\n1 0\n").unwrap(),
            extremal_digraph(4).unwrap()
        );
        assert!(matches!(
            parse_edge_list("2\n0 0\n"),
            Err(ParseError::Invalid { line: 2, source: Error::Loop(0) })
        ));
    }

    #[test]
    fn parse_comments_and_blanks() {
        let text = "# header\n\n3   # order\n0 1\n  # nothing\n1\t2 # tab\n";
        assert_eq!(parse_edge_list(text).unwrap(), Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_edge_list("3\n0 1\n1 x\n"), Err(ParseError::Syntax { line: 3, .. })));
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 3\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_edge_list("3\n0 5\n"),
            Err(ParseError::Invalid { line: 2, source: Error::OutOfRange { vertex: 5, order: 3 } })
        ));
        assert!(matches!(
            parse_edge_list("3\n0 1\n\n0 1\n"),
            Err(ParseError::Duplicate { line: 4, u: 0, v: 1 })
        ));
        assert!(matches!(parse_edge_list("65\n"), Err(ParseError::Invalid { line: 1, .. })));
        assert!(matches!(parse_edge_list("# only\n"), Err(ParseError::MissingOrder)));
        assert!(matches!(parse_edge_list("-1\n"), Err(ParseError::Syntax { line: 1, .. })));
    }

    #[test]
    fn matrix_and_dot() {
        assert_eq!(serialize_matrix(&Digraph::complete(2).unwrap()), "01\n10\n");
        assert_eq!(serialize_matrix(&Digraph::new(2).unwrap()), "00\n00\n");
        assert_eq!(
            serialize_dot(&Digraph::from_edges(3, [(2, 0), (0, 1)]).unwrap()),
            "digraph {\n  0;\n  1;\n  2;\n  0 -> 1;\n  2 -> 0;\n}\n"
        );
    }

    #[test]
    fn extremal4_edge_list() {
        let text = serialize_edge_list(&extremal_digraph(4).unwrap());
        assert_eq!(text.lines().count(), 7);
        assert_eq!(text, "4\n0 1\n1 0\n1 2\n2 3\n3 0\n3 2\n");
    }
}
