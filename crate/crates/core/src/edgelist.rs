//! Plain-text edge lists.
//!
//! ```text
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```
//!
//! Fields are whitespace separated ASCII decimals. Edges may be read in any
//! order and orientation; [`write_edge_list`] always emits the canonical form
//! (sorted, `u < v`), so `write(read(x))` canonicalizes `x`.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl EdgeListError {
    pub fn line(&self) -> Option<usize> {
        match self {
            Self::Malformed { line, .. }
            | Self::SelfLoop { line, .. }
            | Self::VertexOutOfRange { line, .. }
            | Self::DuplicateEdge { line, .. } => Some(*line),
            Self::Io(_) => None,
        }
    }
}

fn parse_pair(text: &str, line: usize, what: &str) -> Result<(usize, usize), EdgeListError> {
    let malformed = |msg: String| EdgeListError::Malformed { line, msg };
    let mut it = text.split_whitespace();
    let mut field = |name: &str| -> Result<usize, EdgeListError> {
        let tok = it
            .next()
            .ok_or_else(|| malformed(format!("{what}: missing {name}")))?;
        tok.parse()
            .map_err(|_| malformed(format!("{what}: invalid {name} {tok:?}")))
    };
    let a = field("first field")?;
    let b = field("second field")?;
    if let Some(extra) = it.next() {
        return Err(malformed(format!("{what}: unexpected trailing field {extra:?}")));
    }
    Ok((a, b))
}

pub fn read_edge_list<R: BufRead>(source: R) -> Result<Graph, EdgeListError> {
    let mut lines = source.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (n, m) = loop {
        match lines.next() {
            None => {
                return Err(EdgeListError::Malformed {
                    line: 1,
                    msg: "missing header \"n m\"".into(),
                })
            }
            Some((no, text)) => {
                let text = text?;
                if text.trim().is_empty() {
                    continue;
                }
                break parse_pair(&text, no, "header")?;
            }
        }
    };

    let mut edges: Vec<(Vertex, Vertex, usize)> = Vec::with_capacity(m);
    let mut last_line = 1;
    for (no, text) in lines {
        let text = text?;
        last_line = no;
        if text.trim().is_empty() {
            continue;
        }
        if edges.len() == m {
            return Err(EdgeListError::Malformed {
                line: no,
                msg: format!("more than the {m} edges declared in the header"),
            });
        }
        let (u, v) = parse_pair(&text, no, "edge")?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(EdgeListError::VertexOutOfRange { line: no, vertex, n });
            }
        }
        if u == v {
            return Err(EdgeListError::SelfLoop { line: no, vertex: u });
        }
        edges.push((u.min(v), u.max(v), no));
    }
    if edges.len() != m {
        return Err(EdgeListError::Malformed {
            line: last_line,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }

    // Report the later occurrence of a duplicate.
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        return Err(EdgeListError::DuplicateEdge {
            line: w[0].2.max(w[1].2),
            u: w[0].0,
            v: w[0].1,
        });
    }
    Ok(Graph::from_edges(n, edges.into_iter().map(|(u, v, _)| (u, v)))
        .expect("edges validated above"))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    read_edge_list(text.as_bytes())
}

pub fn write_edge_list<W: Write>(g: &Graph, mut sink: W) -> io::Result<()> {
    writeln!(sink, "{} {}", g.n(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(sink, "{u} {v}")?;
    }
    Ok(())
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ASCII output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_er;
    use proptest::prelude::*;

    #[test]
    fn reads_a_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn self_loop_reported_with_line() {
        let err = parse_edge_list("3 1\n0 0").unwrap_err();
        assert!(matches!(err, EdgeListError::SelfLoop { line: 2, vertex: 0 }), "{err}");
    }

    #[test]
    fn error_lines() {
        let cases = [
            ("x 2\n0 1\n", 1),
            ("3\n", 1),
            ("3 1\n0 3\n", 2),
            ("3 2\n0 1\n1 0\n", 3),
            ("3 1\n0 1\n1 2\n", 3),
            ("3 2\n0 1\n", 2),
            ("3 1\n0 1 2\n", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            let err = parse_edge_list(text).unwrap_err();
            assert_eq!(err.line(), Some(line), "{text:?}: {err}");
        }
    }

    #[test]
    fn canonicalizes_orientation_and_order() {
        let g = parse_edge_list("4 3\n3 0\n2 1\n1 0\n").unwrap();
        assert_eq!(format_edge_list(&g), "4 3\n0 1\n0 3\n1 2\n");
    }

    proptest! {
        #[test]
        fn write_then_read_is_identity(n in 1usize..40, p in 0.0f64..=1.0, seed: u64) {
            let g = generate_er(n, p, seed).unwrap();
            let text = format_edge_list(&g);
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(format_edge_list(&back), text);
        }
    }
}
