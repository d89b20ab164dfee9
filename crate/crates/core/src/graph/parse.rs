//! Text formats for base graphs, update streams and vertex sets.
//!
//! All formats are line oriented and whitespace separated; blank lines and
//! lines starting with `#` are ignored.
//!
//! Graph file: `u v` per edge, plus optional `v <id>` lines declaring
//! vertices (needed for isolated ones).
//!
//! Op stream: `av <v> <k> <n1> ... <nk>`, `rv <v>`, `ae <u> <v>`, `re <u> <v>`.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{DynamicGraph, GraphError, Strictness, UpdateOp, VertexId};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Graph { line, .. } => Some(*line),
            ParseError::Io(_) => None,
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn parse_id(tok: &str, line: usize) -> Result<VertexId, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid vertex id `{tok}`")))
}

/// Yields `(line_number, tokens)` for every non-empty, non-comment line.
fn content_lines<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = Result<(usize, Vec<String>), ParseError>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(text) => {
            let trimmed = text.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                None
            } else {
                Some(Ok((
                    i + 1,
                    trimmed.split_whitespace().map(str::to_owned).collect(),
                )))
            }
        }
    })
}

/// Parses a graph file. Duplicate edge lines fail in strict mode and are
/// ignored in lenient mode; self-loops always fail.
pub fn parse_graph<R: BufRead>(reader: R, strictness: Strictness) -> Result<DynamicGraph, ParseError> {
    let mut g = DynamicGraph::new();
    for item in content_lines(reader) {
        let (line, toks) = item?;
        match toks.as_slice() {
            [tag, id] if tag == "v" => g.ensure_vertex(parse_id(id, line)?),
            [a, b] => {
                let (u, v) = (parse_id(a, line)?, parse_id(b, line)?);
                if u == v {
                    return Err(ParseError::Graph { line, source: GraphError::SelfLoop(u) });
                }
                g.ensure_vertex(u);
                g.ensure_vertex(v);
                match g.insert_edge(u, v) {
                    Ok(()) => {}
                    Err(GraphError::DuplicateEdge(..)) if strictness == Strictness::Lenient => {}
                    Err(source) => return Err(ParseError::Graph { line, source }),
                }
            }
            _ => return Err(syntax(line, "expected `u v` or `v <id>`")),
        }
    }
    Ok(g)
}

/// Parses an update-operation stream.
pub fn parse_ops<R: BufRead>(reader: R) -> Result<Vec<UpdateOp>, ParseError> {
    let mut ops = Vec::new();
    for item in content_lines(reader) {
        let (line, toks) = item?;
        let op = match toks.first().map(String::as_str) {
            Some("av") => {
                if toks.len() < 3 {
                    return Err(syntax(line, "`av` needs a vertex and a neighbor count"));
                }
                let v = parse_id(&toks[1], line)?;
                let k: usize = toks[2]
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid neighbor count `{}`", toks[2])))?;
                if toks.len() != 3 + k {
                    return Err(syntax(
                        line,
                        format!("`av` declares {k} neighbors but lists {}", toks.len() - 3),
                    ));
                }
                let nbrs = toks[3..]
                    .iter()
                    .map(|t| parse_id(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                UpdateOp::AddVertex(v, nbrs)
            }
            Some("rv") if toks.len() == 2 => UpdateOp::RemoveVertex(parse_id(&toks[1], line)?),
            Some(tag @ ("ae" | "re")) if toks.len() == 3 => {
                let (u, v) = (parse_id(&toks[1], line)?, parse_id(&toks[2], line)?);
                if tag == "ae" {
                    UpdateOp::AddEdge(u, v)
                } else {
                    UpdateOp::RemoveEdge(u, v)
                }
            }
            _ => return Err(syntax(line, format!("malformed op `{}`", toks.join(" ")))),
        };
        ops.push(op);
    }
    Ok(ops)
}

/// Parses a whitespace-separated list of vertex ids.
pub fn parse_vertex_set<R: BufRead>(reader: R) -> Result<Vec<VertexId>, ParseError> {
    let mut out = Vec::new();
    for item in content_lines(reader) {
        let (line, toks) = item?;
        for t in &toks {
            out.push(parse_id(t, line)?);
        }
    }
    Ok(out)
}

/// Writes `g` in the graph file format: isolated vertices as `v <id>`
/// lines first, then sorted edges.
pub fn write_graph<W: Write>(g: &DynamicGraph, mut out: W) -> io::Result<()> {
    for v in g.sorted_vertices() {
        if g.degree(v) == 0 {
            writeln!(out, "v {v}")?;
        }
    }
    for (u, v) in g.sorted_edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_ops<W: Write>(ops: &[UpdateOp], mut out: W) -> io::Result<()> {
    for op in ops {
        writeln!(out, "{op}")?;
    }
    Ok(())
}

pub fn write_vertex_set<W: Write>(set: &[VertexId], mut out: W) -> io::Result<()> {
    for v in set {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(text: &str) -> Result<DynamicGraph, ParseError> {
        parse_graph(text.as_bytes(), Strictness::Strict)
    }

    #[test]
    fn path_graph() {
        let g = graph("1 2\n2 3").unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 2));
    }

    #[test]
    fn comments_are_skipped() {
        let g = graph("# comment\n1 2").unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
    }

    #[test]
    fn self_loop_rejected() {
        let err = graph("1 1").unwrap_err();
        assert!(matches!(err, ParseError::Graph { line: 1, source: GraphError::SelfLoop(1) }));
    }

    #[test]
    fn duplicate_edges_depend_on_strictness() {
        let err = graph("1 2\n2 1").unwrap_err();
        assert!(matches!(err, ParseError::Graph { line: 2, source: GraphError::DuplicateEdge(2, 1) }));
        let g = parse_graph("1 2\n2 1".as_bytes(), Strictness::Lenient).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn isolated_vertices_via_header() {
        let g = graph("v 7\nv 8\n1 2").unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.degree(7), 0);
    }

    #[test]
    fn bad_graph_line() {
        assert_eq!(graph("1 2\n1 2 3").unwrap_err().line(), Some(2));
        assert_eq!(graph("a b").unwrap_err().line(), Some(1));
    }

    #[test]
    fn op_lines() {
        assert_eq!(parse_ops("ae 1 2".as_bytes()).unwrap(), vec![UpdateOp::AddEdge(1, 2)]);
        assert_eq!(
            parse_ops("av 9 2 1 2".as_bytes()).unwrap(),
            vec![UpdateOp::AddVertex(9, vec![1, 2])]
        );
        assert_eq!(
            parse_ops("# x\nrv 3\n\nre 4 5\nav 6 0".as_bytes()).unwrap(),
            vec![
                UpdateOp::RemoveVertex(3),
                UpdateOp::RemoveEdge(4, 5),
                UpdateOp::AddVertex(6, vec![])
            ]
        );
    }

    #[test]
    fn malformed_ops() {
        assert_eq!(parse_ops("xx 1".as_bytes()).unwrap_err().line(), Some(1));
        assert_eq!(parse_ops("ae 1 2\nav 3 2 1".as_bytes()).unwrap_err().line(), Some(2));
        assert_eq!(parse_ops("rv".as_bytes()).unwrap_err().line(), Some(1));
    }

    #[test]
    fn op_display_round_trips() {
        let ops = vec![
            UpdateOp::AddVertex(9, vec![1, 2]),
            UpdateOp::RemoveVertex(3),
            UpdateOp::AddEdge(1, 2),
            UpdateOp::RemoveEdge(2, 1),
        ];
        let mut buf = Vec::new();
        write_ops(&ops, &mut buf).unwrap();
        assert_eq!(parse_ops(buf.as_slice()).unwrap(), ops);
    }
}
