use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::{BoundedDegreeGraph, GraphError, VertexId};

/// Parse the plain-text edge-list format:
///
/// ```text
/// # optional comments
/// n d
/// u v      (one edge per line, u < v)
/// ```
pub fn parse_edge_list<R: Read>(reader: R) -> Result<BoundedDegreeGraph, GraphError> {
    let reader = BufReader::new(reader);
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let mut fields = content.split_whitespace();
        let Some(first) = fields.next() else { continue };
        let second = fields.next().ok_or_else(|| GraphError::Parse {
            line: line_no,
            message: "expected two whitespace-separated integers".into(),
        })?;
        if fields.next().is_some() {
            return Err(GraphError::Parse {
                line: line_no,
                message: "expected exactly two fields".into(),
            });
        }
        let parse = |s: &str| -> Result<u64, GraphError> {
            s.parse::<u64>().map_err(|e| GraphError::Parse {
                line: line_no,
                message: format!("bad integer {s:?}: {e}"),
            })
        };
        let (a, b) = (parse(first)?, parse(second)?);
        match header {
            None => header = Some((a as usize, b as usize)),
            Some(_) => {
                if a >= b {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("edge ({a}, {b}) must satisfy u < v"),
                    });
                }
                edges.push((a as VertexId, b as VertexId));
            }
        }
    }
    let (n, d) = header.ok_or_else(|| GraphError::Parse {
        line: 1,
        message: "missing `n d` header".into(),
    })?;
    BoundedDegreeGraph::new(n, d, &edges)
}

pub fn load_edge_list<P: AsRef<Path>>(path: P) -> Result<BoundedDegreeGraph, GraphError> {
    parse_edge_list(std::fs::File::open(path)?)
}

/// Write the graph in the same format: header, then edges `u v` with
/// `u < v` in ascending order. Output is byte-deterministic.
pub fn write_edge_list<W: Write>(g: &BoundedDegreeGraph, mut w: W) -> Result<(), GraphError> {
    writeln!(w, "{} {}", g.n(), g.degree_bound())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn save_edge_list<P: AsRef<Path>>(g: &BoundedDegreeGraph, path: P) -> Result<(), GraphError> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}
