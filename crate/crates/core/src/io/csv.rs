//! Two-column integer edge lists, comma or tab separated.
//!
//! A single header line is allowed and detected by a non-numeric first
//! token. Blank lines are ignored.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

const CHUNK_LINES: usize = 1 << 16;

fn parse_id(token: &str, path: &Path, line: usize) -> Result<NodeId> {
    let parse_err = |message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let id: i128 = token
        .parse()
        .map_err(|_| parse_err(format!("`{token}` is not an integer node id")))?;
    if id < 0 {
        return Err(parse_err(format!("negative node id {id}")));
    }
    NodeId::try_from(id).map_err(|_| crate::error::capacity(id))
}

fn split_row(row: &str) -> impl Iterator<Item = &str> {
    row.split([',', '\t']).map(str::trim)
}

fn is_header(row: &str) -> bool {
    split_row(row)
        .next()
        .is_some_and(|t| !t.is_empty() && t.parse::<i128>().is_err())
}

fn parse_row(row: &str, path: &Path, line: usize) -> Result<Option<(NodeId, NodeId)>> {
    if row.trim().is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = split_row(row).collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("expected 2 columns, found {}", fields.len()),
        });
    }
    Ok(Some((
        parse_id(fields[0], path, line)?,
        parse_id(fields[1], path, line)?,
    )))
}

pub(crate) fn parse(text: &str, path: &Path) -> Result<Vec<(NodeId, NodeId)>> {
    let lines: Vec<&str> = text.lines().collect();
    let first_content = lines.iter().position(|l| !l.trim().is_empty());
    let skip = match first_content {
        Some(i) if is_header(lines[i]) => i + 1,
        _ => 0,
    };

    // Chunks parse in parallel; the first error in file order wins.
    let chunks: Vec<Result<Vec<(NodeId, NodeId)>>> = lines[skip..]
        .par_chunks(CHUNK_LINES)
        .enumerate()
        .map(|(c, chunk)| {
            let base = skip + c * CHUNK_LINES + 1;
            let mut out = Vec::with_capacity(chunk.len());
            for (i, row) in chunk.iter().enumerate() {
                if let Some(pair) = parse_row(row, path, base + i)? {
                    out.push(pair);
                }
            }
            Ok(out)
        })
        .collect();

    let mut pairs = Vec::with_capacity(lines.len());
    for chunk in chunks {
        pairs.extend(chunk?);
    }
    Ok(pairs)
}

pub fn read(path: &Path) -> Result<Vec<(NodeId, NodeId)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text, path)
}

pub fn write(g: &Graph, path: &Path) -> Result<()> {
    let io = |e| Error::io(path, e);
    let file = fs::File::create(path).map_err(io)?;
    let mut w = std::io::BufWriter::new(file);
    writeln!(w, "src,dst").map_err(io)?;
    for &(u, v) in g.edges() {
        writeln!(w, "{u},{v}").map_err(io)?;
    }
    w.flush().map_err(io)
}
