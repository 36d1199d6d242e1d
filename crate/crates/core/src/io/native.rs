//! Self-describing binary edge list for fast reuse of summarised graphs.
//!
//! All integers are little-endian.
//!
//! | offset | size  | field                              |
//! |--------|-------|------------------------------------|
//! | 0      | 8     | magic `b"SPGRAPH\0"`               |
//! | 8      | 4     | format version, `u32` = 1          |
//! | 12     | 4     | reserved flags, `u32` = 0          |
//! | 16     | 8     | `num_nodes`, `u64`                 |
//! | 24     | 8     | `num_edges` (m), `u64`             |
//! | 32     | 4·m   | source ids, `u32` each             |
//! | 32+4m  | 4·m   | destination ids, `u32` each        |
//!
//! Writers emit the canonical edge order (`src < dst`, lexicographically
//! sorted), so equal graphs produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub const MAGIC: &[u8; 8] = b"SPGRAPH\0";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 32;

pub struct Decoded {
    pub num_nodes: usize,
    pub pairs: Vec<(NodeId, NodeId)>,
}

fn format_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

pub(crate) fn decode(bytes: &[u8], path: &Path) -> Result<Decoded> {
    if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
        return Err(format_err(path, "not a native edge-list file"));
    }
    let version = u32_at(bytes, 8);
    if version != VERSION {
        return Err(format_err(path, format!("unsupported version {version}")));
    }
    let num_nodes = u64_at(bytes, 16);
    let m = u64_at(bytes, 24) as usize;
    if num_nodes > NodeId::MAX as u64 + 1 {
        return Err(crate::error::capacity(num_nodes as i128 - 1));
    }
    let body = &bytes[HEADER_LEN..];
    if m.checked_mul(8) != Some(body.len()) {
        return Err(format_err(
            path,
            format!("body is {} bytes, expected {m} edges", body.len()),
        ));
    }
    let (src, dst) = body.split_at(4 * m);
    let pairs = src
        .par_chunks_exact(4)
        .zip(dst.par_chunks_exact(4))
        .map(|(s, d)| (u32_at(s, 0), u32_at(d, 0)))
        .collect();
    Ok(Decoded {
        num_nodes: num_nodes as usize,
        pairs,
    })
}

pub(crate) fn encode<W: Write>(g: &Graph, out: &mut W) -> std::io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&0u32.to_le_bytes())?;
    out.write_all(&(g.num_nodes() as u64).to_le_bytes())?;
    out.write_all(&(g.num_edges() as u64).to_le_bytes())?;
    for &(u, _) in g.edges() {
        out.write_all(&u.to_le_bytes())?;
    }
    for &(_, v) in g.edges() {
        out.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read(path: &Path) -> Result<Decoded> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes, path)
}

pub fn write(g: &Graph, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    encode(g, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}
