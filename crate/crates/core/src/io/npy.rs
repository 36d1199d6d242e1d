//! Minimal reader/writer for one-dimensional integer `.npy` arrays.
//!
//! Only what edge arrays need is supported: little-endian `<i4`/`<i8`
//! payloads with a 1-D shape. Files are written as format version 1.0 with
//! `<i8` elements, the layout OGB ships its raw edge arrays in.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 6] = b"\x93NUMPY";
const ALIGN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Elem {
    I32,
    I64,
}

impl Elem {
    fn size(self) -> usize {
        match self {
            Elem::I32 => 4,
            Elem::I64 => 8,
        }
    }
}

struct Header {
    elem: Elem,
    len: usize,
    data_offset: usize,
}

fn format_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

/// Pulls the raw text of `'key': <value>` out of a header dict.
fn dict_value<'a>(dict: &'a str, key: &str) -> Option<&'a str> {
    let pat = format!("'{key}'");
    let start = dict.find(&pat)? + pat.len();
    let rest = dict[start..].trim_start().strip_prefix(':')?.trim_start();
    let end = if rest.starts_with('(') {
        rest.find(')')? + 1
    } else if let Some(quoted) = rest.strip_prefix('\'') {
        quoted.find('\'')? + 2
    } else {
        rest.find([',', '}']).unwrap_or(rest.len())
    };
    Some(rest[..end].trim())
}

fn parse_header(bytes: &[u8], path: &Path) -> Result<Header> {
    if bytes.len() < 10 || &bytes[..6] != MAGIC {
        return Err(format_err(path, "missing npy magic string"));
    }
    let (major, minor) = (bytes[6], bytes[7]);
    let (header_len, prefix) = match major {
        1 => (u16::from_le_bytes([bytes[8], bytes[9]]) as usize, 10),
        2 | 3 if bytes.len() >= 12 => (
            u32::from_le_bytes([bytes[8], bytes[9], bytes[10], bytes[11]]) as usize,
            12,
        ),
        _ => {
            return Err(format_err(
                path,
                format!("unsupported npy version {major}.{minor}"),
            ))
        }
    };
    let data_offset = prefix + header_len;
    let dict = bytes
        .get(prefix..data_offset)
        .and_then(|b| std::str::from_utf8(b).ok())
        .ok_or_else(|| format_err(path, "truncated or non-text npy header"))?;

    let descr = dict_value(dict, "descr").ok_or_else(|| format_err(path, "header has no descr"))?;
    let elem = match descr.trim_matches('\'') {
        "<i4" => Elem::I32,
        "<i8" => Elem::I64,
        other => {
            return Err(format_err(
                path,
                format!("unsupported dtype {other}; expected <i4 or <i8"),
            ))
        }
    };

    let shape = dict_value(dict, "shape").ok_or_else(|| format_err(path, "header has no shape"))?;
    let dims: Vec<&str> = shape
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let len = match dims.as_slice() {
        [n] => n
            .parse::<usize>()
            .map_err(|_| format_err(path, format!("bad shape {shape}")))?,
        _ => {
            return Err(format_err(
                path,
                format!("expected a 1-D array, found shape {shape}"),
            ))
        }
    };

    Ok(Header {
        elem,
        len,
        data_offset,
    })
}

/// Reads a 1-D signed integer array, widened to `i64`.
pub fn read_i64(path: &Path) -> Result<Vec<i64>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_i64(&bytes, path)
}

pub(crate) fn decode_i64(bytes: &[u8], path: &Path) -> Result<Vec<i64>> {
    let header = parse_header(bytes, path)?;
    let payload = &bytes[header.data_offset.min(bytes.len())..];
    let expected = header.len * header.elem.size();
    if payload.len() != expected {
        return Err(format_err(
            path,
            format!(
                "payload is {} bytes, header promises {expected}",
                payload.len()
            ),
        ));
    }
    Ok(match header.elem {
        Elem::I32 => payload
            .par_chunks_exact(4)
            .map(|c| i32::from_le_bytes(c.try_into().unwrap()) as i64)
            .collect(),
        Elem::I64 => payload
            .par_chunks_exact(8)
            .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
            .collect(),
    })
}

pub(crate) fn encode_i64<W: Write>(out: &mut W, values: impl ExactSizeIterator<Item = i64>) -> std::io::Result<()> {
    let mut dict = format!(
        "{{'descr': '<i8', 'fortran_order': False, 'shape': ({},), }}",
        values.len()
    );
    let unpadded = MAGIC.len() + 4 + dict.len() + 1;
    dict.extend(std::iter::repeat_n(' ', (ALIGN - unpadded % ALIGN) % ALIGN));
    dict.push('\n');

    out.write_all(MAGIC)?;
    out.write_all(&[1, 0])?;
    out.write_all(&(dict.len() as u16).to_le_bytes())?;
    out.write_all(dict.as_bytes())?;
    for v in values {
        out.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn write_i64(path: &Path, values: &[i64]) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    encode_i64(&mut w, values.iter().copied())
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}
