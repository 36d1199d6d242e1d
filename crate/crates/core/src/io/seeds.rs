use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Sorted, deduplicated initial frontier for Rank Degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeedNodeSet {
    ids: Vec<NodeId>,
}

impl SeedNodeSet {
    pub fn new(mut ids: Vec<NodeId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        SeedNodeSet { ids }
    }

    /// Like [`SeedNodeSet::new`], rejecting ids outside `0..num_nodes`.
    pub fn validated(ids: Vec<NodeId>, num_nodes: usize) -> Result<Self> {
        let set = Self::new(ids);
        set.check(num_nodes)?;
        Ok(set)
    }

    pub fn check(&self, num_nodes: usize) -> Result<()> {
        match self.ids.last() {
            Some(&id) if id as usize >= num_nodes => Err(Error::SeedOutOfRange {
                id: id.into(),
                num_nodes: num_nodes as u64,
            }),
            _ => Ok(()),
        }
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Reads seed ids, one integer per line, or a 1-D `.npy` integer array.
pub fn load_seed_nodes(path: &Path, num_nodes: usize) -> Result<SeedNodeSet> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut ids = Vec::new();
    if bytes.starts_with(super::npy::MAGIC) {
        for id in super::npy::decode_i64(&bytes, path)? {
            ids.push(to_seed(id as i128, num_nodes)?);
        }
    } else {
        let text = std::str::from_utf8(&bytes).map_err(|_| Error::Format {
            path: path.to_path_buf(),
            message: "seed file is neither text nor npy".into(),
        })?;
        for (i, line) in text.lines().enumerate() {
            let token = line.trim();
            if token.is_empty() {
                continue;
            }
            let id: i128 = token.parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("`{token}` is not an integer node id"),
            })?;
            ids.push(to_seed(id, num_nodes)?);
        }
    }
    Ok(SeedNodeSet::new(ids))
}

fn to_seed(id: i128, num_nodes: usize) -> Result<NodeId> {
    if id < 0 || id >= num_nodes as i128 {
        return Err(Error::SeedOutOfRange {
            id: id.max(0) as u64,
            num_nodes: num_nodes as u64,
        });
    }
    Ok(id as NodeId)
}
