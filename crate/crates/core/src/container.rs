//! Manifest + blob container used for all on-disk artifacts.
//!
//! Layout:
//!
//! ```text
//! 8 bytes   magic  b"RPOVER01"
//! 8 bytes   manifest length, little-endian u64
//! ...       manifest, UTF-8 JSON
//! ...       blobs, concatenated raw little-endian f64, in manifest order
//! ```
//!
//! The manifest carries a `kind` discriminator, free-form JSON `meta`
//! (layer specs, seeds, training config, labels) and the ordered blob table.
//! Parameter data goes through `f64::to_le_bytes`, so round-trips are
//! bit-exact including negative zero and subnormals.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const MAGIC: &[u8; 8] = b"RPOVER01";

#[derive(Debug, Error)]
pub enum ContainerError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("manifest error: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("not a container file (bad magic)")]
    BadMagic,
    #[error("blob {0:?} not present")]
    MissingBlob(String),
    #[error("container truncated while reading blob {0:?}")]
    Truncated(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BlobEntry {
    name: String,
    /// Number of f64 values (not bytes).
    len: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Manifest {
    kind: String,
    meta: serde_json::Value,
    blobs: Vec<BlobEntry>,
}

/// An in-memory container: a kind tag, JSON metadata and named f64 blobs.
#[derive(Debug, Clone)]
pub struct Container {
    pub kind: String,
    pub meta: serde_json::Value,
    blobs: Vec<(String, Vec<f64>)>,
}

impl Container {
    pub fn new(kind: &str, meta: serde_json::Value) -> Self {
        Self {
            kind: kind.to_string(),
            meta,
            blobs: Vec::new(),
        }
    }

    /// Append a named blob. Order is preserved and significant for layout,
    /// not for lookup.
    pub fn push_blob(&mut self, name: &str, data: Vec<f64>) {
        self.blobs.push((name.to_string(), data));
    }

    pub fn blob(&self, name: &str) -> Result<&[f64], ContainerError> {
        self.blobs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d.as_slice())
            .ok_or_else(|| ContainerError::MissingBlob(name.to_string()))
    }

    pub fn blob_names(&self) -> impl Iterator<Item = &str> {
        self.blobs.iter().map(|(n, _)| n.as_str())
    }

    pub fn write_to(&self, path: &Path) -> Result<(), ContainerError> {
        let manifest = Manifest {
            kind: self.kind.clone(),
            meta: self.meta.clone(),
            blobs: self
                .blobs
                .iter()
                .map(|(name, data)| BlobEntry {
                    name: name.clone(),
                    len: data.len(),
                })
                .collect(),
        };
        let manifest_bytes = serde_json::to_vec(&manifest)?;
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(MAGIC)?;
        w.write_all(&(manifest_bytes.len() as u64).to_le_bytes())?;
        w.write_all(&manifest_bytes)?;
        for (_, data) in &self.blobs {
            for v in data {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self, ContainerError> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(ContainerError::BadMagic);
        }
        let mut len_bytes = [0u8; 8];
        r.read_exact(&mut len_bytes)?;
        let manifest_len = u64::from_le_bytes(len_bytes) as usize;
        let mut manifest_bytes = vec![0u8; manifest_len];
        r.read_exact(&mut manifest_bytes)?;
        let manifest: Manifest = serde_json::from_slice(&manifest_bytes)?;
        let mut blobs = Vec::with_capacity(manifest.blobs.len());
        let mut buf = Vec::new();
        for entry in &manifest.blobs {
            buf.resize(entry.len * 8, 0u8);
            r.read_exact(&mut buf)
                .map_err(|_| ContainerError::Truncated(entry.name.clone()))?;
            let data = buf
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            blobs.push((entry.name.clone(), data));
        }
        Ok(Self {
            kind: manifest.kind,
            meta: manifest.meta,
            blobs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use serde_json::json;

    #[test]
    fn round_trip_basic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.rp");
        let mut c = Container::new("test", json!({"a": 1}));
        c.push_blob("w", vec![1.0, -0.0, f64::MIN_POSITIVE, 1e300]);
        c.push_blob("b", vec![]);
        c.write_to(&path).unwrap();
        let back = Container::read_from(&path).unwrap();
        assert_eq!(back.kind, "test");
        assert_eq!(back.meta["a"], 1);
        assert_eq!(back.blob("b").unwrap().len(), 0);
        for (x, y) in c.blob("w").unwrap().iter().zip(back.blob("w").unwrap()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
        assert!(matches!(
            back.blob("nope"),
            Err(ContainerError::MissingBlob(_))
        ));
    }

    #[test]
    fn rejects_bad_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.rp");
        std::fs::write(&path, b"NOTRIGHTxxxxxxxxxxxx").unwrap();
        assert!(matches!(
            Container::read_from(&path),
            Err(ContainerError::BadMagic)
        ));
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(data in proptest::collection::vec(
            prop_oneof![any::<f64>().prop_filter("finite", |v| v.is_finite()), Just(-0.0)], 0..200))
        {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("p.rp");
            let mut c = Container::new("prop", json!({}));
            c.push_blob("data", data.clone());
            c.write_to(&path).unwrap();
            let back = Container::read_from(&path).unwrap();
            let got = back.blob("data").unwrap();
            prop_assert_eq!(got.len(), data.len());
            for (x, y) in data.iter().zip(got) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
