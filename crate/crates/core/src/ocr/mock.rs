use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::{OcrEngine, Recognition};
use crate::error::{Error, Result};
use crate::image::RasterImage;

/// SHA-256 over the crop's dimensions, channel count and pixels, hex encoded.
pub fn crop_hash(crop: &RasterImage) -> String {
    let mut h = Sha256::new();
    h.update(crop.width().to_le_bytes());
    h.update(crop.height().to_le_bytes());
    h.update([crop.channels()]);
    h.update(crop.data());
    hex::encode(h.finalize())
}

/// Deterministic engine answering from a crop-hash lookup table.
///
/// Table files are JSON objects mapping [`crop_hash`] values to strings.
/// Unknown crops yield an empty string, or their hash when
/// `echo_unknown_hash` is set (handy for building tables).
#[derive(Debug, Clone, Default)]
pub struct MockEngine {
    pub table: BTreeMap<String, String>,
    pub echo_unknown_hash: bool,
}

impl MockEngine {
    pub fn new(table: BTreeMap<String, String>) -> Self {
        MockEngine {
            table,
            echo_unknown_hash: false,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let table = serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Ok(Self::new(table))
    }

    pub fn insert(&mut self, crop: &RasterImage, text: impl Into<String>) {
        self.table.insert(crop_hash(crop), text.into());
    }
}

impl OcrEngine for MockEngine {
    fn recognize(&self, crop: &RasterImage) -> Result<Recognition> {
        let hash = crop_hash(crop);
        Ok(Recognition::Text(match self.table.get(&hash) {
            Some(t) => t.clone(),
            None if self.echo_unknown_hash => hash,
            None => String::new(),
        }))
    }
}
