//! `lp://` model URIs and a file-backed model zoo serving precomputed
//! detections.
//!
//! The registry root holds an `index.json` mapping URIs to files:
//!
//! ```json
//! {"lp://PubLayNet/faster_rcnn_R_50_FPN_3x/config":
//!    {"results_path": "publaynet/faster_rcnn_R_50_FPN_3x.json",
//!     "categories_path": "publaynet/categories.json",
//!     "notes": "..."}}
//! ```
//!
//! Paths are relative to the root. Results files are COCO results arrays.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::io::{load_coco, CategoryMap, CocoKind, IoError};
use crate::layout::Layout;

/// Environment variable naming the registry root directory.
pub const REGISTRY_ENV: &str = "LAYOUTKIT_REGISTRY";

pub const INDEX_FILE: &str = "index.json";

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("invalid model URI {uri:?}: {reason}")]
    InvalidUri { uri: String, reason: String },
    #[error("model {uri} is not registered; available: {}", available.join(", "))]
    UnknownModel { uri: String, available: Vec<String> },
    #[error("registry entry {uri}: {source}")]
    Entry {
        uri: String,
        #[source]
        source: IoError,
    },
    #[error(transparent)]
    Io(#[from] IoError),
}

/// A parsed `lp://<dataset>/<model>[/<resource>]` URI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelUri {
    pub dataset: String,
    pub model_arch: String,
    pub resource: String,
}

impl ModelUri {
    pub const SCHEME: &'static str = "lp://";
    pub const DEFAULT_RESOURCE: &'static str = "config";
}

impl fmt::Display for ModelUri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}/{}/{}", Self::SCHEME, self.dataset, self.model_arch, self.resource)
    }
}

impl FromStr for ModelUri {
    type Err = RegistryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_model_uri(s)
    }
}

/// Parses a model URI; the resource defaults to `config`.
///
/// Segments must be non-empty, use only ASCII letters, digits, `_`, `.` and
/// `-`, and may not consist solely of dots.
pub fn parse_model_uri(uri: &str) -> Result<ModelUri, RegistryError> {
    let invalid = |reason: &str| RegistryError::InvalidUri {
        uri: uri.to_string(),
        reason: reason.to_string(),
    };
    let rest = uri
        .strip_prefix(ModelUri::SCHEME)
        .ok_or_else(|| invalid("expected the lp:// scheme"))?;
    let segments: Vec<&str> = rest.split('/').collect();
    if !(2..=3).contains(&segments.len()) {
        return Err(invalid("expected lp://<dataset>/<model>[/<resource>]"));
    }
    for seg in &segments {
        if seg.is_empty() {
            return Err(invalid("empty path segment"));
        }
        if !seg
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-'))
        {
            return Err(invalid(&format!("segment {seg:?} has characters outside [A-Za-z0-9_.-]")));
        }
        if seg.bytes().all(|b| b == b'.') {
            return Err(invalid(&format!("segment {seg:?} is not a name")));
        }
    }
    Ok(ModelUri {
        dataset: segments[0].to_string(),
        model_arch: segments[1].to_string(),
        resource: segments
            .get(2)
            .map_or(ModelUri::DEFAULT_RESOURCE, |s| s)
            .to_string(),
    })
}

#[derive(Deserialize)]
struct RawEntry {
    results_path: PathBuf,
    #[serde(default)]
    categories_path: Option<PathBuf>,
    #[serde(default)]
    notes: String,
}

/// One registered model with its detections loaded.
#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub results_path: PathBuf,
    pub categories: Option<CategoryMap>,
    pub notes: String,
    results: BTreeMap<i64, Layout>,
}

impl RegistryEntry {
    /// Detections for `image_id` scoring at least `score_threshold`; an
    /// image with no detections gives an empty layout.
    pub fn detect(&self, image_id: i64, score_threshold: f64) -> Layout {
        match self.results.get(&image_id) {
            Some(l) => l.filter(|b| b.score.is_some_and(|s| s >= score_threshold)),
            None => Layout::new(),
        }
    }

    pub fn image_ids(&self) -> impl Iterator<Item = i64> + '_ {
        self.results.keys().copied()
    }
}

/// The loaded model zoo. Read-only once built.
#[derive(Debug, Clone, Default)]
pub struct RegistryIndex {
    entries: BTreeMap<ModelUri, RegistryEntry>,
}

impl RegistryIndex {
    /// Reads `<root>/index.json` and every file it references.
    pub fn load(root: &Path) -> Result<Self, RegistryError> {
        let index_path = root.join(INDEX_FILE);
        let raw: BTreeMap<String, RawEntry> =
            serde_json::from_slice(&crate::io::read_file(&index_path)?).map_err(IoError::from)?;
        let mut entries = BTreeMap::new();
        for (key, entry) in raw {
            let uri = parse_model_uri(&key)?;
            let wrap = |source: IoError| RegistryError::Entry {
                uri: uri.to_string(),
                source,
            };
            let categories = match &entry.categories_path {
                Some(p) => Some(
                    crate::io::read_file(&root.join(p))
                        .and_then(|d| CategoryMap::from_json(&d))
                        .map_err(wrap)?,
                ),
                None => None,
            };
            let results = crate::io::read_file(&root.join(&entry.results_path))
                .and_then(|d| load_coco(&d, CocoKind::Results, categories.as_ref()))
                .map_err(wrap)?;
            log::debug!("registered {uri} ({} images)", results.len());
            entries.insert(
                uri,
                RegistryEntry {
                    results_path: entry.results_path,
                    categories,
                    notes: entry.notes,
                    results,
                },
            );
        }
        Ok(Self { entries })
    }

    pub fn uris(&self) -> impl Iterator<Item = &ModelUri> {
        self.entries.keys()
    }

    pub fn get(&self, uri: &ModelUri) -> Result<&RegistryEntry, RegistryError> {
        self.entries.get(uri).ok_or_else(|| RegistryError::UnknownModel {
            uri: uri.to_string(),
            available: self.entries.keys().map(ToString::to_string).collect(),
        })
    }

    /// Looks up precomputed detections in place of running the model.
    pub fn detect(
        &self,
        uri: &ModelUri,
        image_id: i64,
        score_threshold: f64,
    ) -> Result<Layout, RegistryError> {
        Ok(self.get(uri)?.detect(image_id, score_threshold))
    }
}
