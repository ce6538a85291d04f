use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use super::IoError;

/// Maps numeric category ids to labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryMap {
    entries: BTreeMap<i64, String>,
}

#[derive(Deserialize)]
struct CategoryEntry {
    id: i64,
    name: String,
}

impl CategoryMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a map, rejecting repeated ids.
    pub fn from_pairs<S: Into<String>>(
        pairs: impl IntoIterator<Item = (i64, S)>,
    ) -> Result<Self, IoError> {
        let mut entries = BTreeMap::new();
        for (id, label) in pairs {
            if entries.insert(id, label.into()).is_some() {
                return Err(IoError::Element {
                    path: format!("categories[{id}]"),
                    message: format!("duplicate category id {id}"),
                });
            }
        }
        Ok(Self { entries })
    }

    /// The five PubLayNet labels.
    pub fn publaynet() -> Self {
        Self::from_pairs([(1, "text"), (2, "title"), (3, "list"), (4, "table"), (5, "figure")])
            .expect("ids are distinct")
    }

    /// Accepts either a COCO `[{"id":1,"name":"text"}, ...]` array or a
    /// `{"1":"text", ...}` object.
    pub fn from_json(data: &[u8]) -> Result<Self, IoError> {
        match serde_json::from_slice::<Value>(data)? {
            Value::Array(items) => {
                let mut pairs = Vec::with_capacity(items.len());
                for (i, item) in items.into_iter().enumerate() {
                    let entry: CategoryEntry =
                        serde_json::from_value(item).map_err(|e| IoError::Element {
                            path: format!("categories[{i}]"),
                            message: e.to_string(),
                        })?;
                    pairs.push((entry.id, entry.name));
                }
                Self::from_pairs(pairs)
            }
            Value::Object(map) => {
                let mut pairs = Vec::with_capacity(map.len());
                for (key, value) in map {
                    let id = key.parse::<i64>().map_err(|_| IoError::Element {
                        path: format!("categories[{key:?}]"),
                        message: "category key is not an integer".into(),
                    })?;
                    let Value::String(label) = value else {
                        return Err(IoError::Element {
                            path: format!("categories[{key:?}]"),
                            message: "category label is not a string".into(),
                        });
                    };
                    pairs.push((id, label));
                }
                Self::from_pairs(pairs)
            }
            _ => Err(IoError::Element {
                path: "categories".into(),
                message: "expected an array or an object".into(),
            }),
        }
    }

    pub fn get(&self, id: i64) -> Option<&str> {
        self.entries.get(&id).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &str)> {
        self.entries.iter().map(|(k, v)| (*k, v.as_str()))
    }
}
