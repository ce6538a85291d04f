use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CategoryMap, IoError};
use crate::geometry::Rectangle;
use crate::layout::{Layout, PageInfo, TextBlock};

/// Which COCO flavour a file holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocoKind {
    /// `{"images": [...], "annotations": [...], "categories": [...]}`
    Dataset,
    /// A flat array of detection records.
    Results,
}

/// One detector output in COCO results form; `bbox` is `[x, y, w, h]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionRecord {
    pub image_id: i64,
    pub category_id: i64,
    pub bbox: [f64; 4],
    pub score: f64,
}

#[derive(Deserialize)]
struct Dataset {
    images: Vec<ImageEntry>,
    annotations: Vec<Annotation>,
    categories: Vec<CategoryEntry>,
}

#[derive(Deserialize)]
struct ImageEntry {
    id: i64,
    width: f64,
    height: f64,
    #[serde(default)]
    file_name: Option<String>,
}

#[derive(Deserialize)]
struct Annotation {
    #[serde(default)]
    id: Option<i64>,
    image_id: i64,
    category_id: i64,
    bbox: [f64; 4],
    #[serde(default)]
    score: Option<f64>,
}

#[derive(Deserialize)]
struct CategoryEntry {
    id: i64,
    name: String,
}

/// Loads COCO annotations into one layout per image id.
///
/// Labels come from `categories` when given; a dataset file otherwise
/// supplies its own. With no map at all the label is the id as text.
pub fn load_coco(
    data: &[u8],
    kind: CocoKind,
    categories: Option<&CategoryMap>,
) -> Result<BTreeMap<i64, Layout>, IoError> {
    match kind {
        CocoKind::Results => {
            let records: Vec<DetectionRecord> = serde_json::from_slice(data)?;
            let mut out: BTreeMap<i64, Layout> = BTreeMap::new();
            for (index, r) in records.iter().enumerate() {
                check_score(index, r.score)?;
                let block = annotation_block(index, r.bbox, r.category_id, categories)?
                    .with_score(r.score);
                out.entry(r.image_id).or_default().push(block);
            }
            Ok(out)
        }
        CocoKind::Dataset => {
            let ds: Dataset = serde_json::from_slice(data)?;
            let own;
            let categories = match categories {
                Some(c) => Some(c),
                None => {
                    own = CategoryMap::from_pairs(ds.categories.into_iter().map(|c| (c.id, c.name)))?;
                    Some(&own)
                }
            };
            let mut out = BTreeMap::new();
            for img in &ds.images {
                let info = PageInfo {
                    file_name: img.file_name.clone(),
                    page_number: None,
                    width: Some(img.width),
                    height: Some(img.height),
                };
                out.insert(img.id, Layout::new().with_page_info(info));
            }
            for (index, a) in ds.annotations.iter().enumerate() {
                let layout = out.get_mut(&a.image_id).ok_or(IoError::UnknownImage {
                    index,
                    image_id: a.image_id,
                })?;
                let mut block = annotation_block(index, a.bbox, a.category_id, categories)?;
                block.id = a.id;
                if let Some(s) = a.score {
                    check_score(index, s)?;
                    block.score = Some(s);
                }
                layout.push(block);
            }
            Ok(out)
        }
    }
}

fn check_score(index: usize, score: f64) -> Result<(), IoError> {
    if (0.0..=1.0).contains(&score) {
        Ok(())
    } else {
        Err(IoError::ScoreOutOfRange { index, score })
    }
}

fn annotation_block(
    index: usize,
    [x, y, w, h]: [f64; 4],
    category_id: i64,
    categories: Option<&CategoryMap>,
) -> Result<TextBlock, IoError> {
    if w < 0.0 || h < 0.0 {
        return Err(IoError::NegativeExtent {
            index,
            width: w,
            height: h,
        });
    }
    let rect = Rectangle::try_new(x, y, x + w, y + h).map_err(|e| IoError::Element {
        path: format!("[{index}].bbox"),
        message: e.to_string(),
    })?;
    let label = match categories {
        Some(map) => map
            .get(category_id)
            .ok_or(IoError::UnknownCategory(category_id))?
            .to_string(),
        None => category_id.to_string(),
    };
    Ok(TextBlock::new(rect).with_category(label))
}
