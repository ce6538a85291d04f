//! Regenerates the bundled model registry and sample pages.
//!
//! ```text
//! cargo run -p layoutkit --example make_registry -- registry fixtures
//! ```
//!
//! Every file is derived from fixed seeds, so reruns are byte-identical.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use layoutkit::io::{encode_png, DetectionRecord};
use layoutkit::ocr::write_tesseract_tsv;
use layoutkit::synth::SyntheticTable;

const PAGE_SEEDS: [u64; 2] = [2024, 9];

struct Model {
    dataset: &'static str,
    dir: &'static str,
    arch: &'static str,
    notes: &'static str,
}

const MODELS: [Model; 9] = [
    Model { dataset: "PubLayNet", dir: "publaynet", arch: "faster_rcnn_R_50_FPN_3x", notes: "Layouts of modern scientific documents" },
    Model { dataset: "PubLayNet", dir: "publaynet", arch: "mask_rcnn_R_50_FPN_3x", notes: "Layouts of modern scientific documents" },
    Model { dataset: "PubLayNet", dir: "publaynet", arch: "mask_rcnn_X_101_32x8d_FPN_3x", notes: "Layouts of modern scientific documents (large)" },
    Model { dataset: "PRImA", dir: "prima", arch: "mask_rcnn_R_50_FPN_3x", notes: "Layouts of scanned modern magazines and scientific reports" },
    Model { dataset: "Newspaper", dir: "newspaper", arch: "faster_rcnn_R_50_FPN_3x", notes: "Layouts of scanned US newspapers from the 20th century" },
    Model { dataset: "TableBank", dir: "tablebank", arch: "faster_rcnn_R_50_FPN_3x", notes: "Table regions on modern scientific and business documents" },
    Model { dataset: "TableBank", dir: "tablebank", arch: "faster_rcnn_R_101_FPN_3x", notes: "Table regions on modern scientific and business documents (large)" },
    Model { dataset: "HJDataset", dir: "hjdataset", arch: "faster_rcnn_R_50_FPN_3x", notes: "Layouts of historical Japanese documents" },
    Model { dataset: "HJDataset", dir: "hjdataset", arch: "mask_rcnn_R_50_FPN_3x", notes: "Layouts of historical Japanese documents" },
];

fn categories(dir: &str) -> Vec<(i64, &'static str)> {
    match dir {
        "publaynet" => vec![(1, "text"), (2, "title"), (3, "list"), (4, "table"), (5, "figure")],
        "prima" => vec![(1, "TextRegion"), (2, "ImageRegion"), (3, "TableRegion"), (4, "MathsRegion"), (5, "SeparatorRegion"), (6, "OtherRegion")],
        "newspaper" => vec![(0, "Photograph"), (1, "Illustration"), (2, "Map"), (3, "Comics/Cartoon"), (4, "Editorial Cartoon"), (5, "Headline"), (6, "Advertisement")],
        "tablebank" => vec![(1, "table")],
        "hjdataset" => vec![(1, "Page Frame"), (2, "Row"), (3, "Title Region"), (4, "Text Region"), (5, "Title"), (6, "Subtitle"), (7, "Other")],
        other => panic!("no categories for {other}"),
    }
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) {
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, bytes).unwrap();
}

fn bbox(r: &layoutkit::geometry::Rectangle) -> [f64; 4] {
    [r.x1(), r.y1(), r.width(), r.height()]
}

/// Detections on the sample pages, using the label ids of `dir`.
fn page_records(dir: &str, model: usize, pages: &[SyntheticTable]) -> Vec<DetectionRecord> {
    let ids = categories(dir);
    let id_of = |label: &str| ids.iter().find(|(_, l)| *l == label).map(|(i, _)| *i);
    let mut out = Vec::new();
    for (p, page) in pages.iter().enumerate() {
        for b in page.detections.blocks() {
            let Some(category_id) = id_of(b.category.as_deref().unwrap()) else {
                continue;
            };
            let score = (b.score.unwrap() - 0.01 * model as f64).max(0.0);
            out.push(DetectionRecord {
                image_id: p as i64 + 1,
                category_id,
                bbox: bbox(&b.block.bounding_rectangle().unwrap()),
                score: (score * 100.0).round() / 100.0,
            });
        }
    }
    out
}

/// Random boxes for datasets without matching sample pages.
fn random_records(dir: &str, model: usize) -> Vec<DetectionRecord> {
    let ids = categories(dir);
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + model as u64);
    let mut out = Vec::new();
    for image_id in 1..=3 {
        for _ in 0..rng.gen_range(3..=8) {
            let (x, y) = (rng.gen_range(0..500) as f64, rng.gen_range(0..700) as f64);
            let (w, h) = (rng.gen_range(20..300) as f64, rng.gen_range(10..200) as f64);
            out.push(DetectionRecord {
                image_id,
                category_id: ids[rng.gen_range(0..ids.len())].0,
                bbox: [x, y, w, h],
                score: (rng.gen_range(0.3..1.0f64) * 100.0).round() / 100.0,
            });
        }
    }
    out
}

fn main() {
    let mut args = std::env::args().skip(1);
    let registry = args.next().unwrap_or_else(|| "registry".into());
    let fixtures = args.next().unwrap_or_else(|| "fixtures".into());
    let (registry, fixtures) = (Path::new(&registry), Path::new(&fixtures));

    let pages: Vec<SyntheticTable> = PAGE_SEEDS.iter().map(|&s| SyntheticTable::generate(s)).collect();
    for (i, page) in pages.iter().enumerate() {
        let n = i + 1;
        write(&fixtures.join(format!("page{n}.png")), encode_png(&page.image).unwrap());
        write(&fixtures.join(format!("page{n}_words.tsv")), write_tesseract_tsv(&page.tokens));
        let mut csv = csv::Writer::from_writer(Vec::new());
        for row in &page.grid {
            csv.write_record(row).unwrap();
        }
        write(&fixtures.join(format!("page{n}_table.csv")), csv.into_inner().unwrap());
    }

    let mut index = serde_json::Map::new();
    for (m, model) in MODELS.iter().enumerate() {
        let records = match model.dir {
            "publaynet" | "tablebank" => page_records(model.dir, m, &pages),
            _ => random_records(model.dir, m),
        };
        let results_path = format!("{}/{}.json", model.dir, model.arch);
        let categories_path = format!("{}/categories.json", model.dir);
        write(&registry.join(&results_path), serde_json::to_vec_pretty(&records).unwrap());
        let cats: Vec<_> = categories(model.dir)
            .into_iter()
            .map(|(id, name)| json!({"id": id, "name": name}))
            .collect();
        write(&registry.join(&categories_path), serde_json::to_vec_pretty(&cats).unwrap());
        index.insert(
            format!("lp://{}/{}/config", model.dataset, model.arch),
            json!({"results_path": results_path, "categories_path": categories_path, "notes": model.notes}),
        );
    }
    write(&registry.join("index.json"), serde_json::to_vec_pretty(&index).unwrap());
}
