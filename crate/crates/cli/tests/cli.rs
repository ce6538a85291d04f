use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use layoutkit::geometry::Rectangle;
use layoutkit::io::{decode_image, export_json, load_json};
use layoutkit::layout::{Layout, PageInfo, TextBlock};
use layoutkit::ocr::write_tesseract_tsv;
use layoutkit::pipelines::ReorgPlan;

const MODEL: &str = "lp://PubLayNet/faster_rcnn_R_50_FPN_3x/config";

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn registry() -> PathBuf {
    root().join("registry")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layoutkit"))
        .args(args)
        .env_remove("LAYOUTKIT_REGISTRY")
        .env_remove("RUST_LOG")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ok(out: &Output) {
    assert!(out.status.success(), "status {:?}: {}", out.status, String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty(), "data must go to files only");
}

fn detect(dir: &Path, image_id: &str) -> PathBuf {
    let out = dir.join(format!("det{image_id}.json"));
    ok(&run(&["--registry", s(&registry()), "detect", "--model", MODEL, "--image-id", image_id, "--out", s(&out)]));
    out
}

#[test]
fn detect_then_tables_reproduces_the_fixture_csv() {
    let dir = tempfile::tempdir().unwrap();
    let det = detect(dir.path(), "1");
    let csv = dir.path().join("table.csv");
    ok(&run(&[
        "tables",
        "--image", s(&fixture("page1.png")),
        "--detections", s(&det),
        "--ocr", s(&fixture("page1_words.tsv")),
        "--out", s(&csv),
    ]));
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(fixture("page1_table.csv")).unwrap());
}

#[test]
fn tables_concatenate_across_pages() {
    let dir = tempfile::tempdir().unwrap();
    let results = registry().join("publaynet/faster_rcnn_R_50_FPN_3x.json");
    let csv = dir.path().join("both.csv");
    ok(&run(&[
        "tables",
        "--image", s(&fixture("page1.png")), "--detections", s(&results), "--ocr", s(&fixture("page1_words.tsv")), "--image-id", "1",
        "--image", s(&fixture("page2.png")), "--detections", s(&results), "--ocr", s(&fixture("page2_words.tsv")), "--image-id", "2",
        "--out", s(&csv),
    ]));
    let mut expected = std::fs::read(fixture("page1_table.csv")).unwrap();
    expected.extend(std::fs::read(fixture("page2_table.csv")).unwrap());
    assert_eq!(std::fs::read(&csv).unwrap(), expected);
}

#[test]
fn registry_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.json");
    let status = Command::new(env!("CARGO_BIN_EXE_layoutkit"))
        .args(["detect", "--model", MODEL, "--image-id", "1", "--out", s(&out)])
        .env("LAYOUTKIT_REGISTRY", registry())
        .current_dir(dir.path())
        .output()
        .unwrap();
    ok(&status);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(detect(dir.path(), "1")).unwrap());
}

#[test]
fn unknown_model_is_a_data_error_listing_models() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "--registry", s(&registry()),
        "detect", "--model", "lp://PubLayNet/no_such_model", "--image-id", "1",
        "--out", s(&dir.path().join("x.json")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(MODEL) && err.contains("lp://HJDataset/mask_rcnn_R_50_FPN_3x/config"), "{err}");
    assert!(!dir.path().join("x.json").exists());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["detect", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["detect", "--model", "not a uri", "--image-id", "1", "--out", "x.json"]).status.code(), Some(1));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("tables"));
    assert_eq!(run(&["tables", "--image", "a.png", "--detections", "b.json", "--out", "c.csv"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let missing = run(&[
        "viz", "--mode", "texts",
        "--layout", s(&dir.path().join("missing.json")),
        "--out", s(&dir.path().join("v.png")),
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.json"));
}

#[test]
fn boxes_on_an_empty_layout_leave_the_page_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let layout = dir.path().join("empty.json");
    std::fs::write(&layout, export_json(&Layout::new())).unwrap();
    let out = dir.path().join("v.png");
    ok(&run(&["viz", "--mode", "boxes", "--layout", s(&layout), "--image", s(&fixture("page1.png")), "--out", s(&out)]));
    let (a, b) = (std::fs::read(&out).unwrap(), std::fs::read(fixture("page1.png")).unwrap());
    assert_eq!(decode_image(&a).unwrap(), decode_image(&b).unwrap());
    assert_eq!(a, b);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let det = detect(dir.path(), "1");
    let render = |name: &str| {
        let out = dir.path().join(name);
        ok(&run(&["viz", "--mode", "boxes", "--layout", s(&det), "--image", s(&fixture("page1.png")), "--show-score", "--out", s(&out)]));
        std::fs::read(out).unwrap()
    };
    assert_eq!(render("a.png"), render("b.png"));
    let first = std::fs::read(&det).unwrap();
    assert_eq!(std::fs::read(detect(dir.path(), "1")).unwrap(), first);
}

#[test]
fn detect_fans_out_over_several_images() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("many");
    ok(&run(&[
        "--registry", s(&registry()),
        "detect", "--model", MODEL, "--image-id", "1", "--image-id", "2", "--image-id", "3", "--jobs", "3",
        "--out", s(&out),
    ]));
    for id in ["1", "2"] {
        let single = std::fs::read(detect(dir.path(), id)).unwrap();
        assert_eq!(std::fs::read(out.join(format!("{id}.json"))).unwrap(), single);
    }
    assert!(load_json(&std::fs::read(out.join("3.json")).unwrap()).unwrap().is_empty());
}

#[test]
fn config_sets_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    let results = dir.path().join("results");
    std::fs::write(
        &config,
        serde_json::json!({"registry_root": registry(), "output_dir": results, "score_threshold": 0.9}).to_string(),
    )
    .unwrap();
    let cfg = s(&config);
    ok(&run(&["--config", cfg, "detect", "--model", MODEL, "--image-id", "1", "--out", "strict.json"]));
    ok(&run(&["--config", cfg, "detect", "--model", MODEL, "--image-id", "1", "--threshold", "0", "--out", "all.json"]));
    let read = |n: &str| load_json(&std::fs::read(results.join(n)).unwrap()).unwrap();
    let (strict, all) = (read("strict.json"), read("all.json"));
    assert!(strict.blocks().iter().all(|b| b.score.unwrap() >= 0.9));
    assert!(strict.len() < all.len());

    std::fs::write(&config, r#"{"no_such_setting": 1}"#).unwrap();
    assert_eq!(run(&["--config", cfg, "detect", "--model", MODEL, "--image-id", "1", "--out", "x.json"]).status.code(), Some(1));
}

#[test]
fn reorganized_ocr_maps_back_onto_the_page() {
    let dir = tempfile::tempdir().unwrap();
    let words: Layout = [(40.0, 30.0, 90.0, 42.0, "alpha"), (120.0, 31.0, 150.0, 43.0, "be"), (40.0, 70.0, 75.0, 100.0, "tall")]
        .into_iter()
        .enumerate()
        .map(|(i, (x1, y1, x2, y2, t))| TextBlock::new(Rectangle::new(x1, y1, x2, y2)).with_text(t).with_id(i as i64))
        .collect();
    let layout = dir.path().join("words.json");
    std::fs::write(&layout, export_json(&words)).unwrap();
    let (dense, plan) = (dir.path().join("dense.png"), dir.path().join("plan.json"));
    ok(&run(&[
        "reorg", "--layout", s(&layout), "--image", s(&fixture("page1.png")),
        "--max-height", "16", "--order", "row-ltr", "--out", s(&dense), "--plan", s(&plan),
    ]));
    let parsed: ReorgPlan = serde_json::from_slice(&std::fs::read(&plan).unwrap()).unwrap();
    let image = decode_image(&std::fs::read(&dense).unwrap()).unwrap();
    assert_eq!((image.width(), image.height()), parsed.canvas_pixels());

    // OCR output on the dense image: one word per placement, at its target
    let ocr = Layout::from_blocks(parsed.placements.iter().map(|p| TextBlock::new(p.target).with_text(format!("w{}", p.token_index))))
        .with_page_info(PageInfo {
            width: Some(parsed.canvas_width),
            height: Some(parsed.canvas_height),
            ..PageInfo::default()
        });
    let tsv = dir.path().join("dense.tsv");
    std::fs::write(&tsv, write_tesseract_tsv(&ocr)).unwrap();
    let remapped = dir.path().join("remapped.json");
    ok(&run(&["remap", "--plan", s(&plan), "--ocr", s(&tsv), "--out", s(&remapped)]));
    let back = load_json(&std::fs::read(&remapped).unwrap()).unwrap();
    assert_eq!(back.len(), words.len());
    for (p, b) in parsed.placements.iter().zip(back.blocks()) {
        let r = b.block.bounding_rectangle().unwrap();
        for (u, v) in [(r.x1(), p.source.x1()), (r.y1(), p.source.y1()), (r.x2(), p.source.x2()), (r.y2(), p.source.y2())] {
            assert!((u - v).abs() <= 1.0, "{r:?} vs {:?}", p.source);
        }
    }
}

#[test]
fn convert_splits_coco_results_per_image() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("split");
    let results = registry().join("publaynet/faster_rcnn_R_50_FPN_3x.json");
    ok(&run(&["convert", "--from", "coco-results", "--to", "json", "--input", s(&results), "--out", s(&out)]));
    let one = load_json(&std::fs::read(out.join("1.json")).unwrap()).unwrap();
    let labels: Vec<_> = one.blocks().iter().map(|b| b.category.clone().unwrap()).collect();
    assert!(labels.iter().all(|l| l.chars().all(|c| c.is_ascii_digit())), "{labels:?}");

    let csv = dir.path().join("one.csv");
    ok(&run(&["convert", "--from", "json", "--to", "csv", "--input", s(&out.join("1.json")), "--out", s(&csv)]));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), one.len() + 1);
}
