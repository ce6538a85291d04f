use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use layoutkit::geometry::RasterImage;
use layoutkit::io::{
    encode_png, export_csv, export_json, export_table_csv, load_coco, load_image, load_json, CategoryMap,
    CocoKind,
};
use layoutkit::layout::{Layout, PageInfo, ReadingOrder};
use layoutkit::ocr::parse_tesseract_tsv;
use layoutkit::pipelines::{
    concat_tables, extract_tables, plan_reorganization, remap_ocr_results, render_reorganized, ReorgPlan,
    TableParams,
};
use layoutkit::registry::{parse_model_uri, RegistryIndex};
use layoutkit::viz::{draw_boxes, draw_texts, DrawStyle};

use crate::config::CliConfig;
use crate::{
    Cli, Command, ConvertArgs, DetectArgs, FromFormat, OrderArg, ReorgArgs, RemapArgs, TablesArgs, ToFormat,
    UsageError, VizArgs, VizMode,
};

pub fn run(cli: &Cli, config: &CliConfig) -> Result<()> {
    match &cli.command {
        Command::Detect(args) => detect(cli, config, args),
        Command::Viz(args) => viz(config, args),
        Command::Tables(args) => tables(config, args),
        Command::Reorg(args) => reorg(config, args),
        Command::Remap(args) => remap(config, args),
        Command::Convert(args) => convert(config, args),
    }
}

fn usage(message: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(message.into()))
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write(config: &CliConfig, path: &Path, bytes: &[u8]) -> Result<()> {
    let path = config.output_path(path);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn require_png(path: &Path) -> Result<()> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    if ext.eq_ignore_ascii_case("png") {
        Ok(())
    } else {
        Err(usage(format!("{} must end in .png", path.display())))
    }
}

fn load_layout(path: &Path) -> Result<Layout> {
    load_json(&read(path)?).with_context(|| format!("loading layout {}", path.display()))
}

fn image(path: &Path) -> Result<RasterImage> {
    load_image(path).with_context(|| format!("loading image {}", path.display()))
}

fn detect(cli: &Cli, config: &CliConfig, args: &DetectArgs) -> Result<()> {
    let uri = parse_model_uri(&args.model).map_err(|e| usage(e.to_string()))?;
    if args.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let root = config.registry_root(cli.registry.as_deref());
    let index = RegistryIndex::load(&root).with_context(|| format!("loading registry {}", root.display()))?;
    let entry = index.get(&uri)?;
    let threshold = args.threshold.or(config.score_threshold).unwrap_or(0.0);

    if let [id] = args.image_ids[..] {
        return write(config, &args.out, &export_json(&entry.detect(id, threshold)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .context("starting worker threads")?;
    pool.install(|| {
        args.image_ids.par_iter().try_for_each(|&id| {
            let out = args.out.join(format!("{id}.json"));
            write(config, &out, &export_json(&entry.detect(id, threshold)))
        })
    })
}

fn style(config: &CliConfig, args: &VizArgs) -> DrawStyle {
    let mut style = config.style.clone();
    if let Some(w) = args.box_width {
        style.box_width = w;
    }
    if args.show_score {
        style.show_score = true;
    }
    if args.no_labels {
        style.show_labels = false;
    }
    style
}

fn viz(config: &CliConfig, args: &VizArgs) -> Result<()> {
    require_png(&args.out)?;
    let layout = load_layout(&args.layout)?;
    let style = style(config, args);
    let page = args.image.as_deref().map(image).transpose()?;
    let out = match args.mode {
        VizMode::Boxes => {
            let page = page.ok_or_else(|| usage("--mode boxes needs --image"))?;
            draw_boxes(&page, &layout, &style)
        }
        VizMode::Texts => {
            let size = match &page {
                Some(p) => (p.width(), p.height()),
                None => canvas_size(&layout)?,
            };
            draw_texts(&layout, size, &style)
        }
    };
    if out.is_empty() {
        bail!("nothing to draw: the canvas is empty");
    }
    write(config, &args.out, &encode_png(&out)?)
}

fn canvas_size(layout: &Layout) -> Result<(u32, u32)> {
    if let Some(PageInfo {
        width: Some(w),
        height: Some(h),
        ..
    }) = &layout.page_info
    {
        return Ok((w.ceil() as u32, h.ceil() as u32));
    }
    let r = layout
        .bounding_rectangle()
        .ok_or_else(|| anyhow!("layout has no page size and no bounded blocks; pass --image"))?;
    Ok((r.x2().max(0.0).ceil() as u32, r.y2().max(0.0).ceil() as u32))
}

fn table_params(config: &CliConfig, args: &TablesArgs) -> TableParams {
    let mut p = config.tables.clone();
    if let Some(v) = args.score_min {
        p.score_min = v;
    }
    if let Some(v) = args.iou_threshold {
        p.iou_threshold = v;
    }
    if let Some(v) = args.min_run_fraction {
        p.min_run_fraction = v;
    }
    if args.row_gap.is_some() {
        p.row_gap = args.row_gap;
    }
    if let Some(v) = args.row_min_gap {
        p.row_min_gap = v;
    }
    p
}

/// Reads detections from layout JSON or, when the file is a JSON array, from
/// COCO results.
fn load_detections(path: &Path, image_id: Option<i64>, categories: &CategoryMap) -> Result<Layout> {
    let data = read(path)?;
    let is_array = data.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'[');
    if !is_array {
        return load_json(&data).with_context(|| format!("loading layout {}", path.display()));
    }
    let mut per_image = load_coco(&data, CocoKind::Results, Some(categories))
        .with_context(|| format!("loading detections {}", path.display()))?;
    match image_id {
        Some(id) => Ok(per_image.remove(&id).unwrap_or_default()),
        None if per_image.len() <= 1 => Ok(per_image.into_values().next().unwrap_or_default()),
        None => Err(usage(format!(
            "{} holds detections for {} images; pass --image-id",
            path.display(),
            per_image.len()
        ))),
    }
}

fn tables(config: &CliConfig, args: &TablesArgs) -> Result<()> {
    let pages = args.images.len();
    if args.detections.len() != pages || args.ocr.len() != pages {
        return Err(usage("give one --detections and one --ocr per --image"));
    }
    if !args.image_ids.is_empty() && args.image_ids.len() != pages {
        return Err(usage("give one --image-id per --image"));
    }
    if !args.delimiter.is_ascii() {
        return Err(usage("--delimiter must be a single ASCII character"));
    }
    let categories = match &args.categories {
        Some(p) => CategoryMap::from_json(&read(p)?).with_context(|| format!("loading {}", p.display()))?,
        None => CategoryMap::publaynet(),
    };
    let params = table_params(config, args);

    let mut found = Vec::new();
    for i in 0..pages {
        let page = image(&args.images[i])?;
        let detections = load_detections(&args.detections[i], args.image_ids.get(i).copied(), &categories)?;
        let ocr_path = &args.ocr[i];
        let mut tokens = parse_tesseract_tsv(&read(ocr_path)?, 5)
            .with_context(|| format!("loading OCR {}", ocr_path.display()))?;
        tokens.page_info.get_or_insert_with(PageInfo::default).page_number = Some(i as u32 + 1);
        let tables = extract_tables(&page, &detections, &tokens, &params)?;
        log::info!("page {}: {} table(s)", i + 1, tables.len());
        found.extend(tables);
    }
    let csv = if found.is_empty() {
        log::warn!("no tables found");
        Vec::new()
    } else {
        export_table_csv(&concat_tables(&found)?, args.delimiter as u8)
    };
    write(config, &args.out, &csv)
}

fn reorg(config: &CliConfig, args: &ReorgArgs) -> Result<()> {
    require_png(&args.out)?;
    let max_height = args
        .max_height
        .or(config.reorg.max_height)
        .ok_or_else(|| usage("--max-height is required"))?;
    let gap = args.gap.unwrap_or(config.reorg.gap);
    let page = image(&args.image)?;
    let tokens = load_layout(&args.layout)?;
    let tokens = match args.order {
        OrderArg::Keep => tokens,
        OrderArg::RowLtr => tokens.sort_reading_order(ReadingOrder::RowLtr),
        OrderArg::ColumnRtl => tokens.sort_reading_order(ReadingOrder::ColumnRtl),
    };
    let width = args.canvas_width.unwrap_or(f64::from(page.width()));
    let plan = plan_reorganization(&tokens, max_height, gap, width)?;
    let dense = render_reorganized(&plan, &page);
    if dense.is_empty() {
        bail!("layout has no tokens to reorganize");
    }
    write(config, &args.plan, &serde_json::to_vec_pretty(&plan)?)?;
    write(config, &args.out, &encode_png(&dense)?)
}

fn remap(config: &CliConfig, args: &RemapArgs) -> Result<()> {
    let plan: ReorgPlan = serde_json::from_slice(&read(&args.plan)?)
        .with_context(|| format!("loading plan {}", args.plan.display()))?;
    let ocr = parse_tesseract_tsv(&read(&args.ocr)?, 5)
        .with_context(|| format!("loading OCR {}", args.ocr.display()))?;
    let remapped = remap_ocr_results(&plan, &ocr);
    if remapped.dropped > 0 {
        log::warn!("{} word(s) fell between placements and were dropped", remapped.dropped);
    }
    write(config, &args.out, &export_json(&remapped.layout))
}

fn convert(config: &CliConfig, args: &ConvertArgs) -> Result<()> {
    let encode = |l: &Layout| match args.to {
        ToFormat::Json => export_json(l),
        ToFormat::Csv => export_csv(l),
    };
    let data = read(&args.input)?;
    let kind = match args.from {
        FromFormat::Json => {
            let layout = load_json(&data).with_context(|| format!("loading {}", args.input.display()))?;
            return write(config, &args.out, &encode(&layout));
        }
        FromFormat::Coco => CocoKind::Dataset,
        FromFormat::CocoResults => CocoKind::Results,
    };
    let categories = match &args.categories {
        Some(p) => Some(CategoryMap::from_json(&read(p)?).with_context(|| format!("loading {}", p.display()))?),
        None => None,
    };
    let mut layouts: BTreeMap<i64, Layout> = load_coco(&data, kind, categories.as_ref())
        .with_context(|| format!("loading {}", args.input.display()))?;
    if let Some(id) = args.image_id {
        let layout = layouts
            .remove(&id)
            .ok_or_else(|| anyhow!("{} has no image {id}", args.input.display()))?;
        return write(config, &args.out, &encode(&layout));
    }
    if layouts.len() == 1 {
        let layout = layouts.into_values().next().unwrap_or_default();
        return write(config, &args.out, &encode(&layout));
    }
    let ext = match args.to {
        ToFormat::Json => "json",
        ToFormat::Csv => "csv",
    };
    for (id, layout) in &layouts {
        let out: PathBuf = args.out.join(format!("{id}.{ext}"));
        write(config, &out, &encode(layout))?;
    }
    Ok(())
}
