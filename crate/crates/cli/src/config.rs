use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

use layoutkit::pipelines::{TableParams, DEFAULT_GAP};
use layoutkit::viz::DrawStyle;

/// Settings read from `--config`; command-line flags override them.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub registry_root: Option<PathBuf>,
    /// Base directory for relative `--out` paths.
    pub output_dir: Option<PathBuf>,
    pub log_level: Option<String>,
    pub score_threshold: Option<f64>,
    pub tables: TableParams,
    pub reorg: ReorgConfig,
    pub style: DrawStyle,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReorgConfig {
    pub max_height: Option<f64>,
    pub gap: f64,
}

impl Default for ReorgConfig {
    fn default() -> Self {
        Self {
            max_height: None,
            gap: DEFAULT_GAP,
        }
    }
}

impl CliConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let data = std::fs::read(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_slice(&data).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Flag, then environment, then config file, then `./registry`.
    pub fn registry_root(&self, flag: Option<&Path>) -> PathBuf {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(layoutkit::registry::REGISTRY_ENV).map(PathBuf::from))
            .or_else(|| self.registry_root.clone())
            .unwrap_or_else(|| PathBuf::from("registry"))
    }

    /// Resolves an output path against `output_dir` when it is relative.
    pub fn output_path(&self, out: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if out.is_relative() => dir.join(out),
            _ => out.to_path_buf(),
        }
    }
}
