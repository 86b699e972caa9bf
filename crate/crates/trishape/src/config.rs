//! Pipeline configuration: defaults, flat-file parsing, flag overrides.
//!
//! Config files are plain text, one `key = value` per line, `#` for
//! comments. Unknown keys are rejected rather than ignored so a typo
//! cannot silently fall back to a default. Command-line flags are
//! applied after the file, so a flag always wins over a file value.

use std::fmt::Write as _;
use std::path::Path;

use trishape_core::tolerance::{
    CHAIN_CAP, DEFAULT_BEND, DEFAULT_EDGE_SAMPLES, DEFAULT_KEEP_COMPONENTS, DEFAULT_MID_WEIGHT,
    DEFAULT_ORIENTATIONS, MIN_PIXELS_FRACTION, SIGMA_SCALE,
};

use crate::error::PipelineError;

/// Knobs shared by the pipeline subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Open-triangle expansion; `None` derives it from the bounding box
    /// at use time.
    pub sigma: Option<f64>,
    pub bend: f64,
    pub mid_weight: f64,
    /// Chords per curve for arc length and area approximation.
    pub edge_samples: usize,
    /// Orientation count for mask support-width sweeps.
    pub orientations: usize,
    /// Largest components contributing mask features.
    pub keep_components: usize,
    /// Component filter threshold as a fraction of total mask pixels.
    pub min_pixels: f64,
    /// Norm order for the final comparison; may be infinite.
    pub p_norm: f64,
    /// Spoke-chain enumeration cap.
    pub chain_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            sigma: None,
            bend: DEFAULT_BEND,
            mid_weight: DEFAULT_MID_WEIGHT,
            edge_samples: DEFAULT_EDGE_SAMPLES,
            orientations: DEFAULT_ORIENTATIONS,
            keep_components: DEFAULT_KEEP_COMPONENTS,
            min_pixels: MIN_PIXELS_FRACTION,
            p_norm: 2.0,
            chain_cap: CHAIN_CAP,
        }
    }
}

impl PipelineConfig {
    /// Expansion to use for a shape with bounding-box diagonal `diag`:
    /// the configured value, or a small fraction of the diagonal.
    pub fn effective_sigma(&self, diag: f64) -> f64 {
        self.sigma.unwrap_or(SIGMA_SCALE * diag.max(1e-300))
    }

    /// Component filter threshold in pixels for a `total`-pixel mask,
    /// at least 1.
    pub fn min_pixel_count(&self, total: usize) -> usize {
        ((self.min_pixels * total as f64).ceil() as usize).max(1)
    }

    /// Parses a flat `key = value` file on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
            stage: "config",
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = PipelineConfig::default();
        let mut offset = 0;
        for line in text.split('\n') {
            let at = offset;
            offset += line.len() + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let bad = |message: String| PipelineError::Parse {
                stage: "config",
                path: path.to_path_buf(),
                offset: at,
                message,
            };
            let (key, value) = body
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| bad(format!("`{body}` is not key = value")))?;
            cfg.set(key, value).map_err(bad)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn real(key: &str, value: &str) -> Result<f64, String> {
            parse_norm_order(value).ok_or_else(|| format!("{key} `{value}` is not a number"))
        }
        fn count(key: &str, value: &str) -> Result<usize, String> {
            value
                .parse::<usize>()
                .map_err(|_| format!("{key} `{value}` is not a count"))
        }
        match key {
            "sigma" => self.sigma = Some(real(key, value)?),
            "bend" => self.bend = real(key, value)?,
            "mid_weight" => self.mid_weight = real(key, value)?,
            "edge_samples" => self.edge_samples = count(key, value)?,
            "orientations" => self.orientations = count(key, value)?,
            "keep_components" => self.keep_components = count(key, value)?,
            "min_pixels" => self.min_pixels = real(key, value)?,
            "p_norm" => self.p_norm = real(key, value)?,
            "chain_cap" => self.chain_cap = count(key, value)?,
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// The flat-file form of this configuration.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        if let Some(sigma) = self.sigma {
            let _ = writeln!(out, "sigma = {sigma}");
        }
        let _ = writeln!(out, "bend = {}", self.bend);
        let _ = writeln!(out, "mid_weight = {}", self.mid_weight);
        let _ = writeln!(out, "edge_samples = {}", self.edge_samples);
        let _ = writeln!(out, "orientations = {}", self.orientations);
        let _ = writeln!(out, "keep_components = {}", self.keep_components);
        let _ = writeln!(out, "min_pixels = {}", self.min_pixels);
        let _ = writeln!(out, "p_norm = {}", format_norm_order(self.p_norm));
        let _ = writeln!(out, "chain_cap = {}", self.chain_cap);
        out
    }
}

/// Parses a norm order: a float, or `inf` in a few spellings.
pub fn parse_norm_order(text: &str) -> Option<f64> {
    match text.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "+inf" => Some(f64::INFINITY),
        other => other.parse::<f64>().ok(),
    }
}

pub fn format_norm_order(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        p.to_string()
    }
}
