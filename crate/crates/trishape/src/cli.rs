//! Command-line surface: argument definitions and subcommand dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use trishape_core::geodesics::WeightedGraph;

use crate::config::{parse_norm_order, PipelineConfig};
use crate::error::PipelineError;
use crate::io::{load_graph_csv, matrix_to_csv};
use crate::pgm::load_mask;
use crate::pipeline::{
    self, build_geometry, curv_features, mask_features, rect_features, resolve_sites, Geometry,
    DEFAULT_MAX_SITES,
};
use crate::report;
use crate::svg::render_svg;

/// Triangulation-based shape analysis: Delaunay complexes, curved
/// edges, geodesic features, and mask comparison.
#[derive(Parser, Debug)]
#[command(name = "trishape", version, about, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Triangulate sites and emit the spoke decomposition as JSON.
    Triangulate(TriangulateArgs),
    /// Shape features of a triangulation, a mask, or both, as JSON.
    Features(FeaturesArgs),
    /// Compare triangulation features against mask features.
    Compare(CompareArgs),
    /// Render the triangulation to SVG, geodesic diameter overlaid.
    Render(RenderArgs),
    /// All-pairs shortest distances of a weighted graph, as CSV.
    ///
    /// The input is CSV with one `u,v,w` edge per line, vertices
    /// 1-based. The output matrix has one row per vertex and ends with
    /// a `gdia` line naming the diameter and the pair realizing it.
    Dijkstra(DijkstraArgs),
}

/// Where sites come from: exactly one of a site file or an image.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SiteSource {
    /// Sites file: CSV `x,y` lines (optional header) or a JSON array of
    /// `[x, y]` pairs.
    #[arg(long, value_name = "PATH")]
    pub sites: Option<PathBuf>,
    /// Grayscale PGM image; detected corners become the sites.
    #[arg(long, value_name = "PATH")]
    pub image: Option<PathBuf>,
}

impl SiteSource {
    fn resolve(&self) -> Result<Vec<trishape_core::Point2>, PipelineError> {
        resolve_sites(self.sites.as_deref(), self.image.as_deref(), DEFAULT_MAX_SITES)
    }
}

/// Configuration file and the flags that override it.
#[derive(Args, Debug, Default)]
pub struct ConfigOverrides {
    /// Flat `key = value` configuration file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Curve bend factor in [0, 1); 0 keeps edges straight.
    #[arg(long, value_name = "F")]
    pub bend: Option<f64>,
    /// Open-triangle expansion distance.
    #[arg(long, value_name = "F")]
    pub sigma: Option<f64>,
    /// Chords per curved edge for lengths and areas.
    #[arg(long, value_name = "N")]
    pub samples: Option<usize>,
    /// Orientation count for mask diameter sweeps.
    #[arg(long, value_name = "N")]
    pub orientations: Option<usize>,
    /// Norm order for rd comparison: a number >= 1 or `inf`.
    #[arg(long, value_name = "F|inf", value_parser = parse_p_flag)]
    pub p: Option<f64>,
}

fn parse_p_flag(text: &str) -> Result<f64, String> {
    parse_norm_order(text).ok_or_else(|| format!("`{text}` is not a number or `inf`"))
}

impl ConfigOverrides {
    /// File config (or defaults) with flag overrides applied on top.
    pub fn resolve(&self) -> Result<PipelineConfig, PipelineError> {
        let mut cfg = match &self.config {
            Some(path) => PipelineConfig::from_file(path)?,
            None => PipelineConfig::default(),
        };
        if let Some(bend) = self.bend {
            cfg.bend = bend;
        }
        if let Some(sigma) = self.sigma {
            cfg.sigma = Some(sigma);
        }
        if let Some(samples) = self.samples {
            cfg.edge_samples = samples;
        }
        if let Some(orientations) = self.orientations {
            cfg.orientations = orientations;
        }
        if let Some(p) = self.p {
            cfg.p_norm = p;
        }
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
pub struct TriangulateArgs {
    #[command(flatten)]
    pub source: SiteSource,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "feature_source", required = true, multiple = true)]
pub struct FeatureSource {
    /// Sites file for triangulation features.
    #[arg(long, value_name = "PATH", group = "feature_source")]
    pub sites: Option<PathBuf>,
    /// PGM image whose corners become sites.
    #[arg(long, value_name = "PATH", group = "feature_source")]
    pub image: Option<PathBuf>,
    /// Binary mask (PGM, nonzero = foreground) for image features.
    #[arg(long, value_name = "PATH", group = "feature_source")]
    pub mask: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub source: FeatureSource,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SiteSource,
    /// Binary mask (PGM, nonzero = foreground) standing as the
    /// original shape.
    #[arg(long, value_name = "PATH", required = true)]
    pub mask: PathBuf,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
    /// Report file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also render the curved triangulation to this SVG path.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub source: SiteSource,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
    /// SVG output file.
    #[arg(long, value_name = "PATH", required_unless_present = "out")]
    pub svg: Option<PathBuf>,
    /// Alias for --svg.
    #[arg(long, value_name = "PATH", conflicts_with = "svg")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DijkstraArgs {
    /// Graph CSV: `u,v,w` per line, 1-based vertices.
    #[arg(value_name = "GRAPH")]
    pub graph: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), PipelineError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| PipelineError::Io {
            stage: "output",
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// SVG of one geometry: curved edges when the bend is nonzero, with the
/// graph-diameter geodesic overlaid.
fn geometry_svg(geom: &Geometry, cfg: &PipelineConfig) -> Result<String, PipelineError> {
    let curved = cfg.bend != 0.0;
    let graph = if curved {
        WeightedGraph::from_curvilinear(&geom.curv, cfg.edge_samples)
            .map_err(|source| PipelineError::Core { stage: "geodesics", source })?
    } else {
        WeightedGraph::from_rectilinear(&geom.triangulation)
    };
    let path = pipeline::diameter_path(&graph)?;
    Ok(render_svg(
        &geom.triangulation,
        &geom.decomposition,
        curved.then_some(&geom.curv),
        Some(&path),
        cfg.edge_samples,
    ))
}

pub fn run(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Triangulate(args) => {
            let cfg = args.overrides.resolve()?;
            let sites = args.source.resolve()?;
            let geom = build_geometry(&sites, &cfg)?;
            let value = report::triangulation_json(
                &geom.triangulation,
                &geom.decomposition,
                &geom.curv,
                cfg.chain_cap,
            );
            write_output(&report::to_output_string(&value), args.out.as_deref())
        }
        Command::Features(args) => {
            let cfg = args.overrides.resolve()?;
            let mut value = serde_json::Map::new();
            if args.source.sites.is_some() || args.source.image.is_some() {
                let sites = resolve_sites(
                    args.source.sites.as_deref(),
                    args.source.image.as_deref(),
                    DEFAULT_MAX_SITES,
                )?;
                let geom = build_geometry(&sites, &cfg)?;
                value.insert("rect".into(), report::features_json(&rect_features(&geom)?));
                value.insert("curv".into(), report::features_json(&curv_features(&geom, &cfg)?));
            }
            if let Some(mask_path) = &args.source.mask {
                let mask = load_mask(mask_path, "mask")?;
                value.insert("mask".into(), report::features_json(&mask_features(&mask, &cfg)?));
            }
            write_output(
                &report::to_output_string(&serde_json::Value::Object(value)),
                args.out.as_deref(),
            )
        }
        Command::Compare(args) => {
            let cfg = args.overrides.resolve()?;
            let sites = args.source.resolve()?;
            let value = pipeline::run_compare(&sites, &args.mask, &cfg)?;
            write_output(&report::to_output_string(&value), args.out.as_deref())?;
            if let Some(svg_path) = &args.svg {
                let geom = build_geometry(&sites, &cfg)?;
                let svg = geometry_svg(&geom, &cfg)?;
                write_output(&svg, Some(svg_path))?;
            }
            Ok(())
        }
        Command::Render(args) => {
            let cfg = args.overrides.resolve()?;
            let sites = args.source.resolve()?;
            let geom = build_geometry(&sites, &cfg)?;
            let svg = geometry_svg(&geom, &cfg)?;
            let target = args.svg.as_deref().or(args.out.as_deref());
            write_output(&svg, target)
        }
        Command::Dijkstra(args) => {
            let (n, edges) = load_graph_csv(&args.graph, "graph")?;
            let (matrix, diameter) = pipeline::run_dijkstra(n, &edges)?;
            let mut text = matrix_to_csv(&matrix);
            text.push_str(&format!(
                "gdia,{},{},{}\n",
                diameter.value,
                diameter.pair.0 + 1,
                diameter.pair.1 + 1
            ));
            write_output(&text, args.out.as_deref())
        }
    }
}
