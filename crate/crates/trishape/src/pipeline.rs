//! Stage-by-stage orchestration behind the subcommands.
//!
//! Each stage wraps its library call with a stage label, so any failure
//! reports where in the pipeline it happened: sites, image, detect,
//! triangulate, decompose, curvilinearize, features-rect, features-curv,
//! mask, features-mask, compare, graph, or diameter.

use std::path::Path;

use serde_json::Value;

use trishape_core::complexes::SpokeDecomposition;
use trishape_core::geodesics::{
    dijkstra, distance_matrix, graph_diameter, DistanceMatrix, GraphDiameter, WeightedGraph,
};
use trishape_core::raster::BinaryMask;
use trishape_core::shape_metrics::{
    image_features, rd_difference, rd_pnorm, relative_difference, shape_features_curv,
    shape_features_rect, ShapeFeatures,
};
use trishape_core::splines::{curvilinearize, CurvTriangulation};
use trishape_core::{Point2, Triangulation};

use crate::config::PipelineConfig;
use crate::corners::detect_sites;
use crate::error::{PipelineError, StageExt};
use crate::io::load_sites;
use crate::pgm::{load_mask, load_pgm};
use crate::report;

/// Sites detected from an image get this budget unless the caller sets
/// another.
pub const DEFAULT_MAX_SITES: usize = 64;

/// Resolves the site list from a sites file or an image, in that order
/// of preference.
pub fn resolve_sites(
    sites_path: Option<&Path>,
    image_path: Option<&Path>,
    max_sites: usize,
) -> Result<Vec<Point2>, PipelineError> {
    if let Some(path) = sites_path {
        return load_sites(path, "sites");
    }
    let path = image_path.expect("caller guarantees a site source");
    let img = load_pgm(path, "image")?;
    detect_sites(&img, max_sites).stage("detect")
}

/// The three geometric artifacts every sites-based subcommand shares.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub triangulation: Triangulation,
    pub decomposition: SpokeDecomposition,
    pub curv: CurvTriangulation,
}

/// Triangulates, decomposes, and curves one site list.
pub fn build_geometry(
    sites: &[Point2],
    cfg: &PipelineConfig,
) -> Result<Geometry, PipelineError> {
    let triangulation = trishape_core::geom::delaunay_triangulate(sites).stage("triangulate")?;
    let decomposition = SpokeDecomposition::new(&triangulation).stage("decompose")?;
    let curv = curvilinearize(&triangulation, &decomposition, cfg.bend, cfg.mid_weight)
        .stage("curvilinearize")?;
    Ok(Geometry { triangulation, decomposition, curv })
}

pub fn rect_features(geom: &Geometry) -> Result<ShapeFeatures, PipelineError> {
    shape_features_rect(&geom.triangulation).stage("features-rect")
}

pub fn curv_features(
    geom: &Geometry,
    cfg: &PipelineConfig,
) -> Result<ShapeFeatures, PipelineError> {
    shape_features_curv(&geom.curv, cfg.edge_samples).stage("features-curv")
}

pub fn mask_features(
    mask: &BinaryMask,
    cfg: &PipelineConfig,
) -> Result<ShapeFeatures, PipelineError> {
    let min_pixels = cfg.min_pixel_count(mask.width() * mask.height());
    image_features(mask, cfg.orientations, cfg.keep_components, min_pixels)
        .stage("features-mask")
}

/// Full comparison: rectilinear and curvilinear features against the
/// mask's features, with their difference and p-norm.
pub fn run_compare(
    sites: &[Point2],
    mask_path: &Path,
    cfg: &PipelineConfig,
) -> Result<Value, PipelineError> {
    let geom = build_geometry(sites, cfg)?;
    let rect = rect_features(&geom)?;
    let curv = curv_features(&geom, cfg)?;
    let mask = load_mask(mask_path, "mask")?;
    let mask_f = mask_features(&mask, cfg)?;
    let rd_rect = relative_difference(&rect, &mask_f).stage("compare")?;
    let rd_curv = relative_difference(&curv, &mask_f).stage("compare")?;
    let diff = rd_difference(&rd_rect, &rd_curv);
    let pnorm = rd_pnorm(&rd_rect, &rd_curv, cfg.p_norm).stage("compare")?;
    Ok(report::compare_report_json(
        cfg,
        sites.len(),
        &rect,
        &curv,
        &mask_f,
        &rd_rect,
        &rd_curv,
        &diff,
        pnorm,
    ))
}

/// All-pairs distances and diameter of an explicit weighted graph.
pub fn run_dijkstra(
    n: usize,
    edges: &[(usize, usize, f64)],
) -> Result<(DistanceMatrix, GraphDiameter), PipelineError> {
    let g = WeightedGraph::new(n, edges).stage("graph")?;
    let matrix = distance_matrix(&g);
    let diameter = graph_diameter(&matrix).stage("diameter")?;
    Ok((matrix, diameter))
}

/// Vertex path realizing the diameter of the given graph.
pub fn diameter_path(g: &WeightedGraph) -> Result<Vec<usize>, PipelineError> {
    let matrix = distance_matrix(g);
    let diameter = graph_diameter(&matrix).stage("diameter")?;
    let paths = dijkstra(g, diameter.pair.0).stage("diameter")?;
    Ok(paths.path_to(diameter.pair.1).expect("connected graph"))
}
