//! JSON views of pipeline results.
//!
//! All objects go through `serde_json::Value` maps, which keep their
//! keys sorted, so serialized output is deterministic for fixed input.
//! An infinite norm order appears as the string `"inf"` since JSON has
//! no infinity literal.

use serde_json::{json, Value};

use trishape_core::complexes::{spoke_chains, SpokeDecomposition};
use trishape_core::shape_metrics::{RdVector, ShapeFeatures};
use trishape_core::splines::CurvTriangulation;
use trishape_core::Triangulation;

use crate::config::{format_norm_order, PipelineConfig};
use crate::io::sites_to_json;

pub fn features_json(f: &ShapeFeatures) -> Value {
    json!({
        "gdia": f.gdia,
        "dia_max": f.dia_max,
        "dia_mean": f.dia_mean,
        "area": f.area,
    })
}

pub fn rd_json(rd: &RdVector) -> Value {
    json!({
        "rd_gdia": rd.rd_gdia,
        "rd_dmax": rd.rd_dmax,
        "rd_dmean": rd.rd_dmean,
        "rd_ar": rd.rd_ar,
    })
}

pub fn config_json(cfg: &PipelineConfig) -> Value {
    json!({
        "sigma": cfg.sigma,
        "bend": cfg.bend,
        "mid_weight": cfg.mid_weight,
        "edge_samples": cfg.edge_samples,
        "orientations": cfg.orientations,
        "keep_components": cfg.keep_components,
        "min_pixels": cfg.min_pixels,
        "p_norm": format_norm_order(cfg.p_norm),
        "chain_cap": cfg.chain_cap,
    })
}

/// Triangulation, decomposition summary, and curved-edge control data.
/// Chains are enumerated up to `chain_cap` and only summarized.
pub fn triangulation_json(
    t: &Triangulation,
    dec: &SpokeDecomposition,
    ct: &CurvTriangulation,
    chain_cap: usize,
) -> Value {
    let chains = spoke_chains(t, &dec.levels, chain_cap);
    let histogram: serde_json::Map<String, Value> = dec
        .histogram
        .iter()
        .map(|(order, count)| (order.to_string(), json!(count)))
        .collect();
    json!({
        "sites": sites_to_json(t.sites()),
        "faces": t.faces().iter().map(|f| f.vertices()).collect::<Vec<_>>(),
        "edges": t.edges(),
        "decomposition": {
            "nucleus": {
                "vertex": dec.nucleus.vertex,
                "order": dec.nucleus.order,
                "tied": dec.nucleus.tied,
            },
            "levels": dec.levels,
            "max_level": dec.max_level,
            "regular": dec.regular,
            "boundary_edges": dec.boundary.edges,
            "boundary_faces": dec.boundary.faces,
            "nerve_histogram": histogram,
            "chain_count": chains.chains.len(),
            "chains_truncated": chains.truncated,
        },
        "curv": {
            "bend": ct.bend(),
            "mid_weight": ct.mid_weight(),
            "edge_midpoints": ct
                .curves()
                .iter()
                .map(|c| {
                    let m = c.control()[1];
                    json!([m.x, m.y])
                })
                .collect::<Vec<_>>(),
        },
    })
}

/// The full comparison report.
#[allow(clippy::too_many_arguments)]
pub fn compare_report_json(
    cfg: &PipelineConfig,
    site_count: usize,
    rect: &ShapeFeatures,
    curv: &ShapeFeatures,
    mask: &ShapeFeatures,
    rd_rect: &RdVector,
    rd_curv: &RdVector,
    rd_diff: &RdVector,
    pnorm: f64,
) -> Value {
    json!({
        "config": config_json(cfg),
        "site_count": site_count,
        "features": {
            "rect": features_json(rect),
            "curv": features_json(curv),
            "mask": features_json(mask),
        },
        "rd": {
            "rect": rd_json(rd_rect),
            "curv": rd_json(rd_curv),
        },
        "rd_diff": rd_diff.as_array(),
        "pnorm": {
            "p": format_norm_order(cfg.p_norm),
            "value": pnorm,
        },
    })
}

/// Serializes a report with a trailing newline, ready for a file or
/// stdout.
pub fn to_output_string(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("no non-string keys");
    text.push('\n');
    text
}
