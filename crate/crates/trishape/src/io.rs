//! Site and graph file formats.
//!
//! Sites travel either as CSV, one `x,y` pair per line with an optional
//! header, or as a JSON array of `[x, y]` pairs; the loader picks the
//! format by content, not extension. Graphs for the `dijkstra`
//! subcommand are CSV lines `u,v,w` with 1-based vertex ids. Distance
//! matrices are written back as plain CSV with `inf` for unreachable
//! pairs.

use std::path::Path;

use trishape_core::geodesics::DistanceMatrix;
use trishape_core::Point2;

use crate::error::PipelineError;

fn read(path: &Path, stage: &'static str) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        stage,
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(
    stage: &'static str,
    path: &Path,
    offset: usize,
    message: String,
) -> PipelineError {
    PipelineError::Parse { stage, path: path.to_path_buf(), offset, message }
}

/// Byte offset where each trimmed, non-empty line starts, paired with
/// the line text.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split('\n').filter_map(move |line| {
        let at = offset;
        offset += line.len() + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            None
        } else {
            Some((at + (line.len() - line.trim_start().len()), trimmed))
        }
    })
}

fn parse_sites_json(text: &str, path: &Path, stage: &'static str) -> Result<Vec<Point2>, PipelineError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| parse_err(stage, path, e.column().saturating_sub(1), e.to_string()))?;
    let rows = value
        .as_array()
        .ok_or_else(|| parse_err(stage, path, 0, "expected a JSON array of [x, y] pairs".into()))?;
    let mut sites = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let pair = row.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
            parse_err(stage, path, 0, format!("entry {i} is not an [x, y] pair"))
        })?;
        let x = pair[0].as_f64();
        let y = pair[1].as_f64();
        match (x, y) {
            (Some(x), Some(y)) => sites.push(Point2::new(x, y)),
            _ => return Err(parse_err(stage, path, 0, format!("entry {i} is not numeric"))),
        }
    }
    Ok(sites)
}

fn parse_sites_csv(text: &str, path: &Path, stage: &'static str) -> Result<Vec<Point2>, PipelineError> {
    let mut sites = Vec::new();
    for (line_no, (at, line)) in data_lines(text).enumerate() {
        let mut parts = line.split(',').map(str::trim);
        let (x, y) = (parts.next().unwrap_or(""), parts.next().unwrap_or(""));
        if parts.next().is_some() {
            return Err(parse_err(stage, path, at, "more than two fields".into()));
        }
        match (x.parse::<f64>(), y.parse::<f64>()) {
            (Ok(x), Ok(y)) => sites.push(Point2::new(x, y)),
            _ if line_no == 0 => continue, // header row
            _ => {
                return Err(parse_err(
                    stage,
                    path,
                    at,
                    format!("`{line}` is not an x,y pair"),
                ))
            }
        }
    }
    Ok(sites)
}

/// Loads sites from CSV or JSON, deciding by the first non-space byte.
pub fn load_sites(path: &Path, stage: &'static str) -> Result<Vec<Point2>, PipelineError> {
    let text = read(path, stage)?;
    if text.trim_start().starts_with('[') {
        parse_sites_json(&text, path, stage)
    } else {
        parse_sites_csv(&text, path, stage)
    }
}

/// Sites as a JSON array of pairs, the round-trip counterpart of
/// [`load_sites`].
pub fn sites_to_json(sites: &[Point2]) -> serde_json::Value {
    serde_json::Value::Array(
        sites
            .iter()
            .map(|p| serde_json::json!([p.x, p.y]))
            .collect(),
    )
}

/// Vertex count paired with 0-based `(u, v, w)` edges.
pub type ParsedGraph = (usize, Vec<(usize, usize, f64)>);

/// Loads an edge list of `u,v,w` lines with 1-based vertices. The
/// vertex count is the largest id seen.
pub fn load_graph_csv(path: &Path, stage: &'static str) -> Result<ParsedGraph, PipelineError> {
    let text = read(path, stage)?;
    let mut edges = Vec::new();
    let mut n = 0;
    for (line_no, (at, line)) in data_lines(&text).enumerate() {
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(parse_err(stage, path, at, "expected u,v,w".into()));
        }
        let u = parts[0].parse::<usize>();
        let v = parts[1].parse::<usize>();
        let w = parts[2].parse::<f64>();
        match (u, v, w) {
            (Ok(u), Ok(v), Ok(w)) => {
                if u == 0 || v == 0 {
                    return Err(parse_err(stage, path, at, "vertex ids are 1-based".into()));
                }
                n = n.max(u).max(v);
                edges.push((u - 1, v - 1, w));
            }
            _ if line_no == 0 => continue, // header row
            _ => {
                return Err(parse_err(
                    stage,
                    path,
                    at,
                    format!("`{line}` is not a u,v,w row"),
                ))
            }
        }
    }
    if edges.is_empty() {
        return Err(parse_err(stage, path, 0, "no edges".into()));
    }
    Ok((n, edges))
}

/// Distance matrix as CSV rows; unreachable entries print as `inf`.
pub fn matrix_to_csv(m: &DistanceMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.vertex_count() {
        let row: Vec<String> = m.row(i).iter().map(|d| d.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
