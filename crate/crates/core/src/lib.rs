//! Triangulated shape approximation.
//!
//! This crate builds planar Delaunay triangulations over point sites,
//! decomposes them into spoke complexes radiating from a nucleus vertex,
//! bends edges into rational quadratic splines, and measures the resulting
//! shapes through geodesic diameters, axis diameters, and areas. A small
//! proximity module classifies triangles as spatially or descriptively near.
//!
//! The crate is `no_std` and allocates through `alloc`. Parsing, file
//! formats, rendering, and the command-line pipeline live in the companion
//! `trishape` crate.
//!
//! Modules follow the processing order:
//!
//! * [`geom`]: points, predicates, convex hulls, Delaunay triangulations.
//! * [`complexes`]: nucleus selection, spoke levels, boundaries, chains.
//! * [`splines`]: B-spline basis, NURBS curves, curvilinear triangulations.
//! * [`proximity`]: relaxed open triangles and descriptor-based nearness.
//! * [`geodesics`]: shortest paths and graph diameters on edge graphs.
//! * [`shape_metrics`]: shape feature vectors and relative differences.
//!
//! All tolerances and defaults are collected in [`tolerance`].

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complexes;
pub mod error;
pub mod geodesics;
pub mod geom;
pub mod proximity;
pub mod raster;
pub mod shape_metrics;
pub mod splines;
pub mod tolerance;

pub use error::Error;
pub use geom::{Point2, Triangle, Triangulation};
