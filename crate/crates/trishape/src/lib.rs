//! File formats, site detection, reporting, and the command-line
//! pipeline wrapped around [`trishape_core`].
//!
//! The core crate owns the geometry; this one owns everything that
//! touches the filesystem or a terminal: PGM images, site and graph
//! CSV, flat config files, JSON reports, SVG rendering, and the
//! `trishape` binary built from [`cli`].

pub use trishape_core as core;

pub mod cli;
pub mod config;
pub mod corners;
pub mod error;
pub mod io;
pub mod pgm;
pub mod pipeline;
pub mod report;
pub mod svg;

pub use error::PipelineError;
