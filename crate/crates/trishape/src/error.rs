//! Pipeline errors with stage labels and process exit codes.

use std::fmt;
use std::path::PathBuf;

/// Error carried out of any pipeline stage. Every variant names the
/// stage it came from, so a failing run always reports where it died.
#[derive(Debug)]
pub enum PipelineError {
    /// Malformed input file; `offset` is the byte position of the
    /// problem within the file.
    Parse { stage: &'static str, path: PathBuf, offset: usize, message: String },
    Io { stage: &'static str, path: PathBuf, source: std::io::Error },
    /// Error bubbled up from the geometry library.
    Core { stage: &'static str, source: trishape_core::Error },
}

impl PipelineError {
    pub fn stage(&self) -> &'static str {
        match self {
            PipelineError::Parse { stage, .. } => stage,
            PipelineError::Io { stage, .. } => stage,
            PipelineError::Core { stage, .. } => stage,
        }
    }

    /// Process exit code: 2 for unreadable or unparsable input, 4 for a
    /// disconnected graph, 3 for any other geometry failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Parse { .. } | PipelineError::Io { .. } => 2,
            PipelineError::Core { source: trishape_core::Error::DisconnectedGraph { .. }, .. } => 4,
            PipelineError::Core { .. } => 3,
        }
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Parse { stage, path, offset, message } => {
                write!(f, "stage {stage}: {}: byte {offset}: {message}", path.display())
            }
            PipelineError::Io { stage, path, source } => {
                write!(f, "stage {stage}: {}: {source}", path.display())
            }
            PipelineError::Core { stage, source } => write!(f, "stage {stage}: {source}"),
        }
    }
}

impl std::error::Error for PipelineError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            PipelineError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// Attaches a stage label to errors coming out of the geometry library.
pub trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T, PipelineError>;
}

impl<T> StageExt<T> for Result<T, trishape_core::Error> {
    fn stage(self, stage: &'static str) -> Result<T, PipelineError> {
        self.map_err(|source| PipelineError::Core { stage, source })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_class() {
        let parse = PipelineError::Parse {
            stage: "mask",
            path: PathBuf::from("m.pgm"),
            offset: 3,
            message: "bad magic".into(),
        };
        assert_eq!(parse.exit_code(), 2);
        let io = PipelineError::Io {
            stage: "sites",
            path: PathBuf::from("missing.csv"),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "gone"),
        };
        assert_eq!(io.exit_code(), 2);
        let degenerate = PipelineError::Core {
            stage: "triangulate",
            source: trishape_core::Error::DegenerateInput("collinear".into()),
        };
        assert_eq!(degenerate.exit_code(), 3);
        let disconnected = PipelineError::Core {
            stage: "geodesics",
            source: trishape_core::Error::DisconnectedGraph { components: 2 },
        };
        assert_eq!(disconnected.exit_code(), 4);
    }

    #[test]
    fn display_names_the_stage() {
        let e = PipelineError::Core {
            stage: "curvilinearize",
            source: trishape_core::Error::InvalidArgument("bend 2".into()),
        };
        let text = e.to_string();
        assert!(text.starts_with("stage curvilinearize:"), "{text}");
    }
}
