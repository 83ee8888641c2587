use std::path::PathBuf;

use thiserror::Error;

/// Failures that end a command with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] spanner_core::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }
}

macro_rules! core_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Core(e.into())
            }
        })*
    };
}

core_from!(
    spanner_core::graph::GraphError,
    spanner_core::spanner::SpannerError,
    spanner_core::koch::KochError,
    spanner_core::verify::VerifyError,
    spanner_core::pointset::PointSetError
);
