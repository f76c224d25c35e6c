//! Command-line front end: tree files, SVG rendering and the `fairpeano`
//! subcommands.

pub mod app;
pub mod render;
pub mod tree_file;

use std::path::PathBuf;

use thiserror::Error;

pub use app::run;
pub use render::{render_svg, ColorMode, RenderError, RenderScene, Strokes};
pub use tree_file::{TreeFile, TreeHost};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for bad arguments or malformed input files.
pub const EXIT_INPUT: i32 = 1;
/// Exit status for an iterative solver that ran out of iterations.
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{field}: {message}")]
    Format { field: String, message: String },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: fairpeano::Error,
    },
    #[error("{0}")]
    NotConverged(String),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Core(#[from] fairpeano::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotConverged(_) | CliError::Core(fairpeano::Error::NotConverged { .. }) => {
                EXIT_NOT_CONVERGED
            }
            _ => EXIT_INPUT,
        }
    }
}
