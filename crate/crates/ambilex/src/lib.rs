//! File formats, configuration and subcommands for the `ambilex` tool.

use std::fmt::Display;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub mod commands;
pub mod config;

pub use config::PipelineConfig;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {message}", origin.display())]
    Data { origin: PathBuf, message: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl Error {
    pub fn data(origin: &Path, message: impl Display) -> Self {
        Error::Data {
            origin: origin.to_path_buf(),
            message: message.to_string(),
        }
    }

    /// 1 for usage errors, 2 for everything touching data.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Usage(_) => 1,
            _ => 2,
        }
    }
}
