use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("expected a {expected}-channel image, got {found} channel(s)")]
    ChannelMismatch { expected: u8, found: u8 },

    #[error("image {width}x{height} is smaller than the required {min_width}x{min_height}")]
    TooSmall {
        width: u32,
        height: u32,
        min_width: u32,
        min_height: u32,
    },

    #[error("invalid detector configuration: {0}")]
    Config(String),

    #[error("cannot decode image {path}: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("cannot encode image: {0}")]
    Encode(#[source] image::ImageError),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid annotation: {0}")]
    Validation(String),

    #[error("cannot launch OCR engine `{command}`: {source}")]
    EngineLaunch {
        command: String,
        #[source]
        source: std::io::Error,
    },

    #[error("OCR engine error: {0}")]
    Engine(String),

    #[error("{0}")]
    Eval(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
