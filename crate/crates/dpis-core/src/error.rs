//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by embedding, extraction, analysis, and file handling.
#[derive(Debug, Error)]
pub enum Error {
    /// The payload (header + message) does not fit the image's capacity.
    #[error("capacity exceeded: payload needs {needed} bits, image provides {available}")]
    Capacity { needed: u64, available: u64 },

    /// The recovered bit stream does not decode to a complete payload.
    /// Signals a wrong key, a tampered image, or a cover that never carried data.
    #[error("malformed payload: {0}")]
    MalformedPayload(String),

    /// A key or manifest file failed to parse.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// The image file is not a lossless 8-bit RGB raster.
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// The file exists but its contents cannot be decoded.
    #[error("corrupt file: {0}")]
    Corrupt(String),

    /// Two artifacts that must describe the same image geometry disagree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A caller-supplied value violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
