//! CLI error type and the exit-code contract.
//!
//! Every failure a command can hit maps onto one of four nonzero exit
//! codes: 2 for validation problems (bad flags, unusable input data), 3 for
//! I/O, 4 for a distortion or tolerance target the pipeline cannot reach,
//! and 5 for a container that fails to parse.

use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum ToolError {
    Validation(String),
    Io(String),
    Unreachable(String),
    Corrupt(String),
}

impl ToolError {
    pub fn exit_code(&self) -> u8 {
        match self {
            ToolError::Validation(_) => 2,
            ToolError::Io(_) => 3,
            ToolError::Unreachable(_) => 4,
            ToolError::Corrupt(_) => 5,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        ToolError::Io(format!("{}: {err}", path.display()))
    }

    /// Wraps a library error from a named pipeline stage.
    ///
    /// Unreachable targets keep their dedicated exit code wherever they
    /// surface; everything else from a live pipeline means the input could
    /// not be processed as requested.
    pub fn pipeline(stage: &str, err: soomp::Error) -> Self {
        match err {
            soomp::Error::UnreachableTarget { achieved } => ToolError::Unreachable(format!(
                "{stage}: target distortion unreachable; closest achievable PRDN is {achieved:.4}"
            )),
            soomp::Error::FrameFailed { index, source } => match *source {
                soomp::Error::CapBeforeTolerance { selected } => ToolError::Unreachable(format!(
                    "{stage}: frame {index} hit the atom cap after {selected} atoms without reaching its tolerance"
                )),
                other => ToolError::Validation(format!("{stage}: frame {index}: {other}")),
            },
            other => ToolError::Validation(format!("{stage}: {other}")),
        }
    }

    /// Wraps a decode failure: the file claimed to be a container and was not.
    pub fn corrupt(path: &Path, err: soomp::Error) -> Self {
        ToolError::Corrupt(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for ToolError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToolError::Validation(msg) => write!(f, "{msg}"),
            ToolError::Io(msg) => write!(f, "{msg}"),
            ToolError::Unreachable(msg) => write!(f, "{msg}"),
            ToolError::Corrupt(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ToolError {}

pub type Result<T> = std::result::Result<T, ToolError>;
