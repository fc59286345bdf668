//! Defaults file support.
//!
//! A TOML file passed with `--config` supplies defaults for flags the
//! command line leaves unset; explicit flags always win, built-in defaults
//! fill whatever remains. Every report embeds the resolved values, so a
//! run can be reproduced from its report alone.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Result, ToolError};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub target_prdn: Option<f64>,
    pub fs: Option<f64>,
    pub format: Option<String>,
    pub dictionary: Option<String>,
    pub level: Option<u8>,
    pub max_atoms: Option<usize>,
    pub channel: Option<usize>,
    pub data_dir: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub frame_len: Option<usize>,
    pub snr0: Option<Vec<f64>>,
    pub repeats: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub ambient: Option<usize>,
    pub atoms: Option<usize>,
    pub signals: Option<usize>,
    pub iterations: Option<usize>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    toml::from_str(&text)
        .map_err(|e| ToolError::Validation(format!("{}: {e}", path.display())))
}

/// Flag beats file beats default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
