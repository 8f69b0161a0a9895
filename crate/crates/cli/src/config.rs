use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::render::Format;
use crate::CliError;

pub const DEFAULT_OUT_DIR: &str = "reports";

/// Settings from a TOML file. Keys mirror the long flag names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub timings: Option<bool>,
    pub props: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Effective settings after applying precedence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub budget: u64,
    pub out_dir: PathBuf,
    pub format: Format,
    pub jobs: Option<usize>,
    pub timings: bool,
    pub props: Option<String>,
}

/// Values given on the command line.
#[derive(Debug, Clone, Default)]
pub struct FlagValues {
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub timings: bool,
    pub props: Option<String>,
}

/// Flags beat the environment, which beats the file, which beats defaults.
/// Only the output directory has an environment variable.
pub fn resolve(flags: FlagValues, env_out: Option<PathBuf>, file: FileConfig, default_budget: u64) -> Settings {
    Settings {
        seed: flags.seed.or(file.seed).unwrap_or(0),
        budget: flags.budget.or(file.budget).unwrap_or(default_budget),
        out_dir: flags
            .out
            .or(env_out)
            .or(file.out)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
        format: flags.format.or(file.format).unwrap_or(Format::Text),
        jobs: flags.jobs.or(file.jobs),
        timings: flags.timings || file.timings.unwrap_or(false),
        props: flags.props.or(file.props),
    }
}
