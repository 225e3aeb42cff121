//! Optional JSON config file supplying defaults for tunable flags.
//! Precedence is flags > config file > built-in defaults.

use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// "csv" or "json"
    pub format: Option<String>,
    pub seed: Option<u64>,
    pub dev_tol: Option<f64>,
    pub dirs: Option<usize>,
    pub step: Option<f64>,
    pub basis_order: Option<usize>,
    pub window: Option<f64>,
    pub tol: Option<f64>,
}

pub fn load(path: &Path) -> Result<ConfigFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

/// flags > config > default
pub fn resolve<T: Copy>(flag: Option<T>, from_config: Option<T>, default: T) -> T {
    flag.or(from_config).unwrap_or(default)
}
