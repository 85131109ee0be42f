//! Config-file fallback for flags: flags win, then the file, then defaults.

use std::path::{Path, PathBuf};

use crate::{CliError, CliResult};

pub struct Config {
    values: serde_json::Map<String, serde_json::Value>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Config> {
        let values = match path {
            None => serde_json::Map::new(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::validation(format!("cannot read config {}: {e}", p.display()))
                })?;
                let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
                    CliError::validation(format!("config {} is not valid JSON: {e}", p.display()))
                })?;
                match v {
                    serde_json::Value::Object(m) => m,
                    _ => {
                        return Err(CliError::validation(
                            "config file must be a JSON object keyed by flag names",
                        ))
                    }
                }
            }
        };
        Ok(Config { values })
    }

    fn get(&self, key: &str) -> Option<&serde_json::Value> {
        self.values.get(key)
    }

    pub fn f64_opt(&self, flag: Option<f64>, key: &str) -> CliResult<Option<f64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| CliError::validation(format!("config key {key} must be a number"))),
        }
    }

    /// Resolve a required physical value; the error names the flag.
    pub fn f64_required(&self, flag: Option<f64>, key: &str) -> CliResult<f64> {
        self.f64_opt(flag, key)?.ok_or_else(|| {
            CliError::validation(format!("missing required flag --{key} (or config key \"{key}\")"))
        })
    }

    pub fn f64_default(&self, flag: Option<f64>, key: &str, default: f64) -> CliResult<f64> {
        Ok(self.f64_opt(flag, key)?.unwrap_or(default))
    }

    pub fn u64_opt(&self, flag: Option<u64>, key: &str) -> CliResult<Option<u64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.as_u64().map(Some).ok_or_else(|| {
                CliError::validation(format!("config key {key} must be a non-negative integer"))
            }),
        }
    }

    pub fn u64_required(&self, flag: Option<u64>, key: &str) -> CliResult<u64> {
        self.u64_opt(flag, key)?.ok_or_else(|| {
            CliError::validation(format!("missing required flag --{key} (or config key \"{key}\")"))
        })
    }

    pub fn u64_default(&self, flag: Option<u64>, key: &str, default: u64) -> CliResult<u64> {
        Ok(self.u64_opt(flag, key)?.unwrap_or(default))
    }

    pub fn string_opt(&self, flag: Option<String>, key: &str) -> CliResult<Option<String>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_str()
                .map(|s| Some(s.to_string()))
                .ok_or_else(|| CliError::validation(format!("config key {key} must be a string"))),
        }
    }

    pub fn string_default(
        &self,
        flag: Option<String>,
        key: &str,
        default: &str,
    ) -> CliResult<String> {
        Ok(self.string_opt(flag, key)?.unwrap_or_else(|| default.to_string()))
    }
}

/// Locate a scenario: built-in presets first, then <name>.json under each
/// directory in PHASON_SCENARIO_DIR.
pub fn find_scenario(name: &str) -> CliResult<phason::planner::Scenario> {
    if let Some(s) = phason::planner::Scenario::preset(name) {
        return Ok(s);
    }
    if let Ok(dirs) = std::env::var("PHASON_SCENARIO_DIR") {
        for dir in dirs.split(':').filter(|d| !d.is_empty()) {
            let candidate = PathBuf::from(dir).join(format!("{name}.json"));
            if candidate.is_file() {
                return phason::planner::Scenario::load_json(&candidate).map_err(CliError::from);
            }
        }
    }
    Err(CliError::validation(format!(
        "unknown scenario '{name}': not a preset and not found via PHASON_SCENARIO_DIR"
    )))
}
