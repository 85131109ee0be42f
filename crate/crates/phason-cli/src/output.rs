//! Output plumbing: schema-tagged JSON and versioned CSV, to stdout or a file.

use std::io::Write;

use crate::{CliError, CliResult, CommonOpts};

pub const SCHEMA: &str = "phason/1";

/// CSV prologue. RFC-4180 has no comment concept, so the version rides in a
/// single-field leading record that '#'-aware readers skip.
pub fn csv_schema_line() -> String {
    format!("# schema: {SCHEMA}\r\n")
}

pub fn write_bytes(common: &CommonOpts, bytes: &[u8]) -> CliResult<()> {
    match common_out(common) {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::numeric(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::numeric(format!("cannot write to stdout: {e}")))
        }
    }
}

fn common_out(common: &CommonOpts) -> Option<&std::path::PathBuf> {
    common.out.as_ref()
}

/// Serialize a payload with the schema tag injected at the top level.
pub fn write_json<T: serde::Serialize>(common: &CommonOpts, payload: &T) -> CliResult<()> {
    let mut value = serde_json::to_value(payload)
        .map_err(|e| CliError::numeric(format!("serialization failed: {e}")))?;
    match value.as_object_mut() {
        Some(map) => {
            let mut tagged = serde_json::Map::with_capacity(map.len() + 1);
            tagged.insert("schema".into(), serde_json::Value::String(SCHEMA.into()));
            tagged.append(map);
            let text = serde_json::to_string(&serde_json::Value::Object(tagged))
                .map_err(|e| CliError::numeric(format!("serialization failed: {e}")))?;
            write_bytes(common, format!("{text}\n").as_bytes())
        }
        None => Err(CliError::numeric("top-level JSON payload must be an object")),
    }
}
