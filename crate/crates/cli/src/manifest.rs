use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use harmcodes::configurations::{CONFIG_HEADER, FLOAT_HEADER, GRAM_HEADER};
use serde::Serialize;

use crate::commands::{Failure, REPORT_SCHEMA};

pub const MANIFEST_SCHEMA: &str = "harmcodes-manifest v1";

#[derive(Debug, Serialize)]
struct Phase {
    name: String,
    seconds: f64,
}

#[derive(Debug, Serialize)]
struct Versions {
    tool: &'static str,
    config_format: &'static str,
    float_format: &'static str,
    gram_format: &'static str,
    report_schema: &'static str,
    search_format: &'static str,
}

/// Record of one invocation.
#[derive(Debug, Serialize)]
pub struct Run {
    schema: &'static str,
    command: String,
    parameters: BTreeMap<String, String>,
    outputs: Vec<PathBuf>,
    versions: Versions,
    timing: Vec<Phase>,
}

impl Run {
    pub fn new() -> Self {
        Run {
            schema: MANIFEST_SCHEMA,
            command: String::new(),
            parameters: BTreeMap::new(),
            outputs: Vec::new(),
            versions: Versions {
                tool: env!("CARGO_PKG_VERSION"),
                config_format: CONFIG_HEADER,
                float_format: FLOAT_HEADER,
                gram_format: GRAM_HEADER,
                report_schema: REPORT_SCHEMA,
                search_format: "harmcodes-search v1",
            },
            timing: Vec::new(),
        }
    }

    pub fn command(&mut self, name: &str) {
        self.command = name.to_string();
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    /// Runs `f` as a named, timed phase.
    pub fn phase<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timing.push(Phase {
            name: name.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Failure::Io(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}
