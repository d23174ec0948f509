use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use zkpoly::rng::PRNG_NAME;
use zkpoly::Agreement;

/// One machine-readable result. Everything except `timing` is a pure
/// function of the command line.
#[derive(Debug, Serialize)]
pub struct ExperimentRecord {
    pub command: String,
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub prng: &'static str,
    pub parameters: Value,
    pub result: Value,
    pub version: &'static str,
    pub timing: Value,
}

impl ExperimentRecord {
    pub fn new(command: &str, seed: Option<u64>, parameters: Value, result: Value, started: Instant) -> Self {
        ExperimentRecord {
            command: command.to_string(),
            args: std::env::args().skip(1).collect(),
            seed,
            prng: PRNG_NAME,
            parameters,
            result,
            version: env!("CARGO_PKG_VERSION"),
            timing: json!({ "wall_seconds": started.elapsed().as_secs_f64() }),
        }
    }

    pub fn emit(&self, out: Option<&Path>) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        write_output(out, text.as_bytes())
    }
}

pub fn write_output(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

/// "m/t" string, the exact pair and a float for plotting.
pub fn frac(a: &Agreement) -> Value {
    json!({
        "fraction": a.to_string(),
        "exact": a,
        "float": a.to_f64(),
    })
}
