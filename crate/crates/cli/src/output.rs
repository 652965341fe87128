//! Deterministic file writers: CSV tables under a `# {json}` provenance
//! header and pretty-printed JSON reports. All floats go through one fixed
//! format so reruns are byte-identical.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::CliError;

pub fn fmt(x: f64) -> String {
    format!("{x:.12e}")
}

pub fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Run(format!("cannot create {}: {e}", path.display())))
}

/// CSV with provenance: `# {echo}`, a column-name line, then the rows.
pub fn write_csv(
    path: &Path,
    echo: &serde_json::Value,
    columns: &str,
    rows: impl IntoIterator<Item = String>,
) -> Result<(), CliError> {
    let mut out = create(path)?;
    let io = |e: std::io::Error| CliError::Run(format!("{}: {e}", path.display()));
    writeln!(out, "# {echo}").map_err(io)?;
    writeln!(out, "{columns}").map_err(io)?;
    for row in rows {
        writeln!(out, "{row}").map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn write_json(path: &Path, doc: &serde_json::Value) -> Result<(), CliError> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, doc)
        .map_err(|e| CliError::Run(format!("{}: {e}", path.display())))?;
    writeln!(out).map_err(|e| CliError::Run(format!("{}: {e}", path.display())))?;
    out.flush().map_err(|e| CliError::Run(format!("{}: {e}", path.display())))
}

/// One grid point failed; the run continues and exits with code 1.
#[derive(Debug, serde::Serialize)]
pub struct Failure {
    pub coordinates: Vec<f64>,
    pub stage: &'static str,
    pub error: String,
}
