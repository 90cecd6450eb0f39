//! JSON and CSV rendering of command results.

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Format};
use crate::CliError;

/// Top-level output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<R, S> {
    pub config: ExperimentConfig,
    pub rows: Vec<R>,
    pub summary: S,
}

/// Flat view of a row for CSV.
pub trait Table {
    fn header() -> Vec<&'static str>;
    fn record(&self) -> Vec<String>;
}

/// Empty string for a missing value.
pub fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn render<R: Serialize + Table, S: Serialize>(
    report: &Report<R, S>,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::invalid(format!("serializing output: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fail = |e: csv::Error| CliError::invalid(format!("writing csv: {e}"));
            w.write_record(R::header()).map_err(fail)?;
            for r in &report.rows {
                w.write_record(r.record()).map_err(fail)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::invalid(format!("writing csv: {e}")))?;
            String::from_utf8(bytes).map_err(|e| CliError::invalid(e.to_string()))
        }
    }
}
