use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::{CliError, RunConfig};

/// Outcome of one subcommand: a summary for the terminal, the JSON report
/// body, an optional CSV table and the exit status it implies.
pub struct Outcome {
    pub summary: String,
    pub report: Value,
    pub csv: Option<Csv>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    /// Exact mismatch in strict mode, or a witnessed counterexample.
    Failed,
}

pub struct Csv {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Outcome {
    pub fn new(summary: String, report: impl Serialize, status: Status) -> Result<Self, CliError> {
        Ok(Self {
            summary,
            report: serde_json::to_value(report).map_err(|e| CliError::Output(e.to_string()))?,
            csv: None,
            status,
        })
    }

    pub fn with_csv(mut self, csv: Csv) -> Self {
        self.csv = Some(csv);
        self
    }
}

pub fn document(config: &RunConfig, outcome: &Outcome, wall: Option<Duration>) -> Value {
    let mut header = json!({
        "tool": "opsf",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
    });
    if let Some(w) = wall {
        header["wall_time_secs"] = json!(w.as_secs_f64());
    }
    json!({
        "header": header,
        "passed": outcome.status == Status::Passed,
        "report": outcome.report,
    })
}

fn sink(path: &Path) -> io::Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        Ok(Box::new(File::create(path)?))
    }
}

pub fn write_json(path: &Path, doc: &Value) -> io::Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, doc)?;
    writeln!(w)?;
    w.flush()
}

pub fn write_csv(path: &Path, csv: &Csv) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(sink(path)?);
    w.write_record(&csv.header)?;
    for r in &csv.rows {
        w.write_record(r)?;
    }
    w.flush()
}
