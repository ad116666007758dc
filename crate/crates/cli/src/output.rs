//! JSON-lines and CSV report sinks.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use qtough_core::verify::real;
use qtough_core::VerificationReport;
use serde_json::Value;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    /// One JSON object per line, preceded by a header line.
    Json,
    /// check_id, params, margin, passed.
    Csv,
}

enum Sink {
    Json(Box<dyn Write>),
    Csv(Box<csv::Writer<Box<dyn Write>>>),
}

pub struct ReportWriter {
    sink: Sink,
}

fn csv_error(e: csv::Error) -> Failure {
    Failure::Usage(e.to_string())
}

impl ReportWriter {
    pub fn open(path: Option<&PathBuf>, format: ReportFormat) -> Result<Self, Failure> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        let sink = match format {
            ReportFormat::Json => Sink::Json(out),
            ReportFormat::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
        };
        Ok(ReportWriter { sink })
    }

    /// JSON: the run configuration as a leading line. CSV: the column header row.
    pub fn header(&mut self, header: &Value) -> Result<(), Failure> {
        match &mut self.sink {
            Sink::Json(w) => writeln!(w, "{}", serde_json::json!({ "header": header }))?,
            Sink::Csv(w) => w.write_record(["check_id", "params", "margin", "passed"]).map_err(csv_error)?,
        }
        Ok(())
    }

    pub fn report(&mut self, r: &VerificationReport) -> Result<(), Failure> {
        match &mut self.sink {
            Sink::Json(w) => writeln!(w, "{}", r.to_json())?,
            Sink::Csv(w) => {
                let margin = match real(r.margin) {
                    Value::String(s) => s,
                    v => v.to_string(),
                };
                w.write_record([
                    r.check_id.as_str(),
                    r.params_compact().as_str(),
                    margin.as_str(),
                    if r.passed { "true" } else { "false" },
                ])
                .map_err(csv_error)?
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<(), Failure> {
        match self.sink {
            Sink::Json(mut w) => w.flush()?,
            Sink::Csv(mut w) => w.flush()?,
        }
        Ok(())
    }
}
