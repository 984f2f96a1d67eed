//! Report records and their CSV / JSON writers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forman::FormanProfile;
use crate::resistance::ResistanceProfile;
use crate::skeleton::TwoSkeleton;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Destination { path: String, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ReportError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Rounds to 12 significant digits so values survive a text round trip
/// unchanged.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// One corpus graph's outcome. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub forman_min: Option<i64>,
    pub forman_positive: Option<bool>,
    pub resist_min: Option<f64>,
    pub resist_positive: Option<bool>,
    pub diameter: Option<usize>,
    /// Screen violations separated by `;`, or `error: ...` when the graph
    /// could not be evaluated.
    pub violations: String,
}

pub const SCAN_COLUMNS: &str = "index,n,m,f,forman_min,forman_positive,resist_min,resist_positive,diameter,violations";

/// Streams scan records as CSV or as one JSON array.
pub struct RecordWriter<W: Write> {
    format: Format,
    csv: Option<csv::Writer<W>>,
    json: Option<W>,
    first: bool,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(inner: W, format: Format) -> Result<Self> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(inner);
                w.write_record(SCAN_COLUMNS.split(','))?;
                Ok(RecordWriter { format, csv: Some(w), json: None, first: true })
            }
            Format::Json => {
                let mut inner = inner;
                inner.write_all(b"[")?;
                Ok(RecordWriter { format, csv: None, json: Some(inner), first: true })
            }
        }
    }

    pub fn write(&mut self, record: &ScanRecord) -> Result<()> {
        if let Some(w) = self.csv.as_mut() {
            w.serialize(record)?;
        }
        if let Some(w) = self.json.as_mut() {
            if !self.first {
                w.write_all(b",")?;
            }
            w.write_all(b"\n")?;
            serde_json::to_writer(&mut *w, record)?;
        }
        self.first = false;
        Ok(())
    }

    pub fn finish(self) -> Result<()> {
        match self.format {
            Format::Csv => {
                if let Some(mut w) = self.csv {
                    w.flush()?;
                }
            }
            Format::Json => {
                if let Some(mut w) = self.json {
                    if !self.first {
                        w.write_all(b"\n")?;
                    }
                    w.write_all(b"]\n")?;
                    w.flush()?;
                }
            }
        }
        Ok(())
    }
}

pub fn write_records<W: Write>(out: W, records: &[ScanRecord], format: Format) -> Result<()> {
    let mut w = RecordWriter::new(out, format)?;
    for r in records {
        w.write(r)?;
    }
    w.finish()
}

/// Creates `path` (or stdout for `-`) for writing.
pub fn open_output(path: &Path) -> Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    let file =
        File::create(path).map_err(|source| ReportError::Destination { path: path.display().to_string(), source })?;
    Ok(Box::new(BufWriter::new(file)))
}

pub fn write_report(records: &[ScanRecord], format: Format, path: &Path) -> Result<()> {
    write_records(open_output(path)?, records, format)
}

pub fn read_json_records(text: &str) -> Result<Vec<ScanRecord>> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_csv_records<R: io::Read>(reader: R) -> Result<Vec<ScanRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for rec in r.deserialize() {
        out.push(rec?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeValue {
    pub u: usize,
    pub v: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormanSection {
    /// Edge curvatures in canonical edge order (exact integers).
    pub per_edge: Vec<(usize, usize, i64)>,
    pub min: i64,
    /// Exact average as `p/q`.
    pub average: String,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResistanceSection {
    pub per_vertex: Vec<f64>,
    pub per_edge: Vec<EdgeValue>,
    pub min: f64,
    pub positive: bool,
}

/// Curvature output for one skeleton.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub graph: usize,
    pub n: usize,
    pub m: usize,
    pub f: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub forman: Option<FormanSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resistance: Option<ResistanceSection>,
}

impl CurvatureReport {
    pub fn new(
        graph: usize,
        sk: &TwoSkeleton,
        forman: Option<&FormanProfile>,
        resistance: Option<&ResistanceProfile>,
    ) -> Self {
        let g = sk.graph();
        CurvatureReport {
            graph,
            n: g.n(),
            m: g.m(),
            f: sk.faces().len(),
            forman: forman.map(|p| FormanSection {
                per_edge: g.edges().iter().zip(&p.per_edge).map(|(&(u, v), &k)| (u, v, k)).collect(),
                min: p.min,
                average: format!("{}/{}", p.average.numer(), p.average.denom()),
                positive: p.positive,
            }),
            resistance: resistance.map(|p| ResistanceSection {
                per_vertex: p.per_vertex.iter().map(|&x| round_sig(x)).collect(),
                per_edge: g
                    .edges()
                    .iter()
                    .zip(&p.per_edge)
                    .map(|(&(u, v), &r)| EdgeValue { u, v, value: round_sig(r) })
                    .collect(),
                min: round_sig(p.min),
                positive: p.positive,
            }),
        }
    }

    /// Long-form CSV rows: `graph,item,u,v,value`.
    pub fn csv_rows(&self) -> Vec<[String; 5]> {
        let mut rows = Vec::new();
        let g = self.graph.to_string();
        if let Some(f) = &self.forman {
            for &(u, v, k) in &f.per_edge {
                rows.push([g.clone(), "forman_edge".into(), u.to_string(), v.to_string(), k.to_string()]);
            }
        }
        if let Some(r) = &self.resistance {
            for e in &r.per_edge {
                rows.push([g.clone(), "resistance_edge".into(), e.u.to_string(), e.v.to_string(), e.value.to_string()]);
            }
            for (v, k) in r.per_vertex.iter().enumerate() {
                rows.push([g.clone(), "resistance_vertex".into(), v.to_string(), String::new(), k.to_string()]);
            }
        }
        rows
    }
}

pub fn write_curvature_reports<W: Write>(out: W, reports: &[CurvatureReport], format: Format) -> Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, reports)?;
            out.write_all(b"\n")?;
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["graph", "item", "u", "v", "value"])?;
            for r in reports {
                for row in r.csv_rows() {
                    w.write_record(&row)?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}
