//! Output documents and their CSV and JSON encodings.
//!
//! CSV files start with `# config_sha256=<hex> version=<semver>`, followed
//! by the column line and one line per row. Numbers carry 12 significant
//! digits; absent values are empty cells. JSON documents hold the same
//! columns with full precision and parse back to identical rows.

use lfvdw_core::{CurveRow, ScanTable};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// Column order of potential scans.
pub const CURVE_COLUMNS: [&str; 16] = [
    "scan_value",
    "z",
    "layer",
    "u1",
    "u2_odd",
    "u2_even",
    "u2_corrected",
    "u2_uncorrected",
    "delta_u2",
    "total",
    "force",
    "err_u1",
    "err_u2",
    "err_force",
    "flags",
    "fault",
];

/// Column order of coefficient and interface reports.
pub const QUANTITY_COLUMNS: [&str; 4] = ["quantity", "value", "error_estimate", "note"];

/// One scan row. `layer` is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowRecord {
    pub scan_value: f64,
    pub z: f64,
    pub layer: usize,
    pub u1: Option<f64>,
    pub u2_odd: Option<f64>,
    pub u2_even: Option<f64>,
    pub u2_corrected: Option<f64>,
    pub u2_uncorrected: Option<f64>,
    pub delta_u2: Option<f64>,
    pub total: Option<f64>,
    pub force: Option<f64>,
    pub err_u1: f64,
    pub err_u2: f64,
    pub err_force: f64,
    pub flags: String,
    pub fault: Option<String>,
}

impl From<&CurveRow> for RowRecord {
    fn from(r: &CurveRow) -> Self {
        Self {
            scan_value: r.scan_value,
            z: r.z,
            layer: r.layer + 1,
            u1: r.u1,
            u2_odd: r.u2_odd,
            u2_even: r.u2_even,
            u2_corrected: r.u2_corrected,
            u2_uncorrected: r.u2_uncorrected,
            delta_u2: r.delta_u2,
            total: r.total,
            force: r.force,
            err_u1: r.errors.u1,
            err_u2: r.errors.u2,
            err_force: r.errors.force,
            flags: r.flags.describe(),
            fault: r.fault.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub config_sha256: String,
    pub version: String,
    pub title: Option<String>,
}

impl Header {
    pub fn new(config_sha256: String, title: Option<String>) -> Self {
        Self {
            config_sha256,
            version: lfvdw_core::VERSION.to_string(),
            title,
        }
    }

    fn csv_line(&self) -> String {
        format!("# config_sha256={} version={}\n", self.config_sha256, self.version)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDocument {
    #[serde(flatten)]
    pub header: Header,
    pub axis: String,
    pub rows: Vec<RowRecord>,
    /// Grid values excluded by the distance guard.
    pub skipped: Vec<f64>,
}

impl CurveDocument {
    pub fn new(header: Header, axis: String, table: &ScanTable) -> Self {
        Self {
            header,
            axis,
            rows: table.rows.iter().map(RowRecord::from).collect(),
            skipped: table.skipped.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub quantity: String,
    pub value: Option<f64>,
    pub error_estimate: Option<f64>,
    pub note: Option<String>,
}

impl Quantity {
    pub fn new(name: &str, value: f64, error_estimate: Option<f64>) -> Self {
        Self {
            quantity: name.to_string(),
            value: Some(value),
            error_estimate,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantityDocument {
    #[serde(flatten)]
    pub header: Header,
    pub kind: String,
    pub quantities: Vec<Quantity>,
}

impl QuantityDocument {
    pub fn get(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.quantity == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Curve(CurveDocument),
    Quantities(QuantityDocument),
}

/// 12 significant digits.
pub fn number(x: f64) -> String {
    format!("{x:.11e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::Io {
        path: "<csv buffer>".into(),
        source: std::io::Error::other(e.to_string()),
    }
}

fn csv_text(header: &Header, columns: &[&str], rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(header.csv_line().into_bytes());
    w.write_record(columns).map_err(csv_error)?;
    for r in rows {
        w.write_record(&r).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

impl Document {
    pub fn header(&self) -> &Header {
        match self {
            Document::Curve(d) => &d.header,
            Document::Quantities(d) => &d.header,
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => {
                let text = match self {
                    Document::Curve(d) => serde_json::to_string_pretty(d),
                    Document::Quantities(d) => serde_json::to_string_pretty(d),
                };
                text.map(|t| t + "\n").map_err(csv_error)
            }
            Format::Csv => match self {
                Document::Curve(d) => {
                    let rows = d
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                number(r.scan_value),
                                number(r.z),
                                r.layer.to_string(),
                                opt(r.u1),
                                opt(r.u2_odd),
                                opt(r.u2_even),
                                opt(r.u2_corrected),
                                opt(r.u2_uncorrected),
                                opt(r.delta_u2),
                                opt(r.total),
                                opt(r.force),
                                number(r.err_u1),
                                number(r.err_u2),
                                number(r.err_force),
                                r.flags.clone(),
                                r.fault.clone().unwrap_or_default(),
                            ]
                        })
                        .collect();
                    csv_text(&d.header, &CURVE_COLUMNS, rows)
                }
                Document::Quantities(d) => {
                    let rows = d
                        .quantities
                        .iter()
                        .map(|q| {
                            vec![
                                q.quantity.clone(),
                                opt(q.value),
                                opt(q.error_estimate),
                                q.note.clone().unwrap_or_default(),
                            ]
                        })
                        .collect();
                    csv_text(&d.header, &QUANTITY_COLUMNS, rows)
                }
            },
        }
    }
}

pub fn parse_curve_json(text: &str) -> CliResult<CurveDocument> {
    serde_json::from_str(text).map_err(|e| CliError::config(format!("curve JSON: {e}")))
}

pub fn parse_quantity_json(text: &str) -> CliResult<QuantityDocument> {
    serde_json::from_str(text).map_err(|e| CliError::config(format!("quantity JSON: {e}")))
}
