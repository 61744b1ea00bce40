//! Tabular and document output: CSV with a header row and LF line endings,
//! JSON with missing values written as `null`.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Output flavour, chosen from the file extension unless given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    /// `.json` selects JSON; everything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => OutputFormat::Json,
            _ => OutputFormat::Csv,
        }
    }
}

/// Context recorded with every export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub command: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Free-form key/value annotations, e.g. flagged boundary contacts.
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub notes: serde_json::Map<String, serde_json::Value>,
}

impl RunMetadata {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: None,
            tolerance: None,
            notes: serde_json::Map::new(),
        }
    }

    pub fn note(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.notes.insert(key.to_string(), v);
        self
    }
}

/// A table of labelled numeric columns; `None` marks a missing value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn push_values(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&v| Some(v)).collect());
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// A table plus its run metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportRecord {
    pub metadata: RunMetadata,
    #[serde(flatten)]
    pub table: Table,
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| v.map(format_float).unwrap_or_default()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Table, Box<dyn std::error::Error>> {
    let mut r = csv::Reader::from_reader(input);
    let columns = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                if f.is_empty() {
                    Ok(None)
                } else {
                    f.parse::<f64>().map(Some)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

/// Write `record` to `path` in `format` (or the format implied by the extension).
pub fn write_record(
    record: &ExportRecord,
    path: &Path,
    format: Option<OutputFormat>,
) -> Result<(), Box<dyn std::error::Error>> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    match format.unwrap_or_else(|| OutputFormat::from_path(path)) {
        OutputFormat::Csv => write_csv(&record.table, file)?,
        OutputFormat::Json => write_json(record, file)?,
    }
    Ok(())
}

/// Pretty JSON followed by a newline. Non-finite floats become `null`.
pub fn write_json<T: Serialize, W: Write>(value: &T, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()
}

pub fn read_record_json<R: Read>(input: R) -> serde_json::Result<ExportRecord> {
    serde_json::from_reader(input)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["x", "y"]);
        t.push(vec![Some(0.1), None]);
        t.push_values(&[std::f64::consts::PI, -1e-300]);
        t
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,y\n"));
        assert!(!text.contains('\r'));
        assert_eq!(read_csv(&buf[..]).unwrap(), sample());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rec = ExportRecord {
            metadata: RunMetadata::new("test").note("k", 1),
            table: sample(),
        };
        let mut buf = Vec::new();
        write_json(&rec, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("null") && !text.contains("NaN"));
        assert_eq!(read_record_json(&buf[..]).unwrap(), rec);
    }

    #[test]
    fn nan_is_written_as_null() {
        let mut buf = Vec::new();
        write_json(&vec![f64::NAN], &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("null"));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            OutputFormat::from_path(Path::new("a.JSON")),
            OutputFormat::Json
        );
        assert_eq!(
            OutputFormat::from_path(Path::new("a.csv")),
            OutputFormat::Csv
        );
        assert_eq!(OutputFormat::from_path(Path::new("a")), OutputFormat::Csv);
    }

    #[test]
    fn seventeen_digits() {
        let s = format_float(0.1);
        assert_eq!(s, "1.0000000000000001e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
    }
}
