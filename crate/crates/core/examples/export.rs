//! Write a distance table as CSV and JSON and read both back.

use std::f64::consts::PI;

use bloch_geometry::distances::{bures_distance, sjoqvist_distance};
use bloch_geometry::export::{
    read_csv, read_record_json, write_record, ExportRecord, RunMetadata, Table,
};
use bloch_geometry::states::PlanarState;

pub struct ExportSummary {
    pub rows: usize,
    pub csv_exact: bool,
    pub json_exact: bool,
}

pub fn run_example() -> Result<ExportSummary, Box<dyn std::error::Error>> {
    let mut table = Table::new(["dtheta", "bures", "sjoqvist"]);
    let a = PlanarState::new(0.75, 0.0)?;
    for i in 0..=16 {
        let b = PlanarState::new(0.75, PI * i as f64 / 16.0)?;
        table.push_values(&[b.theta, bures_distance(&a, &b)?, sjoqvist_distance(&a, &b)?]);
    }
    let record = ExportRecord {
        metadata: RunMetadata::new("example").note("radius", 0.75),
        table,
    };

    let dir = std::env::temp_dir().join(format!("bloch-geometry-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let (csv_path, json_path) = (dir.join("distances.csv"), dir.join("distances.json"));
    write_record(&record, &csv_path, None)?;
    write_record(&record, &json_path, None)?;
    let csv_back = read_csv(std::fs::File::open(&csv_path)?)?;
    let json_back = read_record_json(std::fs::File::open(&json_path)?)?;
    std::fs::remove_dir_all(&dir)?;

    Ok(ExportSummary {
        rows: record.table.rows.len(),
        csv_exact: csv_back == record.table,
        json_exact: json_back == record,
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = run_example()?;
    println!(
        "{} rows; csv round trip exact: {}; json round trip exact: {}",
        s.rows, s.csv_exact, s.json_exact
    );
    Ok(())
}
