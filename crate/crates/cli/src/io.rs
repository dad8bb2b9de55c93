//! Headerless CSV point files and one-label-per-line output.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use pbc_dbscan::{LabelVector, PointSet};

use crate::error::{CliError, Result};

/// Parses headerless comma-separated coordinates, one point per row.
///
/// Returns `None` as the dimension for an input with no rows.
pub fn parse_points<R: Read>(reader: R) -> Result<(Option<usize>, Vec<f64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut dim = None;
    let mut coords = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let row = r + 1;
        let record = record.map_err(|e| CliError::usage(format!("row {row}: {e}")))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        match dim {
            None => dim = Some(record.len()),
            Some(d) if d != record.len() => {
                return Err(CliError::usage(format!(
                    "row {row}: expected {d} columns, found {}",
                    record.len()
                )))
            }
            _ => {}
        }
        for (c, field) in record.iter().enumerate() {
            let col = c + 1;
            let x: f64 = field.parse().map_err(|_| {
                CliError::usage(format!(
                    "row {row}, column {col}: cannot parse {field:?} as a number"
                ))
            })?;
            if !x.is_finite() {
                return Err(CliError::usage(format!(
                    "row {row}, column {col}: coordinate {field:?} is not finite"
                )));
            }
            coords.push(x);
        }
    }
    Ok((dim, coords))
}

pub fn read_points(path: &Path) -> Result<(Option<usize>, Vec<f64>)> {
    let file = File::open(path).map_err(|e| CliError::io(format!("cannot open {}", path.display()), e))?;
    parse_points(file).map_err(|e| match e {
        CliError::Usage(msg) => CliError::usage(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_points<W: Write>(out: W, points: &PointSet) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    for p in points.iter() {
        let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

pub fn write_labels<W: Write>(out: W, labels: &LabelVector) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    for l in labels {
        writeln!(out, "{l}")?;
    }
    out.flush()
}

/// Opens `path` for writing, or standard output when `path` is `None` or `-`.
pub fn create_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p != Path::new("-") => {
            let f = File::create(p).map_err(|e| CliError::io(format!("cannot create {}", p.display()), e))?;
            Ok(Box::new(f))
        }
        _ => Ok(Box::new(std::io::stdout().lock())),
    }
}
