//! Loading externally computed configurations from CSV or JSON files.

use std::path::Path;

use crate::config::{Configuration, Family};
use crate::error::Error;
use crate::geom::UnitPoint;
use crate::Result;

/// Supported on-disk formats for external point sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExternalFormat {
    /// One `x,y,z` row per point; `#`-prefixed lines and blanks skipped.
    Csv,
    /// A JSON array of 3-element arrays.
    Json,
}

fn validated(x: f64, y: f64, z: f64, line: usize) -> Result<UnitPoint> {
    UnitPoint::try_new(x, y, z).map_err(|e| Error::Validation {
        line,
        msg: e.to_string(),
    })
}

/// Reads a configuration from `path`, normalizing points within `1e-6` of
/// the unit sphere and rejecting anything further off with the offending
/// line (CSV) or element index (JSON).
pub fn load_external(path: &Path, format: ExternalFormat) -> Result<Configuration> {
    let text = std::fs::read_to_string(path)?;
    let mut points = Vec::new();
    match format {
        ExternalFormat::Csv => {
            for (idx, raw) in text.lines().enumerate() {
                let line = idx + 1;
                let row = raw.trim();
                if row.is_empty() || row.starts_with('#') {
                    continue;
                }
                let fields: Vec<&str> = row.split(',').map(str::trim).collect();
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected 3 fields, got {}", fields.len()),
                    });
                }
                let mut coords = [0.0; 3];
                for (slot, field) in coords.iter_mut().zip(&fields) {
                    *slot = field.parse().map_err(|e| Error::Parse {
                        line,
                        msg: format!("bad number {field:?}: {e}"),
                    })?;
                }
                points.push(validated(coords[0], coords[1], coords[2], line)?);
            }
        }
        ExternalFormat::Json => {
            let rows: Vec<[f64; 3]> = serde_json::from_str(&text).map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            })?;
            for (idx, [x, y, z]) in rows.into_iter().enumerate() {
                points.push(validated(x, y, z, idx + 1)?);
            }
        }
    }
    if points.len() < 2 {
        return Err(Error::InvalidCardinality(format!(
            "external file holds {} points, need at least 2",
            points.len()
        )));
    }
    let n = points.len();
    Ok(Configuration::new(points, Family::External).with_param("n", n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(name: &str, contents: &str) -> std::path::PathBuf {
        let path = std::env::temp_dir().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn csv_basis_vectors() {
        let p = write_tmp("ext_basis.csv", "1,0,0\n0,1,0\n0,0,1\n");
        let c = load_external(&p, ExternalFormat::Csv).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.points[2].z, 1.0);
    }

    #[test]
    fn csv_zero_row_is_validation_error() {
        let p = write_tmp("ext_zero.csv", "1,0,0\n0,0,0\n");
        match load_external(&p, ExternalFormat::Csv) {
            Err(Error::Validation { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn csv_bad_field_count_reports_line() {
        let p = write_tmp("ext_short.csv", "1,0,0\n0,1\n");
        match load_external(&p, ExternalFormat::Csv) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn csv_small_perturbation_renormalized() {
        let p = write_tmp("ext_perturb.csv", "1.0000001,0,0\n0,1,0\n");
        let c = load_external(&p, ExternalFormat::Csv).unwrap();
        assert!(c.points[0].norm_err() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let p = write_tmp("ext.json", "[[1,0,0],[0,-1,0]]");
        let c = load_external(&p, ExternalFormat::Json).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.points[1].y, -1.0);
    }

    #[test]
    fn missing_file_is_io_error() {
        let p = std::path::Path::new("/nonexistent/points.csv");
        assert!(matches!(
            load_external(p, ExternalFormat::Csv),
            Err(Error::Io(_))
        ));
    }
}
