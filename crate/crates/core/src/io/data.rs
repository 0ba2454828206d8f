use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io::report::format_number;
use crate::sample::SemiSupervisedDataset;

/// Rows of a `target,source` CSV file. An empty target cell marks a
/// source-only observation.
#[derive(Debug, Clone, PartialEq)]
pub struct DataFile {
    pub headers: Vec<String>,
    pub rows: Vec<(Option<f64>, f64)>,
    pub path: PathBuf,
}

fn parse_cell(cell: &str, line: usize, column: &str) -> Result<f64> {
    let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {column} value `{cell}`"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite {column} value `{cell}`"),
        });
    }
    Ok(value)
}

impl DataFile {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_path(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let headers: Vec<String> = reader
            .headers()
            .map_err(|e| Error::Parse {
                line: 1,
                message: e.to_string(),
            })?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        if headers != ["target", "source"] {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "expected header `target,source`, got `{}`",
                    headers.join(",")
                ),
            });
        }

        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            if record.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 2 fields, got {}", record.len()),
                });
            }
            let target = match record[0].trim() {
                "" => None,
                cell => Some(parse_cell(cell, line, "target")?),
            };
            let source = parse_cell(&record[1], line, "source")?;
            rows.push((target, source));
        }
        Ok(Self {
            headers,
            rows,
            path: path.to_path_buf(),
        })
    }

    pub fn coupled_rows(&self) -> usize {
        self.rows.iter().filter(|(t, _)| t.is_some()).count()
    }

    /// Coupled rows in file order, then the unpaired source values in file order.
    pub fn to_dataset(&self) -> Result<SemiSupervisedDataset> {
        if self.coupled_rows() < 3 {
            return Err(Error::InvalidDataset(format!(
                "{}: {} coupled rows, at least 3 required",
                self.path.display(),
                self.coupled_rows()
            )));
        }
        let mut target = Vec::new();
        let mut source = Vec::new();
        let mut extra = Vec::new();
        for &(t, s) in &self.rows {
            match t {
                Some(t) => {
                    target.push(t);
                    source.push(s);
                }
                None => extra.push(s),
            }
        }
        SemiSupervisedDataset::new(target, source, extra)
    }
}

/// Reads a `target,source` CSV into a dataset.
pub fn load_semi_supervised_csv(path: impl AsRef<Path>) -> Result<SemiSupervisedDataset> {
    DataFile::read(path)?.to_dataset()
}

/// Writes coupled pairs followed by source-only rows, with round-trip exact numbers.
pub fn write_semi_supervised_csv(
    dataset: &SemiSupervisedDataset,
    path: impl AsRef<Path>,
) -> Result<()> {
    let mut out = String::from("target,source\n");
    for (t, s) in dataset.paired_target().iter().zip(dataset.paired_source()) {
        out.push_str(&format!("{},{}\n", format_number(*t), format_number(*s)));
    }
    for s in dataset.extra_source() {
        out.push_str(&format!(",{}\n", format_number(*s)));
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(contents: &str) -> tempfile::NamedTempFile {
        let file = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(file.path(), contents).unwrap();
        file
    }

    #[test]
    fn reads_coupled_and_extra_rows() {
        let f = write("target,source\n1.0,2.0\n2.0,3.0\n4.0,5.0\n,9.0\n");
        let ds = load_semi_supervised_csv(f.path()).unwrap();
        assert_eq!((ds.n(), ds.m()), (3, 1));
        assert_eq!(ds.paired_target(), &[1.0, 2.0, 4.0]);
        assert_eq!(ds.extra_source(), &[9.0]);
    }

    #[test]
    fn nan_cell_names_the_line() {
        let f = write("target,source\n1.0,2.0\nNaN,3.0\n4.0,5.0\n");
        match load_semi_supervised_csv(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_rows_rejected() {
        let f = write("target,source\n1.0,2.0\n2.0,abc\n");
        assert!(matches!(
            load_semi_supervised_csv(f.path()),
            Err(Error::Parse { line: 3, .. })
        ));
        let f = write("target,source\n1.0,2.0,3.0\n");
        assert!(matches!(
            load_semi_supervised_csv(f.path()),
            Err(Error::Parse { line: 2, .. })
        ));
        let f = write("x,y\n1.0,2.0\n");
        assert!(matches!(
            load_semi_supervised_csv(f.path()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn too_few_coupled_rows() {
        let f = write("target,source\n1.0,2.0\n2.0,3.0\n,5.0\n");
        assert!(matches!(
            load_semi_supervised_csv(f.path()),
            Err(Error::InvalidDataset(_))
        ));
    }
}
