use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::config::Format;
use crate::error::CliError;

/// Rows for CSV output; cells are already formatted.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// What a command produced, independent of the output format.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub summary: String,
    pub json: Value,
    pub table: Table,
}

fn render(outcome: &Outcome, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(&outcome.json)?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&outcome.table.header)?;
            for row in &outcome.table.rows {
                w.write_record(row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}

/// Writes to `path` through a temporary file in the same directory, so a
/// reader never sees a partial file. Without a path, writes to stdout.
pub fn emit(outcome: &Outcome, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let bytes = render(outcome, format)?;
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(&bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Outcome {
        Outcome {
            pass: true,
            summary: String::new(),
            json: json!([{"a": 1}]),
            table: Table {
                header: vec!["a", "b"],
                rows: vec![vec!["1".into(), "x,y".into()]],
            },
        }
    }

    #[test]
    fn csv_quotes_cells() {
        let bytes = render(&sample(), Format::Csv).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), "a,b\n1,\"x,y\"\n");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        std::fs::write(&path, "stale").unwrap();
        emit(&sample(), Format::Json, Some(&path)).unwrap();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v, json!([{"a": 1}]));
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
