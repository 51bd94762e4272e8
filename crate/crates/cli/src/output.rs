//! Deterministic CSV emission: 17 significant digits, LF line endings,
//! atomic writes (temp file + rename).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use pointwave::signal::format_float;

use crate::error::CliError;

pub struct CsvWriter {
    dir: PathBuf,
}

impl CsvWriter {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// Writes one CSV file atomically: header row, then one row per record.
    pub fn write(
        &self,
        name: &str,
        header: &str,
        rows: impl Iterator<Item = Vec<f64>>,
    ) -> Result<PathBuf, CliError> {
        let final_path = self.path(name);
        let tmp_path = self.dir.join(format!("{name}.tmp"));
        {
            let mut out = std::io::BufWriter::new(fs::File::create(&tmp_path)?);
            writeln!(out, "{header}")?;
            for row in rows {
                let line: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
                writeln!(out, "{}", line.join(","))?;
            }
            out.flush()?;
        }
        fs::rename(&tmp_path, &final_path)?;
        Ok(final_path)
    }
}

/// Stable file-name fragment for a snapshot time (shortest f64 round-trip).
pub fn time_tag(t: f64) -> String {
    format!("{t}")
}
