use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::args::Format;

/// Parameters and provenance written next to every set of tables.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, P: Serialize> {
    pub command: &'a str,
    pub version: &'a str,
    pub format: Format,
    pub parameters: &'a P,
    pub outputs: Vec<String>,
    pub duration_seconds: f64,
}

/// Writes tables into one directory and remembers their names.
pub struct Sink {
    dir: PathBuf,
    format: Format,
    written: Vec<String>,
}

impl Sink {
    pub fn new(dir: &Path, format: Format) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            format,
            written: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes `rows` as `<stem>.csv` (header line plus one record per row)
    /// or `<stem>.json` (array of objects).
    pub fn table<R: Serialize>(&mut self, stem: &str, rows: &[R]) -> Result<(), String> {
        let name = match self.format {
            Format::Csv => format!("{stem}.csv"),
            Format::Json => format!("{stem}.json"),
        };
        let path = self.dir.join(&name);
        let fail = |e: &dyn std::fmt::Display| format!("writing {}: {e}", path.display());
        match self.format {
            Format::Csv => {
                let mut w = csv::Writer::from_path(&path).map_err(|e| fail(&e))?;
                for row in rows {
                    w.serialize(row).map_err(|e| fail(&e))?;
                }
                w.flush().map_err(|e| fail(&e))?;
            }
            Format::Json => {
                let mut w = BufWriter::new(File::create(&path).map_err(|e| fail(&e))?);
                serde_json::to_writer_pretty(&mut w, rows).map_err(|e| fail(&e))?;
                w.write_all(b"\n")
                    .and_then(|_| w.flush())
                    .map_err(|e| fail(&e))?;
            }
        }
        self.written.push(name);
        Ok(())
    }

    pub fn manifest<P: Serialize>(
        self,
        command: &str,
        parameters: &P,
        duration_seconds: f64,
    ) -> Result<(), String> {
        let manifest = RunManifest {
            command,
            version: env!("CARGO_PKG_VERSION"),
            format: self.format,
            parameters,
            outputs: self.written,
            duration_seconds,
        };
        let path = self.dir.join(format!("{command}.manifest.json"));
        let text = serde_json::to_string_pretty(&manifest).map_err(|e| e.to_string())?;
        std::fs::write(&path, text + "\n").map_err(|e| format!("writing {}: {e}", path.display()))
    }
}
