//! Result tables and their CSV form.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One axis point. Columns of a disabled engine stay empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub axis: f64,
    pub value_analytic: Option<f64>,
    pub value_mc: Option<f64>,
    pub mc_half_width: Option<f64>,
    pub n_drops: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<Row>,
}

impl ResultTable {
    pub fn write_to<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        if self.rows.is_empty() {
            w.write_record(["axis", "value_analytic", "value_mc", "mc_half_width", "n_drops", "seed"])?;
        }
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let rows = r.deserialize().collect::<std::result::Result<Vec<Row>, _>>()?;
        Ok(Self { rows })
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    /// Writes the table, creating parent directories.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        self.write_to(File::create(path)?)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        Self::read_from(File::open(path)?)
    }
}
