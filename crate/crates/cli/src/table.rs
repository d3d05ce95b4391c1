use anyhow::Result;
use sha2::{Digest, Sha256};

use crate::file::ScenarioFile;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// First 16 hex digits of the SHA-256 of the canonical scenario text.
pub fn scenario_hash(file: &ScenarioFile) -> String {
    let digest = Sha256::digest(file.canonical().as_bytes());
    hex::encode(digest)[..16].to_string()
}

/// A result table. `scenario_hash` and `seed` are appended to every row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub study: &'static str,
    pub scenario_hash: String,
    pub seed: u64,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(study: &'static str, file: &ScenarioFile, columns: Vec<&'static str>) -> Self {
        Table {
            study,
            scenario_hash: scenario_hash(file),
            seed: file.estimator.seed,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = format!(
            "# scenario_hash={} seed={} version={} study={}\n",
            self.scenario_hash, self.seed, VERSION, self.study
        )
        .into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut out);
            let mut header: Vec<&str> = self.columns.clone();
            header.extend(["scenario_hash", "seed"]);
            w.write_record(&header)?;
            let seed = self.seed.to_string();
            for row in &self.rows {
                w.write_record(
                    row.iter()
                        .map(String::as_str)
                        .chain([self.scenario_hash.as_str(), seed.as_str()]),
                )?;
            }
            w.flush()?;
        }
        Ok(String::from_utf8(out)?)
    }
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x}")
}
