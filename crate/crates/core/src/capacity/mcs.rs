//! SINR to spectral efficiency lookup tables.
//!
//! The 4G table is the LTE CQI 1-15 efficiency ladder; the 3G table is an
//! HSPA+ ladder topping out at 4.2 bps/Hz. Both are single-stream values and
//! are multiplied by the MIMO gain at lookup time. They ship as CSV files in
//! `data/` and can be replaced at runtime with [`McsTable::load`].

use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::model::Generation;

/// 2x2 MIMO doubles the single-stream efficiency.
pub const DEFAULT_MIMO_GAIN: f64 = 2.0;

const MCS_4G: &str = include_str!("../../data/mcs_4g.csv");
const MCS_3G: &str = include_str!("../../data/mcs_3g.csv");

/// A step function from SINR threshold (dB) to spectral efficiency (bps/Hz).
#[derive(Debug, Clone, PartialEq)]
pub struct McsTable {
    rows: Vec<(f64, f64)>,
}

impl McsTable {
    pub fn new(mut rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::validation("MCS table is empty"));
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        if rows.iter().any(|&(s, e)| !s.is_finite() || !(e >= 0.0)) {
            return Err(Error::validation(
                "MCS table has a non-finite threshold or negative efficiency",
            ));
        }
        if rows.windows(2).any(|w| w[1].1 < w[0].1) {
            return Err(Error::validation("MCS efficiencies must rise with SINR"));
        }
        Ok(McsTable { rows })
    }

    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec?;
            let field = |col: usize| -> Result<f64> {
                rec.get(col)
                    .unwrap_or("")
                    .parse()
                    .map_err(|e: std::num::ParseFloatError| Error::Parse {
                        file: name.to_owned(),
                        row: i + 1,
                        column: ["sinr_db", "spectral_efficiency_bps_hz"][col].into(),
                        message: e.to_string(),
                    })
            };
            rows.push((field(0)?, field(1)?));
        }
        McsTable::new(rows)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        McsTable::parse(&path.display().to_string(), &text)
    }

    /// The built-in table for `generation`.
    pub fn builtin(generation: Generation) -> &'static McsTable {
        static G3: OnceLock<McsTable> = OnceLock::new();
        static G4: OnceLock<McsTable> = OnceLock::new();
        match generation {
            Generation::G3 => {
                G3.get_or_init(|| McsTable::parse("mcs_3g.csv", MCS_3G).expect("bundled table"))
            }
            Generation::G4 => {
                G4.get_or_init(|| McsTable::parse("mcs_4g.csv", MCS_4G).expect("bundled table"))
            }
        }
    }

    /// Single-stream efficiency; zero below the lowest threshold.
    pub fn lookup(&self, sinr_db: f64) -> f64 {
        match self
            .rows
            .partition_point(|&(threshold, _)| threshold <= sinr_db)
        {
            0 => 0.0,
            n => self.rows[n - 1].1,
        }
    }

    pub fn max_efficiency(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.1)
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }
}

/// Spectral efficiency in bps/Hz for `generation` with 2x2 MIMO.
pub fn sinr_to_spectral_efficiency(sinr_db: f64, generation: Generation) -> f64 {
    McsTable::builtin(generation).lookup(sinr_db) * DEFAULT_MIMO_GAIN
}
