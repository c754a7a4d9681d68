//! Site density to capacity lookup tables.
//!
//! For every generation and radio environment, a grid of site densities is
//! simulated with [`simulate_sinr`]; each SINR sample is mapped to a spectral
//! efficiency through the generation's MCS table and averaged. Area capacity
//! then follows from the operator's spectrum holdings:
//!
//! ```text
//! capacity (Mbps/km²) = Σ_bands mean_SE(band) · bandwidth(band) · sectors · density
//! ```
//!
//! Monte Carlo noise can make a table dip locally, so each table is passed
//! through an isotonic (pool-adjacent-violators) fit before use.

mod mcs;
mod propagation;
mod sinr;

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CountryParams, Generation, Geotype};

pub use mcs::{sinr_to_spectral_efficiency, McsTable, DEFAULT_MIMO_GAIN};
pub use propagation::{median_path_loss, path_loss, MIN_DISTANCE_M};
pub use sinr::{hex_layout, inter_site_distance_m, simulate_sinr, snr_db};

/// File written by [`CapacityLut::save`] inside a LUT directory.
pub const LUT_FILE_NAME: &str = "capacity_lut.csv";
pub const LUT_HEADER: &str =
    "environment,generation,density_sites_km2,mean_se_bps_hz,capacity_mbps_km2";

pub const MIN_GRID_DENSITY: f64 = 0.0005;
pub const MAX_GRID_DENSITY: f64 = 2.0;
pub const GRID_POINTS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Environment {
    Urban,
    Rural,
}

impl Environment {
    pub const ALL: [Environment; 2] = [Environment::Urban, Environment::Rural];

    pub fn as_str(self) -> &'static str {
        match self {
            Environment::Urban => "urban",
            Environment::Rural => "rural",
        }
    }

    /// Suburban areas share the urban propagation table.
    pub fn for_geotype(geotype: Geotype) -> Self {
        match geotype {
            Geotype::Urban | Geotype::Suburban => Environment::Urban,
            Geotype::Rural => Environment::Rural,
        }
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Environment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "urban" => Ok(Environment::Urban),
            "rural" => Ok(Environment::Rural),
            other => Err(Error::validation(format!("unknown environment `{other}`"))),
        }
    }
}

/// Radio simulation parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SimParams {
    pub tx_height_m: f64,
    pub rx_height_m: f64,
    /// Per sector, over a 10 MHz carrier.
    pub tx_power_dbm: f64,
    pub antenna_gain_dbi: f64,
    pub sectors_per_site: u32,
    pub mimo_gain: f64,
    pub shadow_sigma_urban_db: f64,
    pub shadow_sigma_rural_db: f64,
    pub noise_figure_db: f64,
    /// Rings of interfering sites around the serving site.
    pub interference_rings: u32,
    /// User drops per simulated cell.
    pub iterations: u32,
    pub seed: u64,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            tx_height_m: 30.0,
            rx_height_m: 1.5,
            tx_power_dbm: 40.0,
            antenna_gain_dbi: 15.0,
            sectors_per_site: 3,
            mimo_gain: DEFAULT_MIMO_GAIN,
            shadow_sigma_urban_db: 8.0,
            shadow_sigma_rural_db: 6.0,
            noise_figure_db: 5.0,
            interference_rings: 2,
            iterations: 1000,
            seed: 42,
        }
    }
}

impl SimParams {
    pub fn shadow_sigma_db(&self, environment: Environment) -> f64 {
        match environment {
            Environment::Urban => self.shadow_sigma_urban_db,
            Environment::Rural => self.shadow_sigma_rural_db,
        }
    }
}

/// The fixed log-spaced density grid in sites/km².
pub fn density_grid() -> Vec<f64> {
    let ratio = (MAX_GRID_DENSITY / MIN_GRID_DENSITY).ln();
    let mut grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| MIN_GRID_DENSITY * (ratio * i as f64 / (GRID_POINTS - 1) as f64).exp())
        .collect();
    grid[0] = MIN_GRID_DENSITY;
    grid[GRID_POINTS - 1] = MAX_GRID_DENSITY;
    grid
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LutEntry {
    pub environment: Environment,
    pub generation: Generation,
    pub site_density: f64,
    /// Bandwidth-weighted mean over the operator's bands, bps/Hz per sector.
    pub mean_spectral_efficiency: f64,
    pub capacity_density: f64,
}

/// One monotone density → capacity curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityTable {
    pub environment: Environment,
    pub generation: Generation,
    /// Sorted by density.
    pub entries: Vec<LutEntry>,
}

/// Result of inverting a capacity table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteDensity {
    pub density: f64,
    /// Demand exceeds the densest grid point.
    pub capacity_shortfall: bool,
}

impl CapacityTable {
    pub fn max_capacity(&self) -> f64 {
        self.entries.last().map_or(0.0, |e| e.capacity_density)
    }

    /// Capacity at the densest grid point not above `density`.
    pub fn capacity_at(&self, density: f64) -> f64 {
        match self.entries.partition_point(|e| e.site_density <= density) {
            0 => 0.0,
            n => self.entries[n - 1].capacity_density,
        }
    }
}

/// Smallest grid density whose capacity covers `demand` (Mbps/km²).
pub fn required_site_density(demand: f64, table: &CapacityTable) -> SiteDensity {
    let first = table
        .entries
        .first()
        .expect("capacity table is never empty");
    if let Some(e) = table.entries.iter().find(|e| e.capacity_density >= demand) {
        return SiteDensity {
            density: e.site_density.max(first.site_density),
            capacity_shortfall: false,
        };
    }
    SiteDensity {
        density: table
            .entries
            .last()
            .map_or(first.site_density, |e| e.site_density),
        capacity_shortfall: true,
    }
}

/// All generated tables, keyed by (generation, environment).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CapacityLut {
    tables: BTreeMap<(Generation, Environment), CapacityTable>,
}

impl CapacityLut {
    pub fn from_tables(tables: impl IntoIterator<Item = CapacityTable>) -> Self {
        CapacityLut {
            tables: tables
                .into_iter()
                .map(|t| ((t.generation, t.environment), t))
                .collect(),
        }
    }

    pub fn table(
        &self,
        generation: Generation,
        environment: Environment,
    ) -> Result<&CapacityTable> {
        self.tables
            .get(&(generation, environment))
            .ok_or(Error::MissingLut {
                generation,
                environment,
            })
    }

    pub fn tables(&self) -> impl Iterator<Item = &CapacityTable> {
        self.tables.values()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(LUT_HEADER);
        out.push('\n');
        for table in self.tables.values() {
            for e in &table.entries {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    e.environment,
                    e.generation,
                    e.site_density,
                    e.mean_spectral_efficiency,
                    e.capacity_density
                )
                .expect("writing to a String cannot fail");
            }
        }
        out
    }

    pub fn from_csv(name: &str, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        if header.join(",") != LUT_HEADER {
            return Err(Error::Parse {
                file: name.into(),
                row: 0,
                column: "header".into(),
                message: format!("expected `{LUT_HEADER}`"),
            });
        }
        let columns: Vec<&str> = LUT_HEADER.split(',').collect();
        let mut tables: BTreeMap<(Generation, Environment), Vec<LutEntry>> = BTreeMap::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec?;
            let bad = |col: usize, message: String| Error::Parse {
                file: name.into(),
                row: i + 1,
                column: columns[col].into(),
                message,
            };
            let num = |col: usize| -> Result<f64> {
                rec.get(col)
                    .unwrap_or("")
                    .parse::<f64>()
                    .map_err(|e| bad(col, e.to_string()))
            };
            let environment: Environment = rec
                .get(0)
                .unwrap_or("")
                .parse()
                .map_err(|e: Error| bad(0, e.to_string()))?;
            let generation: Generation = rec
                .get(1)
                .unwrap_or("")
                .parse()
                .map_err(|e: Error| bad(1, e.to_string()))?;
            tables
                .entry((generation, environment))
                .or_default()
                .push(LutEntry {
                    environment,
                    generation,
                    site_density: num(2)?,
                    mean_spectral_efficiency: num(3)?,
                    capacity_density: num(4)?,
                });
        }
        let mut out = Vec::new();
        for ((generation, environment), mut entries) in tables {
            entries.sort_by(|a, b| a.site_density.total_cmp(&b.site_density));
            if entries
                .windows(2)
                .any(|w| w[1].capacity_density < w[0].capacity_density)
            {
                return Err(Error::validation(format!(
                    "{name}: {generation}/{environment} capacity is not monotone in density"
                )));
            }
            out.push(CapacityTable {
                environment,
                generation,
                entries,
            });
        }
        Ok(CapacityLut::from_tables(out))
    }

    /// Writes `capacity_lut.csv` into `dir`, creating it if needed.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(LUT_FILE_NAME);
        fs::write(&path, self.to_csv()).map_err(|e| Error::io(&path, e))
    }

    /// Reads `capacity_lut.csv` from `dir`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let path = dir.as_ref().join(LUT_FILE_NAME);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        CapacityLut::from_csv(&path.display().to_string(), &text)
    }
}

/// Pool-adjacent-violators fit: the closest non-decreasing sequence in least squares.
pub fn isotonic_non_decreasing(values: &[f64]) -> Vec<f64> {
    // (block mean, block length)
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (m2, n2) = blocks[blocks.len() - 1];
            let (m1, n1) = blocks[blocks.len() - 2];
            if m1 <= m2 {
                break;
            }
            blocks.truncate(blocks.len() - 2);
            let n = n1 + n2;
            blocks.push(((m1 * n1 as f64 + m2 * n2 as f64) / n as f64, n));
        }
    }
    blocks
        .into_iter()
        .flat_map(|(m, n)| std::iter::repeat_n(m, n))
        .collect()
}

/// Builds capacity tables for both generations and environments from the
/// country's spectrum holdings.
pub fn generate_lut(params: &CountryParams, sim: &SimParams) -> Result<CapacityLut> {
    for generation in Generation::ALL {
        if params.spectrum.bands(generation).is_empty() {
            return Err(Error::EmptyPortfolio(generation));
        }
    }
    let grid = density_grid();

    // One simulation per (environment, density, carrier frequency); both
    // generations read from the same samples.
    let mut frequencies: Vec<f64> = Generation::ALL
        .iter()
        .flat_map(|&g| params.spectrum.bands(g).iter().map(|b| b.frequency_mhz))
        .collect();
    frequencies.sort_by(f64::total_cmp);
    frequencies.dedup();

    let mut cells = Vec::with_capacity(2 * grid.len() * frequencies.len());
    for env in Environment::ALL {
        for d in 0..grid.len() {
            for &f in &frequencies {
                cells.push((env, d, f));
            }
        }
    }

    let mean_se: HashMap<(Environment, usize, u64), [f64; 2]> = cells
        .par_iter()
        .map(|&(env, d, f)| {
            let samples = simulate_sinr(grid[d], f, env, sim);
            let mut out = [0.0; 2];
            for (slot, generation) in Generation::ALL.iter().enumerate() {
                let table = McsTable::builtin(*generation);
                let total: f64 = samples
                    .iter()
                    .map(|&s| table.lookup(s) * sim.mimo_gain)
                    .sum();
                out[slot] = total / samples.len().max(1) as f64;
            }
            ((env, d, f.to_bits()), out)
        })
        .collect();

    let sectors = f64::from(sim.sectors_per_site.max(1));
    let mut tables = Vec::new();
    for (slot, &generation) in Generation::ALL.iter().enumerate() {
        let bands = params.spectrum.bands(generation);
        let total_bw: f64 = bands.iter().map(|b| b.bandwidth_mhz).sum();
        for env in Environment::ALL {
            let raw: Vec<f64> = grid
                .iter()
                .enumerate()
                .map(|(d, &density)| {
                    bands
                        .iter()
                        .map(|b| {
                            mean_se[&(env, d, b.frequency_mhz.to_bits())][slot] * b.bandwidth_mhz
                        })
                        .sum::<f64>()
                        * sectors
                        * density
                })
                .collect();
            let fitted = isotonic_non_decreasing(&raw);
            let entries = grid
                .iter()
                .zip(fitted)
                .map(|(&density, capacity)| LutEntry {
                    environment: env,
                    generation,
                    site_density: density,
                    mean_spectral_efficiency: if total_bw > 0.0 {
                        capacity / (total_bw * sectors * density)
                    } else {
                        0.0
                    },
                    capacity_density: capacity,
                })
                .collect();
            tables.push(CapacityTable {
                environment: env,
                generation,
                entries,
            });
        }
    }
    Ok(CapacityLut::from_tables(tables))
}
