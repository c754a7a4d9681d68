use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{decile_aggregate, savings_summary, DecileRow, RegionResult, RunOutput, SavingsRow};
use crate::error::{Error, Result};
use crate::model::{Geotype, ScenarioName, Strategy, Technology};

pub const SAVINGS_FILE_NAME: &str = "savings_summary.csv";

/// One line of a results file. Money is whole US dollars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub region_id: String,
    pub population: f64,
    pub area_km2: f64,
    pub geotype: Geotype,
    pub existing_tech: Technology,
    pub existing_sites_mno: u64,
    pub required_sites: u64,
    pub upgraded_sites: u64,
    pub reused_sites: u64,
    pub new_sites: u64,
    pub capacity_shortfall: bool,
    pub peak_demand_mbps_km2: f64,
    pub revenue_npv: i64,
    pub network: i64,
    pub admin: i64,
    pub spectrum: i64,
    pub tax: i64,
    pub profit: i64,
    pub private_cost: i64,
    pub cross_subsidy_in: i64,
    pub cross_subsidy_out: i64,
    pub subsidy: i64,
    pub government_cost: i64,
    pub viable: bool,
}

fn usd(v: f64) -> i64 {
    v.round() as i64
}

impl ResultRow {
    pub fn from_result(r: &RegionResult) -> Self {
        let a = &r.assessment;
        let p = &r.plan;
        ResultRow {
            region_id: r.region_id.clone(),
            population: r.population,
            area_km2: r.area_km2,
            geotype: p.geotype,
            existing_tech: p.existing_tech,
            existing_sites_mno: p.existing_sites_mno,
            required_sites: p.required_sites,
            upgraded_sites: p.upgraded_sites,
            reused_sites: p.reused_sites,
            new_sites: p.new_sites,
            capacity_shortfall: p.capacity_shortfall,
            peak_demand_mbps_km2: r.peak_demand,
            revenue_npv: usd(a.revenue_npv),
            network: usd(a.network),
            admin: usd(a.admin),
            spectrum: usd(a.spectrum),
            tax: usd(a.tax),
            profit: usd(a.profit),
            private_cost: usd(a.private_cost),
            cross_subsidy_in: usd(a.cross_subsidy_in),
            cross_subsidy_out: usd(a.cross_subsidy_out),
            subsidy: usd(a.subsidy),
            government_cost: usd(a.government_cost),
            viable: a.viable,
        }
    }

    pub fn population_density(&self) -> f64 {
        if self.area_km2 > 0.0 {
            self.population / self.area_km2
        } else {
            0.0
        }
    }
}

pub fn results_file_name(scenario: ScenarioName, strategy: &Strategy) -> String {
    format!("results_{scenario}_{}.csv", strategy.key())
}

pub fn deciles_file_name(scenario: ScenarioName, strategy: &Strategy) -> String {
    format!("deciles_{scenario}_{}.csv", strategy.key())
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Config(format!("{}: {other:?}", path.display())),
    }
}

pub fn write_results(path: impl AsRef<Path>, rows: &[ResultRow]) -> Result<()> {
    write_csv(path.as_ref(), rows)
}

pub fn write_deciles(path: impl AsRef<Path>, rows: &[DecileRow]) -> Result<()> {
    write_csv(path.as_ref(), rows)
}

pub fn write_savings(path: impl AsRef<Path>, rows: &[SavingsRow]) -> Result<()> {
    write_csv(path.as_ref(), rows)
}

pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
    let mut rows = Vec::new();
    for (i, row) in reader.deserialize().enumerate() {
        rows.push(row.map_err(|e: csv::Error| Error::Parse {
            file: path.display().to_string(),
            row: i + 1,
            column: "*".into(),
            message: e.to_string(),
        })?);
    }
    Ok(rows)
}

/// Every `results_<scenario>_<strategy>.csv` in `dir`, sorted by file name.
pub fn read_results_dir(
    dir: impl AsRef<Path>,
) -> Result<Vec<(ScenarioName, Strategy, Vec<ResultRow>)>> {
    let dir = dir.as_ref();
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("results_") && n.ends_with(".csv"))
        })
        .collect();
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default();
        let stem = &name["results_".len()..name.len() - ".csv".len()];
        let (scenario, key) = stem
            .split_once('_')
            .ok_or_else(|| Error::validation(format!("cannot parse results file name `{name}`")))?;
        out.push((
            scenario.parse()?,
            Strategy::parse_key(key)?,
            read_results(&path)?,
        ));
    }
    Ok(out)
}

/// Results and decile files per run, plus the savings summary.
pub fn write_run_outputs(
    dir: impl AsRef<Path>,
    runs: &[(ScenarioName, Strategy, Vec<ResultRow>)],
) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (scenario, strategy, rows) in runs {
        write_results(dir.join(results_file_name(*scenario, strategy)), rows)?;
        write_deciles(
            dir.join(deciles_file_name(*scenario, strategy)),
            &decile_aggregate(rows),
        )?;
    }
    write_savings(dir.join(SAVINGS_FILE_NAME), &savings_summary(runs))
}

impl RunOutput {
    pub fn keyed_rows(&self) -> (ScenarioName, Strategy, Vec<ResultRow>) {
        (self.scenario, self.strategy, self.rows())
    }
}
