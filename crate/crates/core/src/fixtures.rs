//! The bundled synthetic country: six regions from a dense capital down to a
//! near-empty rural south. Used by the examples, the tests and as a template
//! for real input files.

use std::collections::HashMap;

use crate::model::{
    parse_config, parse_coverage, parse_fiber_pops, parse_regions, Config, FiberPop, Region,
    Technology,
};

pub const CONFIG_TOML: &str = include_str!("../data/synthetic/config.toml");
pub const REGIONS_CSV: &str = include_str!("../data/synthetic/regions.csv");
pub const FIBER_POPS_CSV: &str = include_str!("../data/synthetic/fiber_pops.csv");
pub const COVERAGE_CSV: &str = include_str!("../data/synthetic/coverage.csv");

pub fn synthetic_config() -> Config {
    parse_config(CONFIG_TOML).expect("bundled config is valid")
}

pub fn synthetic_regions() -> Vec<Region> {
    parse_regions("regions.csv", REGIONS_CSV).expect("bundled regions are valid")
}

pub fn synthetic_fiber_pops() -> Vec<FiberPop> {
    parse_fiber_pops("fiber_pops.csv", FIBER_POPS_CSV).expect("bundled fiber POPs are valid")
}

pub fn synthetic_coverage() -> HashMap<String, Technology> {
    parse_coverage("coverage.csv", COVERAGE_CSV).expect("bundled coverage is valid")
}

/// Path of the bundled data directory in the source tree.
pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join("synthetic")
}
