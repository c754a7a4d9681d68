//! Domain types shared by every stage of the pipeline.
//!
//! Everything here is immutable once loaded and validated; the demand, supply,
//! cost and assessment stages only ever borrow these values.

mod config;
mod regions;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use config::{load_config, parse_config, Config};
pub use regions::{
    load_coverage, load_fiber_pops, load_regions, parse_coverage, parse_fiber_pops, parse_regions,
    FiberPop,
};

/// First year of the assessment period. Discounting is relative to this year.
pub const BASE_YEAR: i32 = 2020;
/// Last year of the assessment period (inclusive).
pub const FINAL_YEAR: i32 = 2030;

/// Years of the assessment period, in order.
pub fn horizon() -> impl Iterator<Item = i32> + Clone {
    BASE_YEAR..=FINAL_YEAR
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeCoord {
    pub x: f64,
    pub y: f64,
}

impl NodeCoord {
    pub fn new(x: f64, y: f64) -> Self {
        NodeCoord { x, y }
    }
}

/// How node coordinates are interpreted when measuring link lengths.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordinateSystem {
    /// `x`, `y` in kilometres on a flat plane.
    #[default]
    PlanarKm,
    /// `x` = longitude, `y` = latitude, both in degrees.
    LonLat,
}

impl CoordinateSystem {
    /// Distance between two nodes in kilometres.
    pub fn distance_km(self, a: NodeCoord, b: NodeCoord) -> f64 {
        match self {
            CoordinateSystem::PlanarKm => (a.x - b.x).hypot(a.y - b.y),
            CoordinateSystem::LonLat => {
                const EARTH_RADIUS_KM: f64 = 6371.0088;
                let (lat1, lat2) = (a.y.to_radians(), b.y.to_radians());
                let dlat = lat2 - lat1;
                let dlon = (b.x - a.x).to_radians();
                let h = (dlat / 2.0).sin().powi(2)
                    + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
                2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
            }
        }
    }
}

/// The atomic spatial unit of the model.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub id: String,
    pub country: String,
    pub population: f64,
    pub area_km2: f64,
    /// Mean nightlight luminosity in digital numbers.
    pub mean_luminosity: f64,
    /// Measured total site count, all operators. `None` means estimate by rank allocation.
    pub existing_sites: Option<f64>,
    pub node: NodeCoord,
}

impl Region {
    pub fn population_density(&self) -> f64 {
        self.population / self.area_km2
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::validation(format!("region `{}`: {what}", self.id)));
        if self.id.is_empty() {
            return Err(Error::validation("region with empty id"));
        }
        if !(self.population >= 0.0 && self.population.is_finite()) {
            return fail("population must be a finite value >= 0");
        }
        if !(self.area_km2 > 0.0 && self.area_km2.is_finite()) {
            return fail("area must be > 0");
        }
        if !(self.mean_luminosity >= 0.0 && self.mean_luminosity.is_finite()) {
            return fail("luminosity must be >= 0");
        }
        if let Some(sites) = self.existing_sites {
            if !(sites >= 0.0 && sites.is_finite()) {
                return fail("existing_sites must be >= 0");
            }
        }
        if !(self.node.x.is_finite() && self.node.y.is_finite()) {
            return fail("node coordinates must be finite");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geotype {
    Urban,
    Suburban,
    Rural,
}

impl Geotype {
    pub const ALL: [Geotype; 3] = [Geotype::Urban, Geotype::Suburban, Geotype::Rural];

    pub fn as_str(self) -> &'static str {
        match self {
            Geotype::Urban => "urban",
            Geotype::Suburban => "suburban",
            Geotype::Rural => "rural",
        }
    }
}

impl fmt::Display for Geotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value that differs by settlement type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ByGeotype {
    pub urban: f64,
    pub suburban: f64,
    pub rural: f64,
}

impl ByGeotype {
    pub fn get(&self, geotype: Geotype) -> f64 {
        match geotype {
            Geotype::Urban => self.urban,
            Geotype::Suburban => self.suburban,
            Geotype::Rural => self.rural,
        }
    }

    fn values(&self) -> [f64; 3] {
        [self.urban, self.suburban, self.rural]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScenarioName {
    #[serde(rename = "low")]
    Low,
    #[serde(rename = "baseline")]
    Baseline,
    #[serde(rename = "high")]
    High,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 3] = [
        ScenarioName::Low,
        ScenarioName::Baseline,
        ScenarioName::High,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::Low => "low",
            ScenarioName::Baseline => "baseline",
            ScenarioName::High => "high",
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "low" => Ok(ScenarioName::Low),
            "baseline" => Ok(ScenarioName::Baseline),
            "high" => Ok(ScenarioName::High),
            other => Err(Error::validation(format!("unknown scenario `{other}`"))),
        }
    }
}

/// Adoption trajectories over the assessment period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: ScenarioName,
    pub years: Vec<i32>,
    /// Unique cell-phone subscriber penetration per year.
    pub penetration: Vec<f64>,
    pub smartphone_penetration: Vec<f64>,
}

impl Scenario {
    /// Builds a scenario with straight-line trajectories over the full horizon.
    pub fn linear(name: ScenarioName, pen: (f64, f64), smartphone: (f64, f64)) -> Self {
        let years: Vec<i32> = horizon().collect();
        let span = (FINAL_YEAR - BASE_YEAR) as f64;
        let ramp = |(a, b): (f64, f64)| -> Vec<f64> {
            years
                .iter()
                .map(|&y| a + (b - a) * f64::from(y - BASE_YEAR) / span)
                .collect()
        };
        Scenario {
            name,
            penetration: ramp(pen),
            smartphone_penetration: ramp(smartphone),
            years,
        }
    }

    /// Same adoption level in every year.
    pub fn constant(name: ScenarioName, pen: f64, smartphone: f64) -> Self {
        Scenario::linear(name, (pen, pen), (smartphone, smartphone))
    }

    fn index(&self, year: i32) -> Option<usize> {
        self.years.iter().position(|&y| y == year)
    }

    pub fn penetration(&self, year: i32) -> Option<f64> {
        self.index(year).map(|i| self.penetration[i])
    }

    pub fn smartphone_penetration(&self, year: i32) -> Option<f64> {
        self.index(year).map(|i| self.smartphone_penetration[i])
    }

    pub fn validate(&self) -> Result<()> {
        let name = self.name;
        let expected: Vec<i32> = horizon().collect();
        if self.years != expected {
            return Err(Error::validation(format!(
                "scenario `{name}`: years must be exactly {BASE_YEAR}..={FINAL_YEAR}"
            )));
        }
        for (label, series) in [
            ("penetration", &self.penetration),
            ("smartphone_penetration", &self.smartphone_penetration),
        ] {
            if series.len() != self.years.len() {
                return Err(Error::validation(format!(
                    "scenario `{name}`: {label} has {} values for {} years",
                    series.len(),
                    self.years.len()
                )));
            }
            if series.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::validation(format!(
                    "scenario `{name}`: {label} values must lie in [0, 1]"
                )));
            }
            if series.windows(2).any(|w| w[1] < w[0]) {
                return Err(Error::validation(format!(
                    "scenario `{name}`: {label} must be non-decreasing"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generation {
    #[serde(rename = "3G", alias = "3g")]
    G3,
    #[serde(rename = "4G", alias = "4g")]
    G4,
}

impl Generation {
    pub const ALL: [Generation; 2] = [Generation::G3, Generation::G4];

    pub fn as_str(self) -> &'static str {
        match self {
            Generation::G3 => "3G",
            Generation::G4 => "4G",
        }
    }
}

impl fmt::Display for Generation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Generation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "3G" => Ok(Generation::G3),
            "4G" => Ok(Generation::G4),
            other => Err(Error::validation(format!("unknown generation `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backhaul {
    Wireless,
    Fiber,
}

impl Backhaul {
    pub const ALL: [Backhaul; 2] = [Backhaul::Wireless, Backhaul::Fiber];

    pub fn as_str(self) -> &'static str {
        match self {
            Backhaul::Wireless => "wireless",
            Backhaul::Fiber => "fiber",
        }
    }
}

impl FromStr for Backhaul {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "wireless" | "w" => Ok(Backhaul::Wireless),
            "fiber" | "fibre" | "f" => Ok(Backhaul::Fiber),
            other => Err(Error::validation(format!("unknown backhaul `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sharing {
    Baseline,
    PassiveSite,
    PassiveBackhaul,
    Moran,
    Srn,
}

impl Sharing {
    pub const ALL: [Sharing; 5] = [
        Sharing::Baseline,
        Sharing::PassiveSite,
        Sharing::PassiveBackhaul,
        Sharing::Moran,
        Sharing::Srn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Sharing::Baseline => "baseline",
            Sharing::PassiveSite => "passive_site",
            Sharing::PassiveBackhaul => "passive_backhaul",
            Sharing::Moran => "moran",
            Sharing::Srn => "srn",
        }
    }
}

impl FromStr for Sharing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Sharing::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::validation(format!("unknown sharing mode `{s}`")))
    }
}

/// A (generation, backhaul, sharing) triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Strategy {
    pub generation: Generation,
    pub backhaul: Backhaul,
    pub sharing: Sharing,
}

impl Strategy {
    pub fn new(generation: Generation, backhaul: Backhaul, sharing: Sharing) -> Self {
        Strategy {
            generation,
            backhaul,
            sharing,
        }
    }

    /// Every combination, generation-major.
    pub fn grid() -> Vec<Strategy> {
        let mut out = Vec::with_capacity(20);
        for generation in Generation::ALL {
            for backhaul in Backhaul::ALL {
                for sharing in Sharing::ALL {
                    out.push(Strategy::new(generation, backhaul, sharing));
                }
            }
        }
        out
    }

    /// File-name friendly key, e.g. `4g_wireless_passive_site`.
    pub fn key(&self) -> String {
        format!(
            "{}_{}_{}",
            self.generation.as_str().to_ascii_lowercase(),
            self.backhaul.as_str(),
            self.sharing.as_str()
        )
    }

    pub fn parse_key(key: &str) -> Result<Self> {
        let mut parts = key.splitn(3, '_');
        match (parts.next(), parts.next(), parts.next()) {
            (Some(g), Some(b), Some(s)) => Ok(Strategy::new(g.parse()?, b.parse()?, s.parse()?)),
            _ => Err(Error::validation(format!("malformed strategy key `{key}`"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bh = match self.backhaul {
            Backhaul::Wireless => "W",
            Backhaul::Fiber => "F",
        };
        write!(f, "{} ({bh}) {}", self.generation, self.sharing.as_str())
    }
}

/// Parses the CLI form `G,B,SH`, e.g. `4G,wireless,moran`.
impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [g, b, sh] => Ok(Strategy::new(g.parse()?, b.parse()?, sh.parse()?)),
            _ => Err(Error::validation(format!(
                "strategy `{s}` must have the form GENERATION,BACKHAUL,SHARING"
            ))),
        }
    }
}

/// Existing radio technology at a region's sites.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Technology {
    #[serde(rename = "2G")]
    G2,
    #[serde(rename = "3G")]
    G3,
    #[serde(rename = "4G")]
    G4,
    #[default]
    #[serde(rename = "none")]
    None,
}

impl Technology {
    pub fn as_str(self) -> &'static str {
        match self {
            Technology::G2 => "2G",
            Technology::G3 => "3G",
            Technology::G4 => "4G",
            Technology::None => "none",
        }
    }

    pub fn matches(self, generation: Generation) -> bool {
        matches!(
            (self, generation),
            (Technology::G3, Generation::G3) | (Technology::G4, Generation::G4)
        )
    }
}

impl fmt::Display for Technology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Technology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "2G" => Ok(Technology::G2),
            "3G" => Ok(Technology::G3),
            "4G" => Ok(Technology::G4),
            "NONE" | "" => Ok(Technology::None),
            other => Err(Error::validation(format!(
                "unknown technology label `{other}`"
            ))),
        }
    }
}

/// A downlink carrier held by the modelled operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Band {
    pub frequency_mhz: f64,
    pub bandwidth_mhz: f64,
}

impl Band {
    pub fn new(frequency_mhz: f64, bandwidth_mhz: f64) -> Self {
        Band {
            frequency_mhz,
            bandwidth_mhz,
        }
    }

    /// Sub-1 GHz bands are coverage spectrum, the rest capacity spectrum.
    pub fn is_coverage(&self) -> bool {
        self.frequency_mhz < 1000.0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPortfolio {
    #[serde(rename = "3g", default)]
    pub g3: PortfolioSection,
    #[serde(rename = "4g", default)]
    pub g4: PortfolioSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortfolioSection {
    #[serde(default)]
    pub bands: Vec<Band>,
}

impl SpectrumPortfolio {
    pub fn new(g3: Vec<Band>, g4: Vec<Band>) -> Self {
        SpectrumPortfolio {
            g3: PortfolioSection { bands: g3 },
            g4: PortfolioSection { bands: g4 },
        }
    }

    pub fn bands(&self, generation: Generation) -> &[Band] {
        match generation {
            Generation::G3 => &self.g3.bands,
            Generation::G4 => &self.g4.bands,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArpuTiers {
    pub high: f64,
    pub medium: f64,
    pub low: f64,
}

/// Luminosity cut-offs in DN: `>= high` is the high tier, `>= medium` the medium tier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LuminosityThresholds {
    pub high: f64,
    pub medium: f64,
}

impl Default for LuminosityThresholds {
    fn default() -> Self {
        LuminosityThresholds {
            high: 5.0,
            medium: 1.0,
        }
    }
}

/// Population density cut-offs (persons/km²) for settlement classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeotypeThresholds {
    /// Strictly above this is urban.
    pub urban: f64,
    /// At or above this (and not urban) is suburban.
    pub suburban: f64,
}

impl Default for GeotypeThresholds {
    fn default() -> Self {
        GeotypeThresholds {
            urban: 1500.0,
            suburban: 300.0,
        }
    }
}

/// USD per MHz per person.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumPrices {
    pub coverage: f64,
    pub capacity: f64,
}

/// Share of existing sites by backhaul technology.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackhaulMix {
    pub fiber: f64,
    pub copper: f64,
    pub wireless: f64,
    pub satellite: f64,
}

impl Default for BackhaulMix {
    fn default() -> Self {
        BackhaulMix {
            fiber: 0.04,
            copper: 0.06,
            wireless: 0.84,
            satellite: 0.06,
        }
    }
}

impl BackhaulMix {
    pub fn shares(&self) -> [f64; 4] {
        [self.fiber, self.copper, self.wireless, self.satellite]
    }
}

fn default_mno_count() -> u32 {
    3
}
fn default_target_capacity() -> f64 {
    10.0
}
fn default_obf() -> f64 {
    20.0
}
fn default_tax_rate() -> f64 {
    0.30
}
fn default_profit_margin() -> f64 {
    0.10
}
fn default_discount_rate() -> f64 {
    0.05
}
fn default_wacc() -> f64 {
    0.15
}

/// Country-level market, spectrum and policy parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountryParams {
    #[serde(default)]
    pub name: String,
    pub market_share: f64,
    #[serde(default = "default_mno_count")]
    pub mno_count: u32,
    /// Mbps per user.
    #[serde(default = "default_target_capacity")]
    pub target_capacity: f64,
    #[serde(default = "default_obf")]
    pub obf: f64,
    /// USD per user per month.
    pub arpu: ArpuTiers,
    #[serde(default)]
    pub luminosity_thresholds: LuminosityThresholds,
    pub spectrum_price: SpectrumPrices,
    #[serde(default = "default_tax_rate")]
    pub tax_rate: f64,
    #[serde(default = "default_profit_margin")]
    pub profit_margin: f64,
    #[serde(default = "default_discount_rate")]
    pub discount_rate: f64,
    #[serde(default = "default_wacc")]
    pub wacc: f64,
    /// National site count. Mutually exclusive with `total_cells`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_sites: Option<f64>,
    /// National cell count; converted at three cells per site.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_cells: Option<f64>,
    pub total_pop: f64,
    /// Percent of the population with cell-phone coverage.
    pub total_coverage: f64,
    #[serde(default)]
    pub backhaul_mix: BackhaulMix,
    #[serde(default)]
    pub geotype_thresholds: GeotypeThresholds,
    #[serde(default)]
    pub coordinates: CoordinateSystem,
    /// Dimension a shared rural network for every subscriber in the region
    /// (market share 1.0) instead of for the modelled operator's share.
    #[serde(default)]
    pub srn_whole_market: bool,
    /// Filled from the `[spectrum.*]` sections of the config file.
    #[serde(skip)]
    pub spectrum: SpectrumPortfolio,
}

pub const CELLS_PER_SITE: f64 = 3.0;

impl CountryParams {
    /// National existing site count.
    pub fn national_sites(&self) -> f64 {
        match (self.total_sites, self.total_cells) {
            (Some(sites), _) => sites,
            (None, Some(cells)) => cells / CELLS_PER_SITE,
            (None, None) => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::validation(format!("country: {msg}")));
        if !(self.market_share > 0.0 && self.market_share <= 1.0) {
            return fail(format!("market_share {} not in (0, 1]", self.market_share));
        }
        if self.mno_count < 2 {
            return fail(format!("mno_count {} must be >= 2", self.mno_count));
        }
        if !(self.target_capacity >= 0.0) {
            return fail("target_capacity must be >= 0".into());
        }
        if !(self.obf > 0.0) {
            return fail("obf must be > 0".into());
        }
        let money = [
            ("arpu.high", self.arpu.high),
            ("arpu.medium", self.arpu.medium),
            ("arpu.low", self.arpu.low),
            ("spectrum_price.coverage", self.spectrum_price.coverage),
            ("spectrum_price.capacity", self.spectrum_price.capacity),
        ];
        for (name, v) in money {
            if !(v >= 0.0 && v.is_finite()) {
                return fail(format!("{name} must be >= 0"));
            }
        }
        for (name, v) in [
            ("tax_rate", self.tax_rate),
            ("profit_margin", self.profit_margin),
            ("discount_rate", self.discount_rate),
            ("wacc", self.wacc),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return fail(format!("{name} must be >= 0"));
            }
        }
        if self.luminosity_thresholds.medium > self.luminosity_thresholds.high {
            return fail("luminosity_thresholds.medium must not exceed high".into());
        }
        if self.geotype_thresholds.suburban > self.geotype_thresholds.urban {
            return fail("geotype_thresholds.suburban must not exceed urban".into());
        }
        match (self.total_sites, self.total_cells) {
            (Some(_), Some(_)) => return fail("give total_sites or total_cells, not both".into()),
            (None, None) => return fail("missing total_sites (or total_cells)".into()),
            (Some(v), None) | (None, Some(v)) if !(v >= 0.0) => {
                return fail("site count must be >= 0".into())
            }
            _ => {}
        }
        if !(self.total_pop > 0.0) {
            return fail("total_pop must be > 0".into());
        }
        if !(self.total_coverage > 0.0 && self.total_coverage <= 100.0) {
            return fail(format!(
                "total_coverage {} not in (0, 100]",
                self.total_coverage
            ));
        }
        let mix = self.backhaul_mix.shares();
        if mix.iter().any(|v| *v < 0.0) {
            return fail("backhaul_mix shares must be >= 0".into());
        }
        let sum: f64 = mix.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return fail(format!("backhaul_mix sums to {sum}, expected 1"));
        }
        for generation in Generation::ALL {
            for band in self.spectrum.bands(generation) {
                if !(band.frequency_mhz > 0.0 && band.bandwidth_mhz >= 0.0) {
                    return fail(format!("bad {generation} band {band:?}"));
                }
            }
        }
        Ok(())
    }
}

/// Wireless backhaul radio unit prices by hop length class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WirelessUnitPrices {
    /// Hops shorter than 10 km.
    pub small: f64,
    /// Hops shorter than 20 km.
    pub medium: f64,
    /// Hops up to 40 km.
    pub large: f64,
}

/// Unit costs in undiscounted USD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostBook {
    pub active_equipment_capex: f64,
    pub tower_capex: f64,
    pub installation_capex: f64,
    /// Per site per year.
    pub om_opex: f64,
    pub power_opex: f64,
    pub site_rental_opex: ByGeotype,
    pub fiber_per_m: ByGeotype,
    pub wireless_unit: WirelessUnitPrices,
    /// Radio units needed per wireless hop.
    pub wireless_units_per_hop: u32,
    /// Annual link opex as a fraction of link capex.
    pub link_opex_fraction: f64,
    /// Administration as a fraction of RAN cost.
    pub admin_fraction: f64,
}

impl Default for CostBook {
    fn default() -> Self {
        CostBook {
            active_equipment_capex: 39_000.0,
            tower_capex: 47_000.0,
            installation_capex: 27_000.0,
            om_opex: 7_400.0,
            power_opex: 2_200.0,
            site_rental_opex: ByGeotype {
                urban: 15_000.0,
                suburban: 9_900.0,
                rural: 2_000.0,
            },
            fiber_per_m: ByGeotype {
                urban: 25.0,
                suburban: 15.0,
                rural: 10.0,
            },
            wireless_unit: WirelessUnitPrices {
                small: 10_000.0,
                medium: 20_000.0,
                large: 40_000.0,
            },
            wireless_units_per_hop: 2,
            link_opex_fraction: 0.10,
            admin_fraction: 0.10,
        }
    }
}

impl CostBook {
    pub fn validate(&self) -> Result<()> {
        let mut values = vec![
            self.active_equipment_capex,
            self.tower_capex,
            self.installation_capex,
            self.om_opex,
            self.power_opex,
            self.wireless_unit.small,
            self.wireless_unit.medium,
            self.wireless_unit.large,
            self.link_opex_fraction,
            self.admin_fraction,
        ];
        values.extend(self.site_rental_opex.values());
        values.extend(self.fiber_per_m.values());
        if values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::validation(
                "costs: all values must be finite and >= 0",
            ));
        }
        let w = self.wireless_unit;
        if !(w.small <= w.medium && w.medium <= w.large) {
            return Err(Error::validation(
                "costs: wireless unit prices must be non-decreasing small <= medium <= large",
            ));
        }
        Ok(())
    }

    /// Every price multiplied by `factor`; fractions are left alone.
    pub fn scaled(&self, factor: f64) -> CostBook {
        let g = |v: ByGeotype| ByGeotype {
            urban: v.urban * factor,
            suburban: v.suburban * factor,
            rural: v.rural * factor,
        };
        CostBook {
            active_equipment_capex: self.active_equipment_capex * factor,
            tower_capex: self.tower_capex * factor,
            installation_capex: self.installation_capex * factor,
            om_opex: self.om_opex * factor,
            power_opex: self.power_opex * factor,
            site_rental_opex: g(self.site_rental_opex),
            fiber_per_m: g(self.fiber_per_m),
            wireless_unit: WirelessUnitPrices {
                small: self.wireless_unit.small * factor,
                medium: self.wireless_unit.medium * factor,
                large: self.wireless_unit.large * factor,
            },
            ..self.clone()
        }
    }
}
