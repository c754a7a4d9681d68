//! Per-region traffic demand, ARPU tiering and discounted revenue.

use serde::Serialize;

use crate::costs::npv;
use crate::model::{horizon, CountryParams, Region, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArpuTier {
    High,
    Medium,
    Low,
}

impl ArpuTier {
    pub fn as_str(self) -> &'static str {
        match self {
            ArpuTier::High => "high",
            ArpuTier::Medium => "medium",
            ArpuTier::Low => "low",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemandResult {
    pub region_id: String,
    /// Peak over the horizon, Mbps/km².
    pub peak_demand: f64,
    pub served_users_by_year: Vec<(i32, f64)>,
    pub arpu_tier: ArpuTier,
    /// USD per user per month.
    pub arpu: f64,
    pub revenue_npv: f64,
}

/// Maps mean nightlight luminosity onto a consumption tier and its monthly ARPU.
pub fn assign_arpu_tier(mean_luminosity: f64, params: &CountryParams) -> (ArpuTier, f64) {
    let t = params.luminosity_thresholds;
    if mean_luminosity >= t.high {
        (ArpuTier::High, params.arpu.high)
    } else if mean_luminosity >= t.medium {
        (ArpuTier::Medium, params.arpu.medium)
    } else {
        (ArpuTier::Low, params.arpu.low)
    }
}

/// Smartphone users the modelled operator serves in `year`.
///
/// # Panics
///
/// If `year` is not covered by the scenario.
pub fn served_users(
    region: &Region,
    scenario: &Scenario,
    year: i32,
    params: &CountryParams,
) -> f64 {
    let pen = scenario
        .penetration(year)
        .unwrap_or_else(|| panic!("scenario `{}` has no year {year}", scenario.name));
    let sp = scenario
        .smartphone_penetration(year)
        .unwrap_or_else(|| panic!("scenario `{}` has no year {year}", scenario.name));
    region.population * pen * sp * params.market_share
}

fn yearly_demand(region: &Region, scenario: &Scenario, year: i32, params: &CountryParams) -> f64 {
    served_users(region, scenario, year, params) * params.target_capacity
        / params.obf
        / region.area_km2
}

/// Peak busy-hour traffic density (Mbps/km²) over the assessment period.
pub fn traffic_demand(region: &Region, scenario: &Scenario, params: &CountryParams) -> f64 {
    horizon()
        .map(|year| yearly_demand(region, scenario, year, params))
        .fold(0.0, f64::max)
}

/// Discounted subscription revenue over the assessment period, USD.
pub fn revenue_npv(region: &Region, scenario: &Scenario, params: &CountryParams) -> f64 {
    let (_, arpu) = assign_arpu_tier(region.mean_luminosity, params);
    let cashflows = horizon().map(|year| {
        (
            year,
            served_users(region, scenario, year, params) * arpu * 12.0,
        )
    });
    npv(cashflows, params.discount_rate)
}

pub fn assess_demand(region: &Region, scenario: &Scenario, params: &CountryParams) -> DemandResult {
    let (arpu_tier, arpu) = assign_arpu_tier(region.mean_luminosity, params);
    DemandResult {
        region_id: region.id.clone(),
        peak_demand: traffic_demand(region, scenario, params),
        served_users_by_year: horizon()
            .map(|y| (y, served_users(region, scenario, y, params)))
            .collect(),
        arpu_tier,
        arpu,
        revenue_npv: revenue_npv(region, scenario, params),
    }
}
