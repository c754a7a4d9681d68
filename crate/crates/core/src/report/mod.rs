//! End-to-end runs over the scenario × strategy grid and the tables written
//! from them.

mod deciles;
mod files;
mod savings;

use std::collections::HashMap;

use rayon::prelude::*;

pub use deciles::{decile_aggregate, DecileRow};
pub use files::{
    deciles_file_name, read_results, read_results_dir, results_file_name, write_deciles,
    write_results, write_run_outputs, write_savings, ResultRow, SAVINGS_FILE_NAME,
};
pub use savings::{saving, savings_summary, SavingsRow};

use crate::assessment::{assess_region, settle, AssessmentResult};
use crate::capacity::CapacityLut;
use crate::costs::{apply_sharing, cost_plan, CostBreakdown};
use crate::demand::{revenue_npv, traffic_demand};
use crate::error::{Error, Result};
use crate::model::{
    Config, FiberPop, Geotype, Region, ScenarioName, Sharing, Strategy, Technology,
};
use crate::supply::{
    allocate_existing_sites, assign_technology, classify_geotype, design_backhaul,
    mno_existing_sites, plan_region, BackhaulTree, RegionNetworkPlan,
};

/// Everything computed for one region in one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionResult {
    pub region_id: String,
    pub population: f64,
    pub area_km2: f64,
    pub peak_demand: f64,
    pub plan: RegionNetworkPlan,
    pub cost: CostBreakdown,
    pub assessment: AssessmentResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub scenario: ScenarioName,
    pub strategy: Strategy,
    /// In region input order.
    pub regions: Vec<RegionResult>,
}

impl RunOutput {
    pub fn total_private_cost(&self) -> f64 {
        self.regions.iter().map(|r| r.assessment.private_cost).sum()
    }

    pub fn total_government_cost(&self) -> f64 {
        self.regions
            .iter()
            .map(|r| r.assessment.government_cost)
            .sum()
    }

    pub fn total_revenue(&self) -> f64 {
        self.regions.iter().map(|r| r.assessment.revenue_npv).sum()
    }

    /// Rows as written to disk, sorted by region id.
    pub fn rows(&self) -> Vec<ResultRow> {
        let mut rows: Vec<ResultRow> = self.regions.iter().map(ResultRow::from_result).collect();
        rows.sort_by(|a, b| a.region_id.cmp(&b.region_id));
        rows
    }
}

/// Validated inputs plus everything that does not depend on the scenario or
/// strategy: geotypes, existing sites and the backhaul tree.
#[derive(Debug, Clone)]
pub struct Model {
    config: Config,
    regions: Vec<Region>,
    coverage: HashMap<String, Technology>,
    lut: CapacityLut,
    geotypes: Vec<Geotype>,
    existing_sites: Vec<f64>,
    tree: Option<BackhaulTree>,
}

impl Model {
    /// With no fiber points of presence the node of the most populous region
    /// stands in for the backbone.
    pub fn new(
        config: Config,
        regions: Vec<Region>,
        fiber_pops: Vec<FiberPop>,
        coverage: HashMap<String, Technology>,
        lut: CapacityLut,
    ) -> Result<Self> {
        config.validate()?;
        for r in &regions {
            r.validate()?;
        }
        let geotypes = regions
            .iter()
            .map(|r| classify_geotype(r, &config.country.geotype_thresholds))
            .collect();
        let existing_sites = allocate_existing_sites(&regions, &config.country)?;
        let pops = if fiber_pops.is_empty() {
            fallback_pop(&regions).into_iter().collect()
        } else {
            fiber_pops
        };
        let tree = if regions.is_empty() {
            None
        } else {
            Some(design_backhaul(
                &regions,
                &pops,
                config.country.coordinates,
            )?)
        };
        Ok(Model {
            config,
            regions,
            coverage,
            lut,
            geotypes,
            existing_sites,
            tree,
        })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn geotypes(&self) -> &[Geotype] {
        &self.geotypes
    }

    /// Existing sites per region (all operators), in input order.
    pub fn existing_sites(&self) -> &[f64] {
        &self.existing_sites
    }

    pub fn backhaul_tree(&self) -> Option<&BackhaulTree> {
        self.tree.as_ref()
    }

    /// Demand, supply, costs and assessment for every region.
    pub fn run(&self, scenario: ScenarioName, strategy: Strategy) -> Result<RunOutput> {
        let scenario_def = self.config.scenario(scenario).ok_or_else(|| {
            Error::validation(format!(
                "scenario `{scenario}` is not defined in the config"
            ))
        })?;
        let params = &self.config.country;
        let book = &self.config.costs;
        let mut whole_market = params.clone();
        whole_market.market_share = 1.0;

        let mut results = Vec::with_capacity(self.regions.len());
        let mut assessments = Vec::with_capacity(self.regions.len());
        for (i, region) in self.regions.iter().enumerate() {
            let geotype = self.geotypes[i];
            let stage = |stage: &'static str| {
                move |e: Error| Error::Stage {
                    stage,
                    region: region.id.clone(),
                    source: Box::new(e),
                }
            };
            let dimensioning = if params.srn_whole_market
                && strategy.sharing == Sharing::Srn
                && geotype == Geotype::Rural
            {
                &whole_market
            } else {
                params
            };
            let demand = traffic_demand(region, scenario_def, dimensioning);
            let existing = mno_existing_sites(self.existing_sites[i], dimensioning.market_share);
            let tech = assign_technology(region, &self.coverage);
            let tree = self.tree.as_ref().expect("tree exists when regions do");
            let plan = plan_region(
                demand,
                region,
                geotype,
                existing,
                tech,
                &strategy,
                &self.lut,
                tree.region_link(i, strategy.backhaul),
                &params.backhaul_mix,
            )
            .map_err(stage("supply"))?;
            let raw = cost_plan(&plan, book, params.discount_rate, params.wacc)
                .map_err(stage("costs"))?;
            let cost = apply_sharing(
                &raw,
                strategy.sharing,
                geotype,
                params.mno_count,
                book,
                params.wacc,
            );
            let revenue = revenue_npv(region, scenario_def, params);
            assessments.push(assess_region(
                revenue,
                &cost,
                region.population,
                strategy.generation,
                params,
            ));
            results.push((region, demand, plan, cost));
        }
        settle(&mut assessments);

        let regions = results
            .into_iter()
            .zip(assessments)
            .map(|((region, demand, plan, cost), assessment)| RegionResult {
                region_id: region.id.clone(),
                population: region.population,
                area_km2: region.area_km2,
                peak_demand: demand,
                plan,
                cost,
                assessment,
            })
            .collect();
        Ok(RunOutput {
            scenario,
            strategy,
            regions,
        })
    }

    /// Every configured scenario × strategy, run in parallel. Output order is
    /// scenario order then strategy order from the config.
    pub fn run_grid(&self) -> Result<Vec<RunOutput>> {
        let cells: Vec<(ScenarioName, Strategy)> = self
            .config
            .scenarios
            .iter()
            .flat_map(|s| self.config.strategies.iter().map(move |g| (s.name, *g)))
            .collect();
        cells.par_iter().map(|&(s, g)| self.run(s, g)).collect()
    }
}

fn fallback_pop(regions: &[Region]) -> Option<FiberPop> {
    regions
        .iter()
        .max_by(|a, b| {
            a.population
                .total_cmp(&b.population)
                .then_with(|| b.id.cmp(&a.id))
        })
        .map(|r| FiberPop {
            id: format!("pop-{}", r.id),
            node: r.node,
        })
}
