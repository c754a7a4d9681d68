//! How many sites one region needs under 3G and 4G, and how many of them can
//! come from the existing estate.

use uso_sim::capacity::{generate_lut, SimParams};
use uso_sim::demand::traffic_demand;
use uso_sim::fixtures;
use uso_sim::model::{Backhaul, Generation, ScenarioName, Sharing, Strategy};
use uso_sim::supply::{
    allocate_existing_sites, assign_technology, classify_geotype, dimension_ran, mno_existing_sites,
};

fn main() -> uso_sim::Result<()> {
    let config = fixtures::synthetic_config();
    let params = &config.country;
    let regions = fixtures::synthetic_regions();
    let coverage = fixtures::synthetic_coverage();
    let lut = generate_lut(params, &SimParams::default())?;
    let existing = allocate_existing_sites(&regions, params)?;
    let scenario = config
        .scenario(ScenarioName::Baseline)
        .expect("bundled scenario");

    for (region, all_sites) in regions.iter().zip(existing) {
        let geotype = classify_geotype(region, &params.geotype_thresholds);
        let demand = traffic_demand(region, scenario, params);
        let own = mno_existing_sites(all_sites, params.market_share);
        let tech = assign_technology(region, &coverage);
        println!(
            "{} ({geotype}, {demand:.2} Mbps/km2, {own} existing {tech} sites)",
            region.id
        );
        for generation in Generation::ALL {
            let strategy = Strategy::new(generation, Backhaul::Wireless, Sharing::Baseline);
            let plan = dimension_ran(demand, region, geotype, own, tech, &strategy, &lut)?;
            println!(
                "  {generation}: {:>5} required = {:>4} reused + {:>4} upgraded + {:>4} new{}",
                plan.required_sites,
                plan.reused_sites,
                plan.upgraded_sites,
                plan.new_sites,
                if plan.capacity_shortfall {
                    "  (demand exceeds densest grid point)"
                } else {
                    ""
                }
            );
        }
    }
    Ok(())
}
