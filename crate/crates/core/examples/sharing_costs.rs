//! One region's cost breakdown under each sharing arrangement.

use uso_sim::capacity::{generate_lut, SimParams};
use uso_sim::fixtures;
use uso_sim::model::{ScenarioName, Sharing};
use uso_sim::report::Model;

fn main() -> uso_sim::Result<()> {
    let config = fixtures::synthetic_config();
    let lut = generate_lut(&config.country, &SimParams::default())?;
    let model = Model::new(
        config,
        fixtures::synthetic_regions(),
        fixtures::synthetic_fiber_pops(),
        fixtures::synthetic_coverage(),
        lut,
    )?;
    let region = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "west-hills".into());
    let index = model
        .regions()
        .iter()
        .position(|r| r.id == region)
        .ok_or_else(|| uso_sim::Error::Validation(format!("no region `{region}`")))?;
    println!(
        "{region} ({}), 4G with wireless backhaul, baseline scenario",
        model.geotypes()[index]
    );
    println!(
        "{:<18} {:>12} {:>12} {:>12} {:>12} {:>12} {:>13}",
        "sharing", "active", "passive", "ran opex", "backhaul", "core", "network total"
    );
    for sharing in Sharing::ALL {
        let strategy = format!("4G,wireless,{}", sharing.as_str()).parse()?;
        let run = model.run(ScenarioName::Baseline, strategy)?;
        let c = &run.regions[index].cost;
        println!(
            "{:<18} {:>12.0} {:>12.0} {:>12.0} {:>12.0} {:>12.0} {:>13.0}",
            sharing.as_str(),
            c.active_capex,
            c.passive_capex,
            c.ran_opex_npv(),
            c.backhaul_capex + c.backhaul_opex_npv,
            c.core_capex + c.core_opex_npv,
            c.network_total
        );
    }
    Ok(())
}
