//! Peak traffic density and discounted revenue for each region and scenario.

use uso_sim::demand::assess_demand;
use uso_sim::fixtures;

fn main() {
    let config = fixtures::synthetic_config();
    let regions = fixtures::synthetic_regions();
    for scenario in &config.scenarios {
        println!("{} scenario", scenario.name);
        for region in &regions {
            let d = assess_demand(region, scenario, &config.country);
            let users_2030 = d.served_users_by_year.last().map_or(0.0, |&(_, u)| u);
            println!(
                "  {:<12} {:>8.3} Mbps/km2  {:>7.0} users in 2030  ARPU {} ${:.0}  revenue NPV ${:>12.0}",
                d.region_id,
                d.peak_demand,
                users_2030,
                d.arpu_tier.as_str(),
                d.arpu,
                d.revenue_npv
            );
        }
    }
}
