//! Viability, cross-subsidy and state subsidy on a small hand-made country
//! with one profitable city and two loss-making districts.

use uso_sim::assessment::{assess_region, settle};
use uso_sim::costs::CostBreakdown;
use uso_sim::fixtures;
use uso_sim::model::Generation;

fn main() {
    let params = fixtures::synthetic_config().country;
    // (id, population, revenue NPV, network cost incl. admin, admin)
    let regions = [
        ("city", 400_000.0, 90e6, 40e6, 3e6),
        ("district-a", 150_000.0, 12e6, 20e6, 1.5e6),
        ("district-b", 60_000.0, 3e6, 18e6, 1.4e6),
    ];
    let mut results: Vec<_> = regions
        .iter()
        .map(|&(id, pop, revenue, total, admin)| {
            let cost = CostBreakdown {
                region_id: id.into(),
                admin,
                network_total: total,
                ..CostBreakdown::default()
            };
            assess_region(revenue, &cost, pop, Generation::G4, &params)
        })
        .collect();
    settle(&mut results);

    println!(
        "{:<11} {:>11} {:>11} {:>8} {:>11} {:>11} {:>11} {:>12}",
        "region", "revenue", "private", "viable", "cross in", "cross out", "subsidy", "government"
    );
    for r in &results {
        println!(
            "{:<11} {:>11.0} {:>11.0} {:>8} {:>11.0} {:>11.0} {:>11.0} {:>12.0}",
            r.region_id,
            r.revenue_npv,
            r.private_cost,
            r.viable,
            r.cross_subsidy_in,
            r.cross_subsidy_out,
            r.subsidy,
            r.government_cost
        );
    }
    let total: f64 = results.iter().map(|r| r.government_cost).sum();
    println!("net cost to government: ${total:.0}");
}
