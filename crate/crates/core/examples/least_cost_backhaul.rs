//! The spanning tree that joins every region to the fiber backbone, and how
//! its edges are priced as wireless or fiber backhaul.

use uso_sim::costs::link_cost;
use uso_sim::fixtures;
use uso_sim::model::{Backhaul, Geotype};
use uso_sim::supply::design_backhaul;

fn main() -> uso_sim::Result<()> {
    let config = fixtures::synthetic_config();
    let tree = design_backhaul(
        &fixtures::synthetic_regions(),
        &fixtures::synthetic_fiber_pops(),
        config.country.coordinates,
    )?;
    println!(
        "total route length {:.1} km",
        tree.total_length_m() / 1000.0
    );
    for backhaul in Backhaul::ALL {
        println!("{} backhaul", backhaul.as_str());
        for link in tree.links(backhaul) {
            let (capex, opex) = link_cost(&link, Geotype::Rural, &config.costs)?;
            println!(
                "  {:<14} -> {:<12} {:>6.1} km  {:<22} capex ${:>10.0}  opex ${:>8.0}/yr",
                link.from,
                link.to,
                link.length_m / 1000.0,
                link.kind.as_str(),
                capex,
                opex
            );
        }
    }
    Ok(())
}
