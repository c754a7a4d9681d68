//! Builds the density-to-capacity tables for the bundled country and prints
//! a slice of each curve. Pass a directory to also write `capacity_lut.csv`.
//!
//!     cargo run --example generate_luts -- /tmp/luts

use uso_sim::capacity::{generate_lut, SimParams};
use uso_sim::fixtures;

fn main() -> uso_sim::Result<()> {
    let config = fixtures::synthetic_config();
    let sim = SimParams {
        seed: 7,
        ..SimParams::default()
    };
    let lut = generate_lut(&config.country, &sim)?;

    for table in lut.tables() {
        println!("{} {}", table.environment, table.generation);
        for e in table.entries.iter().step_by(8) {
            println!(
                "  {:>9.4} sites/km2  SE {:>5.2} bps/Hz  {:>9.3} Mbps/km2",
                e.site_density, e.mean_spectral_efficiency, e.capacity_density
            );
        }
    }
    if let Some(dir) = std::env::args().nth(1) {
        lut.save(&dir)?;
        println!("wrote {dir}");
    }
    Ok(())
}
