//! Every scenario × strategy on the bundled country. Writes results, decile
//! and savings tables to the directory given (default `target/grid`).

use uso_sim::capacity::{generate_lut, SimParams};
use uso_sim::fixtures;
use uso_sim::report::{savings_summary, write_run_outputs, Model, RunOutput};

fn main() -> uso_sim::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/grid".into());
    let config = fixtures::synthetic_config();
    let lut = generate_lut(&config.country, &SimParams::default())?;
    let model = Model::new(
        config,
        fixtures::synthetic_regions(),
        fixtures::synthetic_fiber_pops(),
        fixtures::synthetic_coverage(),
        lut,
    )?;
    let runs = model.run_grid()?;
    let rows: Vec<_> = runs.iter().map(RunOutput::keyed_rows).collect();
    write_run_outputs(&out, &rows)?;

    for s in savings_summary(&rows)
        .iter()
        .filter(|s| s.comparison == "sharing")
    {
        let pct = |v: Option<f64>| v.map_or("n/a".into(), |v| format!("{:.0}%", 100.0 * v));
        println!(
            "{:<8} {:<28} saves {:>4} private, {:>4} government vs {}",
            s.scenario,
            s.strategy,
            pct(s.private_saving),
            pct(s.government_saving),
            s.reference
        );
    }
    println!("wrote {} runs to {out}", runs.len());
    Ok(())
}
