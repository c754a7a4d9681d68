use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uso_sim::capacity::{generate_lut, CapacityLut, SimParams};
use uso_sim::model::{
    load_config, load_coverage, load_fiber_pops, load_regions, ScenarioName, Strategy,
};
use uso_sim::report::{read_results_dir, write_run_outputs, Model};
use uso_sim::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Cost of universal mobile broadband coverage")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate SINR and write the capacity lookup tables.
    GenerateLuts {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = SimParams::default().seed)]
        seed: u64,
        /// Monte Carlo samples per grid point (at least 1000).
        #[arg(long, default_value_t = SimParams::default().iterations,
              value_parser = clap::value_parser!(u32).range(1000..))]
        iterations: u32,
    },
    /// Run scenarios × strategies and write results, deciles and savings.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        regions: PathBuf,
        #[arg(long)]
        luts: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Only this scenario (default: all in the config).
        #[arg(long)]
        scenario: Option<ScenarioName>,
        /// Only this strategy, as GENERATION,BACKHAUL,SHARING.
        #[arg(long)]
        strategy: Option<Strategy>,
        /// CSV of fiber points of presence (default: the most populous region's node).
        #[arg(long)]
        fiber_pops: Option<PathBuf>,
        /// CSV of existing technology per region (default: none everywhere).
        #[arg(long)]
        coverage: Option<PathBuf>,
    },
    /// Rebuild decile tables and the savings summary from results files.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::GenerateLuts {
            config,
            out,
            seed,
            iterations,
        } => {
            let config = load_config(config)?;
            let sim = SimParams {
                seed,
                iterations,
                ..SimParams::default()
            };
            generate_lut(&config.country, &sim)?.save(&out)?;
            println!("wrote {}", out.display());
        }
        Command::Run {
            config,
            regions,
            luts,
            out,
            scenario,
            strategy,
            fiber_pops,
            coverage,
        } => {
            let mut config = load_config(config)?;
            if let Some(s) = scenario {
                if config.scenario(s).is_none() {
                    return Err(Error::Validation(format!(
                        "scenario `{s}` is not defined in the config"
                    )));
                }
                config.scenarios.retain(|c| c.name == s);
            }
            if let Some(g) = strategy {
                config.strategies = vec![g];
            }
            let regions = load_regions(regions)?;
            let pops = fiber_pops
                .map(load_fiber_pops)
                .transpose()?
                .unwrap_or_default();
            let coverage = coverage
                .map(load_coverage)
                .transpose()?
                .unwrap_or_else(HashMap::new);
            let lut = CapacityLut::load(&luts)?;
            let model = Model::new(config, regions, pops, coverage, lut)?;
            let runs = model.run_grid()?;
            for run in &runs {
                println!(
                    "{:<8} {:<28} private {:>16.0}  government {:>16.0}",
                    run.scenario.as_str(),
                    run.strategy.to_string(),
                    run.total_private_cost(),
                    run.total_government_cost()
                );
            }
            let rows: Vec<_> = runs.iter().map(|r| r.keyed_rows()).collect();
            write_run_outputs(&out, &rows)?;
        }
        Command::Report { input, out } => {
            let runs = read_results_dir(&input)?;
            if runs.is_empty() {
                return Err(Error::Validation(format!(
                    "no results_*.csv files in {}",
                    input.display()
                )));
            }
            write_run_outputs(&out, &runs)?;
            println!("wrote {} runs to {}", runs.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
