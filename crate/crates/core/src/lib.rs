//! Cost of universal mobile broadband.
//!
//! Given a country's regions, spectrum and unit costs, the crate estimates
//! per-region traffic demand, dimensions a least-cost 3G or 4G network on top
//! of the existing sites, prices it under a sharing arrangement, and works out
//! how much the operator can fund itself and how much falls to the state.
//!
//! The stages are usable on their own:
//!
//! - [`demand`]: users, peak traffic density and discounted revenue.
//! - [`capacity`]: Monte Carlo SINR and the density-to-capacity tables.
//! - [`supply`]: existing sites, RAN dimensioning, spanning-tree backhaul.
//! - [`costs`]: capex, opex, sharing splits, NPV.
//! - [`assessment`]: spectrum, tax, profit, cross-subsidy, state subsidy.
//! - [`report`]: the end-to-end pipeline, decile tables and savings.
//!
//! ```no_run
//! use uso_sim::{fixtures, capacity, report::Model};
//! use uso_sim::model::{ScenarioName, Strategy};
//!
//! let config = fixtures::synthetic_config();
//! let lut = capacity::generate_lut(&config.country, &capacity::SimParams::default())?;
//! let model = Model::new(
//!     config,
//!     fixtures::synthetic_regions(),
//!     fixtures::synthetic_fiber_pops(),
//!     fixtures::synthetic_coverage(),
//!     lut,
//! )?;
//! let run = model.run(ScenarioName::Baseline, "4G,wireless,baseline".parse::<Strategy>()?)?;
//! println!("{}", run.total_government_cost());
//! # Ok::<(), uso_sim::Error>(())
//! ```

// Validation writes `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;

pub mod assessment;
pub mod capacity;
pub mod costs;
pub mod demand;
pub mod fixtures;
pub mod model;
pub mod report;
pub mod supply;

pub use error::{Error, Result};
