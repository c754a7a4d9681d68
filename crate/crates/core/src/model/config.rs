use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CostBook, CountryParams, Scenario, SpectrumPortfolio, Strategy};
use crate::error::{Error, Result};

/// A fully validated model configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub country: CountryParams,
    pub costs: CostBook,
    pub scenarios: Vec<Scenario>,
    /// Strategies to run. Defaults to the full 20-strategy grid.
    pub strategies: Vec<Strategy>,
}

/// On-disk layout.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    country: CountryParams,
    #[serde(default)]
    costs: CostBook,
    #[serde(default)]
    spectrum: SpectrumPortfolio,
    scenario: Vec<Scenario>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    strategy: Vec<Strategy>,
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Config> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Config> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let mut country = file.country;
    country.spectrum = file.spectrum;
    let config = Config {
        country,
        costs: file.costs,
        scenarios: file.scenario,
        strategies: if file.strategy.is_empty() {
            Strategy::grid()
        } else {
            file.strategy
        },
    };
    config.validate()?;
    Ok(config)
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        self.country.validate()?;
        self.costs.validate()?;
        if self.scenarios.is_empty() {
            return Err(Error::validation("at least one [[scenario]] is required"));
        }
        for (i, s) in self.scenarios.iter().enumerate() {
            s.validate()?;
            if self.scenarios[..i].iter().any(|o| o.name == s.name) {
                return Err(Error::validation(format!(
                    "duplicate scenario `{}`",
                    s.name
                )));
            }
        }
        for (i, s) in self.strategies.iter().enumerate() {
            if self.strategies[..i].contains(s) {
                return Err(Error::validation(format!("duplicate strategy `{s}`")));
            }
        }
        Ok(())
    }

    pub fn scenario(&self, name: super::ScenarioName) -> Option<&Scenario> {
        self.scenarios.iter().find(|s| s.name == name)
    }

    /// Serializes back to the config file format.
    pub fn to_toml(&self) -> String {
        let file = ConfigFile {
            country: self.country.clone(),
            costs: self.costs.clone(),
            spectrum: self.country.spectrum.clone(),
            scenario: self.scenarios.clone(),
            strategy: self.strategies.clone(),
        };
        toml::to_string(&file).expect("config is always representable as TOML")
    }
}
