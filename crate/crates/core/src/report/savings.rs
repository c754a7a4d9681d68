use serde::Serialize;

use super::ResultRow;
use crate::model::{Generation, ScenarioName, Sharing, Strategy};

/// One strategy compared with a reference strategy on the same inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SavingsRow {
    pub scenario: ScenarioName,
    /// `sharing` (against baseline sharing) or `generation` (against 3G).
    pub comparison: &'static str,
    pub strategy: String,
    pub reference: String,
    pub private_cost: i64,
    pub reference_private_cost: i64,
    /// Empty when the reference total is zero.
    pub private_saving: Option<f64>,
    pub government_cost: i64,
    pub reference_government_cost: i64,
    pub government_saving: Option<f64>,
}

/// `(reference - total) / reference`, undefined for a zero reference.
///
/// Negative references (net government revenue) are divided as they are, so a
/// move from a cost to a revenue shows up as a saving above 100%.
pub fn saving(total: f64, reference: f64) -> Option<f64> {
    if reference == 0.0 {
        None
    } else {
        Some((reference - total) / reference)
    }
}

fn round6(v: Option<f64>) -> Option<f64> {
    v.map(|x| {
        let r = (x * 1e6).round() / 1e6;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    })
}

/// Savings of every non-baseline sharing mode against baseline sharing, and
/// of every 4G strategy against its 3G counterpart. Pairs whose reference
/// was not run are skipped.
pub fn savings_summary(runs: &[(ScenarioName, Strategy, Vec<ResultRow>)]) -> Vec<SavingsRow> {
    let totals = |rows: &[ResultRow]| {
        (
            rows.iter().map(|r| r.private_cost).sum::<i64>(),
            rows.iter().map(|r| r.government_cost).sum::<i64>(),
        )
    };
    let find = |scenario: ScenarioName, strategy: Strategy| {
        runs.iter()
            .find(|(s, g, _)| *s == scenario && *g == strategy)
            .map(|(_, _, rows)| totals(rows))
    };

    let mut out = Vec::new();
    for (scenario, strategy, rows) in runs {
        let mut references = Vec::new();
        if strategy.sharing != Sharing::Baseline {
            references.push((
                "sharing",
                Strategy {
                    sharing: Sharing::Baseline,
                    ..*strategy
                },
            ));
        }
        if strategy.generation == Generation::G4 {
            references.push((
                "generation",
                Strategy {
                    generation: Generation::G3,
                    ..*strategy
                },
            ));
        }
        let (private, government) = totals(rows);
        for (comparison, reference) in references {
            let Some((ref_private, ref_government)) = find(*scenario, reference) else {
                continue;
            };
            out.push(SavingsRow {
                scenario: *scenario,
                comparison,
                strategy: strategy.key(),
                reference: reference.key(),
                private_cost: private,
                reference_private_cost: ref_private,
                private_saving: round6(saving(private as f64, ref_private as f64)),
                government_cost: government,
                reference_government_cost: ref_government,
                government_saving: round6(saving(government as f64, ref_government as f64)),
            });
        }
    }
    out.sort_by(|a, b| {
        (a.scenario, a.comparison, &a.strategy, &a.reference).cmp(&(
            b.scenario,
            b.comparison,
            &b.strategy,
            &b.reference,
        ))
    });
    out
}
