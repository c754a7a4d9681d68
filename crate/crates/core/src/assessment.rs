//! Policy quantities: what the operator must recover, what it can raise
//! from its own users, and what the state ends up paying or collecting.

use crate::costs::CostBreakdown;
use crate::model::{CountryParams, Generation};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AssessmentResult {
    pub region_id: String,
    pub revenue_npv: f64,
    /// Network cost excluding administration.
    pub network: f64,
    pub admin: f64,
    pub spectrum: f64,
    pub tax: f64,
    pub profit: f64,
    pub private_cost: f64,
    pub cross_subsidy_in: f64,
    pub cross_subsidy_out: f64,
    pub subsidy: f64,
    pub government_cost: f64,
    pub viable: bool,
}

impl AssessmentResult {
    /// Revenue minus private cost.
    pub fn margin(&self) -> f64 {
        self.revenue_npv - self.private_cost
    }
}

/// Licence cost of the `generation` portfolio for `population` people.
/// Sub-GHz bands are priced as coverage spectrum, the rest as capacity.
pub fn spectrum_cost(population: f64, generation: Generation, params: &CountryParams) -> f64 {
    params
        .spectrum
        .bands(generation)
        .iter()
        .map(|b| {
            let price = if b.is_coverage() {
                params.spectrum_price.coverage
            } else {
                params.spectrum_price.capacity
            };
            price * b.bandwidth_mhz * population
        })
        .sum()
}

pub fn tax(network_investment: f64, rate: f64) -> f64 {
    rate * network_investment
}

pub fn profit(cost_base: f64, margin: f64) -> f64 {
    margin * cost_base
}

/// Region result before any transfers: private cost and viability only.
pub fn assess_region(
    revenue_npv: f64,
    cost: &CostBreakdown,
    population: f64,
    generation: Generation,
    params: &CountryParams,
) -> AssessmentResult {
    let network = cost.network_total - cost.admin;
    let spectrum = spectrum_cost(population, generation, params);
    let tax = tax(cost.network_total, params.tax_rate);
    let base = network + cost.admin + spectrum + tax;
    let profit = profit(base, params.profit_margin);
    let private_cost = base + profit;
    AssessmentResult {
        region_id: cost.region_id.clone(),
        revenue_npv,
        network,
        admin: cost.admin,
        spectrum,
        tax,
        profit,
        private_cost,
        viable: revenue_npv >= private_cost,
        ..AssessmentResult::default()
    }
}

/// Indices of `results` from most to least viable; ties by region id.
fn viability_order(results: &[AssessmentResult]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..results.len()).collect();
    order.sort_by(|&a, &b| {
        results[b]
            .margin()
            .total_cmp(&results[a].margin())
            .then_with(|| results[a].region_id.cmp(&results[b].region_id))
    });
    order
}

/// Moves surplus revenue from viable regions into unviable ones.
///
/// The pooled surplus fills shortfalls starting with the region closest to
/// viability. What is drawn is taken from donors starting with the most
/// viable, so a donor keeps any surplus the pool did not need. The outcome
/// does not depend on the input order.
pub fn cross_subsidize(results: &mut [AssessmentResult]) {
    let order = viability_order(results);
    for r in results.iter_mut() {
        r.cross_subsidy_in = 0.0;
        r.cross_subsidy_out = 0.0;
    }
    let pool: f64 = order.iter().map(|&i| results[i].margin().max(0.0)).sum();

    let mut left = pool;
    let mut drawn = 0.0;
    for &i in &order {
        let shortfall = -results[i].margin();
        if shortfall <= 0.0 {
            continue;
        }
        if left <= 0.0 {
            break;
        }
        let take = shortfall.min(left);
        results[i].cross_subsidy_in = take;
        left -= take;
        drawn += take;
    }

    for &i in &order {
        let surplus = results[i].margin();
        if surplus <= 0.0 || drawn <= 0.0 {
            break;
        }
        let give = surplus.min(drawn);
        results[i].cross_subsidy_out = give;
        drawn -= give;
    }
}

/// State funding left after cross-subsidy, then the net cost to government.
///
/// The state covers the operator's costs, not its margin: the subsidy is what
/// remains of `private_cost - profit - revenue` once transfers are counted.
/// A region whose transfers already cover that gets nothing.
pub fn state_subsidy(results: &mut [AssessmentResult]) {
    for r in results.iter_mut() {
        r.subsidy = (r.private_cost - r.profit - r.revenue_npv - r.cross_subsidy_in).max(0.0);
        r.government_cost = government_cost(r);
    }
}

/// Subsidy paid minus spectrum and tax collected; negative means net revenue.
pub fn government_cost(result: &AssessmentResult) -> f64 {
    result.subsidy - (result.spectrum + result.tax)
}

/// Cross-subsidy followed by state subsidy.
pub fn settle(results: &mut [AssessmentResult]) {
    cross_subsidize(results);
    state_subsidy(results);
}
