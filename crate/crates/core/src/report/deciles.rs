use serde::Serialize;

use super::ResultRow;

/// Cumulative totals up to and including a population decile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecileRow {
    /// 1 is the densest tenth of the population.
    pub decile: u8,
    pub cumulative_population_share: f64,
    pub cumulative_private_cost: i64,
    pub cumulative_revenue: i64,
    pub cumulative_government_cost: i64,
}

/// Bins regions, densest first, into population deciles.
///
/// A region belongs to the decile in which its population starts, so a region
/// larger than a tenth of the country can leave later deciles empty. Always
/// returns ten rows.
pub fn decile_aggregate(rows: &[ResultRow]) -> Vec<DecileRow> {
    let mut sorted: Vec<&ResultRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        b.population_density()
            .total_cmp(&a.population_density())
            .then_with(|| a.region_id.cmp(&b.region_id))
    });
    let total_pop: f64 = sorted.iter().map(|r| r.population).sum();

    let mut pop = [0.0f64; 10];
    let mut private = [0i64; 10];
    let mut revenue = [0i64; 10];
    let mut government = [0i64; 10];
    let mut before = 0.0;
    for r in sorted {
        let d = if total_pop > 0.0 {
            ((before / total_pop * 10.0 + 1e-9).floor() as usize).min(9)
        } else {
            0
        };
        before += r.population;
        pop[d] += r.population;
        private[d] += r.private_cost;
        revenue[d] += r.revenue_npv;
        government[d] += r.government_cost;
    }

    let mut out = Vec::with_capacity(10);
    let (mut p, mut c, mut v, mut g) = (0.0, 0, 0, 0);
    for d in 0..10 {
        p += pop[d];
        c += private[d];
        v += revenue[d];
        g += government[d];
        out.push(DecileRow {
            decile: d as u8 + 1,
            cumulative_population_share: if total_pop > 0.0 { p / total_pop } else { 0.0 },
            cumulative_private_cost: c,
            cumulative_revenue: v,
            cumulative_government_cost: g,
        });
    }
    out
}
