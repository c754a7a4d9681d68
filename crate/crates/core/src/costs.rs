//! Pricing of network plans.
//!
//! Capex falls in the base year; opex is paid every year of the horizon and
//! discounted. Link opex is a fixed fraction of the link's capex, and existing
//! links pay that fraction of what an equivalent new link would cost.

use crate::error::{Error, Result};
use crate::model::{horizon, CostBook, Geotype, Sharing, BASE_YEAR};
use crate::supply::{Link, LinkKind, RegionNetworkPlan, MAX_HOP_M};

/// What happens to a site under a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteKind {
    New,
    /// Existing tower, new radios.
    Upgrade,
    Reuse,
}

pub fn site_capex(kind: SiteKind, book: &CostBook) -> f64 {
    match kind {
        SiteKind::New => book.active_equipment_capex + book.tower_capex + book.installation_capex,
        SiteKind::Upgrade => book.active_equipment_capex + book.installation_capex,
        SiteKind::Reuse => 0.0,
    }
}

pub fn site_opex_annual(geotype: Geotype, book: &CostBook) -> f64 {
    book.om_opex + book.power_opex + book.site_rental_opex.get(geotype)
}

pub fn site_opex_npv(geotype: Geotype, book: &CostBook, discount_rate: f64) -> f64 {
    annual_npv(site_opex_annual(geotype, book), discount_rate)
}

/// `Σ cf · (1 + rate)^-(year - 2020)`.
pub fn npv(cashflows: impl IntoIterator<Item = (i32, f64)>, rate: f64) -> f64 {
    cashflows
        .into_iter()
        .map(|(year, cf)| cf / (1.0 + rate).powi(year - BASE_YEAR))
        .sum()
}

/// NPV of the same amount paid every year of the horizon.
pub fn annual_npv(amount: f64, rate: f64) -> f64 {
    npv(horizon().map(|y| (y, amount)), rate)
}

/// One-off capital charge on `capex`.
pub fn finance_cost(capex: f64, wacc: f64) -> f64 {
    capex * wacc
}

fn wireless_unit_price(hop_m: f64, book: &CostBook) -> f64 {
    let w = &book.wireless_unit;
    if hop_m < 10_000.0 {
        w.small
    } else if hop_m < 20_000.0 {
        w.medium
    } else {
        w.large
    }
}

/// Capex of a wireless link split greedily into 40 km hops plus a remainder.
fn wireless_capex(length_m: f64, book: &CostBook) -> f64 {
    let units = f64::from(book.wireless_units_per_hop);
    let full = (length_m / MAX_HOP_M).floor();
    let rest = length_m - full * MAX_HOP_M;
    let mut capex = full * units * wireless_unit_price(MAX_HOP_M, book);
    if rest > 0.0 {
        capex += units * wireless_unit_price(rest, book);
    }
    capex
}

/// `(capex, annual opex)` of a link in a region of `geotype`.
pub fn link_cost(link: &Link, geotype: Geotype, book: &CostBook) -> Result<(f64, f64)> {
    if !(link.length_m >= 0.0 && link.length_m.is_finite()) {
        return Err(Error::validation(format!(
            "link {} -> {} has invalid length {}",
            link.from, link.to, link.length_m
        )));
    }
    let fiber = link.length_m * book.fiber_per_m.get(geotype);
    let equivalent = match link.kind {
        LinkKind::ExistingFiber
        | LinkKind::ExistingCopper
        | LinkKind::NewCoreFiber
        | LinkKind::NewBackhaulFiber => fiber,
        LinkKind::ExistingWireless | LinkKind::NewBackhaulWireless => {
            wireless_capex(link.length_m, book)
        }
    };
    let capex = if link.kind.is_existing() {
        0.0
    } else {
        equivalent
    };
    Ok((capex, equivalent * book.link_opex_fraction))
}

/// Itemized cost of one region, before or after sharing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CostBreakdown {
    pub region_id: String,
    /// Radio equipment.
    pub active_capex: f64,
    /// Towers and installation.
    pub passive_capex: f64,
    /// Operation, maintenance and power.
    pub active_opex_npv: f64,
    pub rental_opex_npv: f64,
    pub backhaul_capex: f64,
    pub backhaul_opex_npv: f64,
    pub core_capex: f64,
    pub core_opex_npv: f64,
    pub finance: f64,
    pub admin: f64,
    pub network_total: f64,
}

impl CostBreakdown {
    pub fn ran_capex(&self) -> f64 {
        self.active_capex + self.passive_capex
    }

    pub fn ran_opex_npv(&self) -> f64 {
        self.active_opex_npv + self.rental_opex_npv
    }

    pub fn total_capex(&self) -> f64 {
        self.ran_capex() + self.backhaul_capex + self.core_capex
    }

    /// Recomputes finance, admin and the total from the other components.
    fn settle(mut self, book: &CostBook, wacc: f64) -> Self {
        self.finance = finance_cost(self.total_capex(), wacc);
        self.admin = book.admin_fraction * (self.ran_capex() + self.ran_opex_npv());
        self.network_total = self.ran_capex()
            + self.ran_opex_npv()
            + self.backhaul_capex
            + self.backhaul_opex_npv
            + self.core_capex
            + self.core_opex_npv
            + self.finance
            + self.admin;
        self
    }
}

/// Prices a plan for a single operator, with nothing shared.
///
/// Opex is paid on every site the plan relies on, reused ones included. The
/// region's first link is its tree edge toward the core; every other link
/// counts as backhaul.
pub fn cost_plan(
    plan: &RegionNetworkPlan,
    book: &CostBook,
    discount_rate: f64,
    wacc: f64,
) -> Result<CostBreakdown> {
    let built = (plan.new_sites + plan.upgraded_sites) as f64;
    let sites = plan.required_sites as f64;
    let annuity = annual_npv(1.0, discount_rate);

    let mut cost = CostBreakdown {
        region_id: plan.region_id.clone(),
        active_capex: built * book.active_equipment_capex,
        passive_capex: plan.new_sites as f64 * book.tower_capex + built * book.installation_capex,
        active_opex_npv: sites * (book.om_opex + book.power_opex) * annuity,
        rental_opex_npv: sites * book.site_rental_opex.get(plan.geotype) * annuity,
        ..CostBreakdown::default()
    };
    for link in &plan.backhaul_links {
        let (capex, opex) = link_cost(link, plan.geotype, book)?;
        if link.kind == LinkKind::NewCoreFiber {
            cost.core_capex += capex;
            cost.core_opex_npv += opex * annuity;
        } else {
            cost.backhaul_capex += capex;
            cost.backhaul_opex_npv += opex * annuity;
        }
    }
    Ok(cost.settle(book, wacc))
}

/// Divides the categories shared under `sharing` equally between `mno_count`
/// operators, then re-derives finance, admin and the total.
pub fn apply_sharing(
    cost: &CostBreakdown,
    sharing: Sharing,
    geotype: Geotype,
    mno_count: u32,
    book: &CostBook,
    wacc: f64,
) -> CostBreakdown {
    let n = f64::from(mno_count.max(1));
    let level = match sharing {
        Sharing::Baseline => 0,
        Sharing::PassiveSite => 1,
        Sharing::PassiveBackhaul => 2,
        Sharing::Moran => 3,
        Sharing::Srn if geotype == Geotype::Rural => 3,
        Sharing::Srn => 0,
    };
    let mut c = cost.clone();
    if level >= 1 {
        c.passive_capex /= n;
        c.rental_opex_npv /= n;
    }
    if level >= 2 {
        c.backhaul_capex /= n;
        c.backhaul_opex_npv /= n;
        c.core_capex /= n;
        c.core_opex_npv /= n;
    }
    if level >= 3 {
        c.active_capex /= n;
        c.active_opex_npv /= n;
    }
    c.settle(book, wacc)
}
