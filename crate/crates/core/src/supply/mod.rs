//! Brownfield baseline and least-cost network design.
//!
//! Existing sites are estimated per region from a national total, labelled
//! with the technology from a coverage map, and subtracted from what the
//! capacity tables say is needed. Regions are wired to the fiber network by a
//! minimum spanning tree ([`design_backhaul`]).

mod mst;

use std::collections::HashMap;

pub use mst::{design_backhaul, minimum_spanning_tree, BackhaulTree};

use crate::capacity::{required_site_density, CapacityLut, Environment};
use crate::error::{Error, Result};
use crate::model::{
    Backhaul, BackhaulMix, CountryParams, Geotype, GeotypeThresholds, Region, Strategy, Technology,
};

/// Longest single wireless hop.
pub const MAX_HOP_M: f64 = 40_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    ExistingFiber,
    /// Existing copper backhaul; maintained at the fiber-equivalent rate.
    ExistingCopper,
    ExistingWireless,
    NewCoreFiber,
    NewBackhaulFiber,
    NewBackhaulWireless,
}

impl LinkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkKind::ExistingFiber => "existing_fiber",
            LinkKind::ExistingCopper => "existing_copper",
            LinkKind::ExistingWireless => "existing_wireless",
            LinkKind::NewCoreFiber => "new_core_fiber",
            LinkKind::NewBackhaulFiber => "new_backhaul_fiber",
            LinkKind::NewBackhaulWireless => "new_backhaul_wireless",
        }
    }

    pub fn is_existing(self) -> bool {
        matches!(
            self,
            LinkKind::ExistingFiber | LinkKind::ExistingCopper | LinkKind::ExistingWireless
        )
    }

    pub fn is_wireless(self) -> bool {
        matches!(
            self,
            LinkKind::ExistingWireless | LinkKind::NewBackhaulWireless
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub from: String,
    pub to: String,
    pub length_m: f64,
    pub kind: LinkKind,
    /// Radio hops; zero for wired links.
    pub hops: u32,
}

impl Link {
    pub fn new(
        from: impl Into<String>,
        to: impl Into<String>,
        length_m: f64,
        kind: LinkKind,
    ) -> Self {
        let length_m = length_m.max(0.0);
        Link {
            from: from.into(),
            to: to.into(),
            length_m,
            kind,
            hops: if kind.is_wireless() {
                wireless_hops(length_m)
            } else {
                0
            },
        }
    }

    /// Relabels regional backhaul to match `backhaul`; other kinds are kept.
    pub fn for_backhaul(&self, backhaul: Backhaul) -> Link {
        match self.kind {
            LinkKind::NewBackhaulFiber | LinkKind::NewBackhaulWireless => Link::new(
                self.from.clone(),
                self.to.clone(),
                self.length_m,
                new_backhaul_kind(backhaul),
            ),
            _ => self.clone(),
        }
    }
}

pub fn wireless_hops(length_m: f64) -> u32 {
    (length_m / MAX_HOP_M).ceil() as u32
}

fn new_backhaul_kind(backhaul: Backhaul) -> LinkKind {
    match backhaul {
        Backhaul::Fiber => LinkKind::NewBackhaulFiber,
        Backhaul::Wireless => LinkKind::NewBackhaulWireless,
    }
}

/// Sites, links and flags for one region under one strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionNetworkPlan {
    pub region_id: String,
    pub geotype: Geotype,
    pub existing_sites_mno: u64,
    pub existing_tech: Technology,
    pub required_sites: u64,
    pub upgraded_sites: u64,
    /// Existing sites already on the target generation, kept as they are.
    pub reused_sites: u64,
    pub new_sites: u64,
    pub backhaul_links: Vec<Link>,
    pub capacity_shortfall: bool,
}

impl RegionNetworkPlan {
    /// Links to the sites built or upgraded in this region.
    pub fn site_links(&self) -> impl Iterator<Item = &Link> {
        self.backhaul_links
            .iter()
            .filter(|l| l.from == self.region_id && l.to.starts_with(&self.site_prefix()))
    }

    fn site_prefix(&self) -> String {
        format!("{}/site", self.region_id)
    }
}

/// Existing sites per region from the national total, in input order.
///
/// Regions with a measured count keep it, and it is taken out of the national
/// budget. The rest are ranked by population density (ties by id) and given
/// `pop · total_sites / (total_pop · coverage / 100)` each until the budget
/// runs out; the region that exhausts it gets the remainder and later ones get
/// nothing.
pub fn allocate_existing_sites(regions: &[Region], params: &CountryParams) -> Result<Vec<f64>> {
    if !(params.total_coverage > 0.0) {
        return Err(Error::validation(
            "total_coverage must be > 0 to allocate sites",
        ));
    }
    let total_sites = params.national_sites();
    let covered_pop = params.total_pop * params.total_coverage / 100.0;
    let mut out = vec![0.0; regions.len()];
    let mut remaining = total_sites;
    for (i, r) in regions.iter().enumerate() {
        if let Some(measured) = r.existing_sites {
            out[i] = measured;
            remaining -= measured;
        }
    }
    remaining = remaining.max(0.0);

    let mut order: Vec<usize> = (0..regions.len())
        .filter(|&i| regions[i].existing_sites.is_none())
        .collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (&regions[a], &regions[b]);
        rb.population_density()
            .total_cmp(&ra.population_density())
            .then_with(|| ra.id.cmp(&rb.id))
    });
    for i in order {
        let want = regions[i].population * total_sites / covered_pop;
        let given = want.min(remaining);
        out[i] = given;
        remaining -= given;
    }
    Ok(out)
}

/// The modelled operator's share of a region's existing sites.
pub fn mno_existing_sites(total_sites: f64, market_share: f64) -> u64 {
    // Nudge so that e.g. 100 · 0.29 is not floored to 28.
    (total_sites * market_share + 1e-9).floor().max(0.0) as u64
}

pub fn assign_technology(region: &Region, coverage: &HashMap<String, Technology>) -> Technology {
    coverage
        .get(&region.id)
        .copied()
        .unwrap_or(Technology::None)
}

pub fn classify_geotype(region: &Region, thresholds: &GeotypeThresholds) -> Geotype {
    let density = region.population_density();
    if density > thresholds.urban {
        Geotype::Urban
    } else if density >= thresholds.suburban {
        Geotype::Suburban
    } else {
        Geotype::Rural
    }
}

/// Site counts for one region (links are added by [`plan_region`]).
#[allow(clippy::too_many_arguments)]
pub fn dimension_ran(
    demand: f64,
    region: &Region,
    geotype: Geotype,
    existing_mno: u64,
    existing_tech: Technology,
    strategy: &Strategy,
    lut: &CapacityLut,
) -> Result<RegionNetworkPlan> {
    let table = lut.table(strategy.generation, Environment::for_geotype(geotype))?;
    let density = required_site_density(demand, table);
    let required = ceil_tolerant(density.density * region.area_km2);
    let kept = existing_mno.min(required);
    let (upgraded, reused) = if existing_tech.matches(strategy.generation) {
        (0, kept)
    } else {
        (kept, 0)
    };
    Ok(RegionNetworkPlan {
        region_id: region.id.clone(),
        geotype,
        existing_sites_mno: existing_mno,
        existing_tech,
        required_sites: required,
        upgraded_sites: upgraded,
        reused_sites: reused,
        new_sites: required - kept,
        backhaul_links: Vec::new(),
        capacity_shortfall: density.capacity_shortfall,
    })
}

/// Ceiling that ignores floating-point dust, so 12.000000001 sites is 12.
fn ceil_tolerant(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r.max(0.0) as u64
    } else {
        x.ceil().max(0.0) as u64
    }
}

/// Mean distance (m) from a site to the regional node, treating sites as
/// spread uniformly over the region.
pub fn spur_length_m(area_km2: f64, sites: u64) -> f64 {
    if sites == 0 {
        return 0.0;
    }
    0.5 * (area_km2 / sites as f64).sqrt() * 1000.0
}

/// Largest-remainder split of `sites` into fiber, copper, wireless and
/// satellite counts. Ties in the remainder go to the earlier category.
pub fn existing_backhaul_mix(sites: u64, mix: &BackhaulMix) -> [u64; 4] {
    let shares = mix.shares();
    let total: f64 = shares.iter().sum();
    let quotas: Vec<f64> = shares.iter().map(|s| sites as f64 * s / total).collect();
    let mut counts = [0u64; 4];
    for (c, q) in counts.iter_mut().zip(&quotas) {
        // Shares like 0.84 · 100 can land just under the integer.
        *c = (q + 1e-9).floor() as u64;
    }
    let assigned: u64 = counts.iter().sum();
    let mut order: [usize; 4] = [0, 1, 2, 3];
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - counts[a] as f64;
        let rb = quotas[b] - counts[b] as f64;
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(sites.saturating_sub(assigned) as usize) {
        counts[i] += 1;
    }
    counts
}

/// Full plan for one region: dimensioned sites, its tree edge to the core,
/// one spur per new or upgraded site, and the existing backhaul of reused sites.
#[allow(clippy::too_many_arguments)]
pub fn plan_region(
    demand: f64,
    region: &Region,
    geotype: Geotype,
    existing_mno: u64,
    existing_tech: Technology,
    strategy: &Strategy,
    lut: &CapacityLut,
    regional_link: Link,
    mix: &BackhaulMix,
) -> Result<RegionNetworkPlan> {
    let mut plan = dimension_ran(
        demand,
        region,
        geotype,
        existing_mno,
        existing_tech,
        strategy,
        lut,
    )?;
    let spur = spur_length_m(region.area_km2, plan.required_sites);
    let kind = new_backhaul_kind(strategy.backhaul);
    let built = plan.new_sites + plan.upgraded_sites;
    let mut links = Vec::with_capacity(1 + built as usize + 3);
    links.push(regional_link);
    for k in 0..built {
        links.push(Link::new(
            region.id.clone(),
            format!("{}/site{k}", region.id),
            spur,
            kind,
        ));
    }
    let [fiber, copper, wireless, _satellite] = existing_backhaul_mix(plan.reused_sites, mix);
    let mut k = built;
    for (count, kind) in [
        (fiber, LinkKind::ExistingFiber),
        (copper, LinkKind::ExistingCopper),
        (wireless, LinkKind::ExistingWireless),
    ] {
        for _ in 0..count {
            links.push(Link::new(
                region.id.clone(),
                format!("{}/existing{k}", region.id),
                spur,
                kind,
            ));
            k += 1;
        }
    }
    plan.backhaul_links = links;
    Ok(plan)
}
