//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.
//!
//! Set `USO_UPDATE_GOLDEN=1` to rewrite `tests/golden/` from the current code.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uso_sim::assessment::{
    assess_region, cross_subsidize, government_cost, profit, settle, spectrum_cost, tax,
    AssessmentResult,
};
use uso_sim::capacity::{generate_lut, CapacityLut, SimParams};
use uso_sim::costs::{npv, CostBreakdown};
use uso_sim::demand::{revenue_npv, traffic_demand};
use uso_sim::fixtures;
use uso_sim::model::{
    Backhaul, Band, CoordinateSystem, CountryParams, Generation, Geotype, NodeCoord, Region,
    Scenario, ScenarioName, Sharing, SpectrumPortfolio, Strategy,
};
use uso_sim::report::{write_run_outputs, Model, RunOutput};
use uso_sim::supply::{allocate_existing_sites, minimum_spanning_tree};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn random_region(rng: &mut ChaCha8Rng, id: usize) -> Region {
    Region {
        id: format!("r{id:03}"),
        country: "X".into(),
        population: rng.random_range(0.0..2e6),
        area_km2: rng.random_range(1.0..50_000.0),
        mean_luminosity: rng.random_range(0.0..10.0),
        existing_sites: None,
        node: NodeCoord::new(
            rng.random_range(-500.0..500.0),
            rng.random_range(-500.0..500.0),
        ),
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> CountryParams {
    let mut p = fixtures::synthetic_config().country;
    p.market_share = rng.random_range(0.05..1.0);
    p.target_capacity = rng.random_range(1.0..20.0);
    p.obf = rng.random_range(5.0..50.0);
    p.arpu.high = rng.random_range(5.0..15.0);
    p.arpu.medium = rng.random_range(2.0..5.0);
    p.arpu.low = rng.random_range(0.5..2.0);
    p.discount_rate = rng.random_range(0.0..0.2);
    p.tax_rate = rng.random_range(0.0..0.5);
    p.profit_margin = rng.random_range(0.0..0.3);
    p.spectrum_price.coverage = rng.random_range(0.0..1.0);
    p.spectrum_price.capacity = rng.random_range(0.0..1.0);
    let mut bands = |n: usize| -> Vec<Band> {
        (0..n)
            .map(|_| Band::new(rng.random_range(600.0..2700.0), rng.random_range(0.0..20.0)))
            .collect()
    };
    let (g3, g4) = (bands(2), bands(3));
    p.spectrum = SpectrumPortfolio::new(g3, g4);
    p
}

fn random_scenario(rng: &mut ChaCha8Rng) -> Scenario {
    let mut ramp = || {
        let a: f64 = rng.random_range(0.0..1.0);
        (a, rng.random_range(0.0..1.0))
    };
    let (pen, sp) = (ramp(), ramp());
    Scenario::linear(ScenarioName::Baseline, pen, sp)
}

/// Adoption read straight off the scenario vectors by year.
fn adoption(s: &Scenario, year: i32) -> (f64, f64) {
    let k = s.years.iter().position(|&y| y == year).unwrap();
    (s.penetration[k], s.smartphone_penetration[k])
}

fn oracle_demand(r: &Region, s: &Scenario, p: &CountryParams) -> f64 {
    let mut peak = 0.0f64;
    for year in 2020..=2030 {
        let (pen, sp) = adoption(s, year);
        let users = r.population * pen * sp * p.market_share;
        peak = peak.max(users * p.target_capacity / p.obf / r.area_km2);
    }
    peak
}

fn oracle_revenue(r: &Region, s: &Scenario, p: &CountryParams) -> f64 {
    let arpu = if r.mean_luminosity >= 5.0 {
        p.arpu.high
    } else if r.mean_luminosity >= 1.0 {
        p.arpu.medium
    } else {
        p.arpu.low
    };
    let mut total = 0.0;
    for year in 2020..=2030 {
        let (pen, sp) = adoption(s, year);
        let users = r.population * pen * sp * p.market_share;
        total += users * arpu * 12.0 / (1.0 + p.discount_rate).powf(f64::from(year - 2020));
    }
    total
}

fn oracle_spectrum(pop: f64, g: Generation, p: &CountryParams) -> f64 {
    let mut total = 0.0;
    for b in p.spectrum.bands(g) {
        let price = if b.frequency_mhz < 1000.0 {
            p.spectrum_price.coverage
        } else {
            p.spectrum_price.capacity
        };
        total += price * b.bandwidth_mhz * pop;
    }
    total
}

fn c1_formula_oracles() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..100 {
        let p = random_params(&mut rng);
        let s = random_scenario(&mut rng);
        let r = random_region(&mut rng, case);
        let g = if rng.random_bool(0.5) {
            Generation::G3
        } else {
            Generation::G4
        };
        let fail =
            |name: &str, got: f64, want: f64| format!("case {case}: {name} {got} vs oracle {want}");

        let (got, want) = (traffic_demand(&r, &s, &p), oracle_demand(&r, &s, &p));
        check(rel_close(got, want, 1e-9), || {
            fail("traffic_demand", got, want)
        })?;
        let (got, want) = (revenue_npv(&r, &s, &p), oracle_revenue(&r, &s, &p));
        check(rel_close(got, want, 1e-9), || {
            fail("revenue_npv", got, want)
        })?;
        let (got, want) = (
            spectrum_cost(r.population, g, &p),
            oracle_spectrum(r.population, g, &p),
        );
        check(rel_close(got, want, 1e-9), || {
            fail("spectrum_cost", got, want)
        })?;

        let base: f64 = rng.random_range(0.0..1e9);
        check(
            rel_close(tax(base, p.tax_rate), base * p.tax_rate, 1e-9),
            || fail("tax", tax(base, p.tax_rate), base * p.tax_rate),
        )?;
        check(
            rel_close(profit(base, p.profit_margin), base * p.profit_margin, 1e-9),
            || {
                fail(
                    "profit",
                    profit(base, p.profit_margin),
                    base * p.profit_margin,
                )
            },
        )?;

        let admin: f64 = rng.random_range(0.0..1e7);
        let cost = CostBreakdown {
            region_id: r.id.clone(),
            admin,
            network_total: admin + rng.random_range(0.0..1e8),
            ..CostBreakdown::default()
        };
        let revenue = rng.random_range(0.0..2e8);
        let a = assess_region(revenue, &cost, r.population, g, &p);
        let spectrum = oracle_spectrum(r.population, g, &p);
        let tax_paid = p.tax_rate * cost.network_total;
        let want = (cost.network_total + spectrum + tax_paid) * (1.0 + p.profit_margin);
        check(rel_close(a.private_cost, want, 1e-9), || {
            fail("private_cost", a.private_cost, want)
        })?;

        let mut one = vec![a];
        settle(&mut one);
        let a = &one[0];
        let subsidy =
            (want - p.profit_margin * (cost.network_total + spectrum + tax_paid) - revenue)
                .max(0.0);
        let want_gov = subsidy - spectrum - tax_paid;
        check(rel_close(a.government_cost, want_gov, 1e-9), || {
            fail("government_cost (settled)", a.government_cost, want_gov)
        })?;
        let direct = AssessmentResult {
            subsidy: rng.random_range(0.0..1e8),
            spectrum: rng.random_range(0.0..1e7),
            tax: rng.random_range(0.0..1e7),
            ..AssessmentResult::default()
        };
        let want = direct.subsidy - (direct.spectrum + direct.tax);
        check(rel_close(government_cost(&direct), want, 1e-9), || {
            fail("government_cost", government_cost(&direct), want)
        })?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("7 formulas x 100 inputs in {elapsed:.2?}"))
}

fn c2_npv_closed_form() -> Outcome {
    let three = npv([(2020, 100.0), (2021, 100.0), (2022, 100.0)], 0.05);
    check((three - 285.941_043_083_900_2).abs() < 1e-9, || {
        format!("three-year case gave {three}")
    })?;
    check(format!("{three:.2}") == "285.94", || {
        format!("three-year case rounds to {three:.2}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let c: f64 = rng.random_range(0.0..1e6);
        let r: f64 = rng.random_range(0.001..0.3);
        let n: i32 = rng.random_range(1..=30);
        let got = npv((0..n).map(|t| (2020 + t, c)), r);
        let closed = c * (1.0 - (1.0 + r).powi(-n)) / (1.0 - 1.0 / (1.0 + r));
        check(rel_close(got, closed, 1e-9), || {
            format!("c={c} r={r} n={n}: {got} vs {closed}")
        })?;
    }
    Ok(format!("three-year case {three:.2}; 100 random streams"))
}

/// Minimum over every (n-1)-edge subset of the complete graph that is acyclic.
fn exhaustive_mst(n: usize, w: &dyn Fn(usize, usize) -> f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(n - 1);
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] == x {
            x
        } else {
            let r = find(parent, parent[x]);
            parent[x] = r;
            r
        }
    }
    fn walk(
        start: usize,
        edges: &[(usize, usize)],
        n: usize,
        chosen: &mut Vec<usize>,
        w: &dyn Fn(usize, usize) -> f64,
        best: &mut f64,
    ) {
        if chosen.len() == n - 1 {
            let mut parent: Vec<usize> = (0..n).collect();
            for &e in chosen.iter() {
                let (a, b) = edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return;
                }
                parent[ra] = rb;
            }
            let mut ws: Vec<f64> = chosen.iter().map(|&e| w(edges[e].0, edges[e].1)).collect();
            ws.sort_by(f64::total_cmp);
            *best = best.min(ws.iter().sum());
            return;
        }
        for e in start..edges.len() {
            chosen.push(e);
            walk(e + 1, edges, n, chosen, w, best);
            chosen.pop();
        }
    }
    walk(0, &edges, n, &mut chosen, w, &mut best);
    best
}

fn c3_mst() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let coords = CoordinateSystem::PlanarKm;
    for case in 0..200 {
        let n = rng.random_range(1..=7);
        let pops = rng.random_range(0..=n.min(3));
        let pts: Vec<NodeCoord> = (0..n)
            .map(|_| NodeCoord::new(rng.random_range(0.0..300.0), rng.random_range(0.0..300.0)))
            .collect();
        // The first `pops` nodes are on the backbone and join each other for free.
        let w = |i: usize, j: usize| {
            if i < pops && j < pops {
                0.0
            } else {
                coords.distance_km(pts[i], pts[j])
            }
        };
        let tree = minimum_spanning_tree(n, w);
        check(tree.len() == n.saturating_sub(1), || {
            format!("case {case}: {} edges for {n} nodes", tree.len())
        })?;
        let mut ws: Vec<f64> = tree.iter().map(|e| e.2).collect();
        ws.sort_by(f64::total_cmp);
        let got: f64 = ws.iter().sum();
        let want = exhaustive_mst(n, &w);
        check(got == want, || {
            format!("case {case}: tree weight {got} vs exhaustive {want}")
        })?;
    }
    Ok("200 instances, exact total weight".into())
}

fn c4_allocation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..50 {
        let n = rng.random_range(1..=12);
        let mut regions: Vec<Region> = (0..n).map(|i| random_region(&mut rng, i)).collect();
        for r in regions.iter_mut() {
            if rng.random_bool(0.2) {
                r.existing_sites = Some(rng.random_range(0.0..200.0f64).round());
            }
        }
        let mut p = fixtures::synthetic_config().country;
        p.total_pop =
            regions.iter().map(|r| r.population).sum::<f64>() * rng.random_range(1.0..2.0);
        p.total_coverage = rng.random_range(10.0..100.0);
        p.total_sites = Some(rng.random_range(10.0..3000.0f64).round());
        let got = allocate_existing_sites(&regions, &p).map_err(|e| e.to_string())?;

        // Cumulative allocator: walk the density ranking keeping a running total.
        let total = p.total_sites.unwrap();
        let measured: f64 = regions.iter().filter_map(|r| r.existing_sites).sum();
        let budget = (total - measured).max(0.0);
        let mut ranked: Vec<&Region> = regions
            .iter()
            .filter(|r| r.existing_sites.is_none())
            .collect();
        ranked.sort_by(|a, b| {
            (b.population / b.area_km2)
                .partial_cmp(&(a.population / a.area_km2))
                .unwrap()
                .then(a.id.cmp(&b.id))
        });
        let mut want: HashMap<&str, f64> = HashMap::new();
        let mut cumulative = 0.0;
        for r in ranked {
            let ask = r.population * total / (p.total_pop * p.total_coverage / 100.0);
            let grant = if cumulative + ask <= budget {
                ask
            } else {
                (budget - cumulative).max(0.0)
            };
            cumulative += grant;
            want.insert(&r.id, grant);
        }
        for (r, &g) in regions.iter().zip(&got) {
            let w = r.existing_sites.unwrap_or_else(|| want[r.id.as_str()]);
            check((g - w).abs() <= 1e-9 * w.abs().max(1.0), || {
                format!("case {case}: region {} got {g}, brute force {w}", r.id)
            })?;
        }
        let estimated: f64 = regions
            .iter()
            .zip(&got)
            .filter(|(r, _)| r.existing_sites.is_none())
            .map(|(_, g)| g)
            .sum();
        check(estimated <= budget + 1e-9 * total, || {
            format!("case {case}: {estimated} allocated of {budget}")
        })?;
        if measured <= total {
            let all: f64 = got.iter().sum();
            check(all <= total + 1e-9 * total, || {
                format!("case {case}: {all} allocated of {total}")
            })?;
        }
    }
    Ok("50 fixtures: conservation and rank order".into())
}

fn c5_cross_subsidy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..100 {
        let n = rng.random_range(1..=20);
        let results: Vec<AssessmentResult> = (0..n)
            .map(|i| AssessmentResult {
                region_id: format!("r{i:02}"),
                revenue_npv: rng.random_range(0.0..1e8),
                private_cost: rng.random_range(0.0..1e8),
                ..AssessmentResult::default()
            })
            .collect();
        let mut a = results.clone();
        cross_subsidize(&mut a);
        let out: f64 = a.iter().map(|r| r.cross_subsidy_out).sum();
        let inn: f64 = a.iter().map(|r| r.cross_subsidy_in).sum();
        check((out - inn).abs() <= 1e-9 * out.max(1.0), || {
            format!("case {case}: out {out} in {inn}")
        })?;
        for r in &a {
            check(
                r.cross_subsidy_in >= 0.0 && r.cross_subsidy_in <= (-r.margin()).max(0.0) + 1e-9,
                || {
                    format!(
                        "case {case}: {} receives {} with margin {}",
                        r.region_id,
                        r.cross_subsidy_in,
                        r.margin()
                    )
                },
            )?;
            check(
                r.cross_subsidy_out >= 0.0 && r.cross_subsidy_out <= r.margin().max(0.0) + 1e-9,
                || {
                    format!(
                        "case {case}: {} gives {} with margin {}",
                        r.region_id,
                        r.cross_subsidy_out,
                        r.margin()
                    )
                },
            )?;
        }
        let mut b = results;
        b.shuffle(&mut rng);
        cross_subsidize(&mut b);
        b.sort_by(|x, y| x.region_id.cmp(&y.region_id));
        for (x, y) in a.iter().zip(&b) {
            check(
                (x.cross_subsidy_in - y.cross_subsidy_in).abs() <= 1e-9
                    && (x.cross_subsidy_out - y.cross_subsidy_out).abs() <= 1e-9,
                || format!("case {case}: {} differs after shuffling", x.region_id),
            )?;
        }
    }
    Ok("100 fixtures: conservation, caps, permutation invariance".into())
}

fn model_with(config: uso_sim::model::Config, lut: &CapacityLut) -> Model {
    Model::new(
        config,
        fixtures::synthetic_regions(),
        fixtures::synthetic_fiber_pops(),
        fixtures::synthetic_coverage(),
        lut.clone(),
    )
    .expect("fixture model builds")
}

fn c6_dollar_for_dollar(lut: &CapacityLut) -> Outcome {
    let mut totals: Vec<Vec<f64>> = Vec::new();
    for factor in [0.5, 1.0, 2.0] {
        let mut config = fixtures::synthetic_config();
        config.country.spectrum_price.coverage *= factor;
        config.country.spectrum_price.capacity *= factor;
        config
            .scenarios
            .retain(|s| s.name == ScenarioName::Baseline);
        let runs = model_with(config, lut)
            .run_grid()
            .map_err(|e| e.to_string())?;
        for run in &runs {
            check(run.regions.iter().all(|r| !r.assessment.viable), || {
                format!(
                    "{} has a viable region; the country is not fully unviable",
                    run.strategy
                )
            })?;
        }
        totals.push(runs.iter().map(RunOutput::total_government_cost).collect());
    }
    let mut worst = 0.0f64;
    for k in 0..totals[0].len() {
        for t in &totals[1..] {
            let rel = (t[k] - totals[0][k]).abs() / totals[0][k].abs();
            worst = worst.max(rel);
        }
    }
    check(worst <= 1e-6, || {
        format!("government cost moves by {worst:e} relative")
    })?;
    Ok(format!(
        "20 strategies x 3 price levels, worst drift {worst:.1e}"
    ))
}

fn grid_totals(
    runs: &[RunOutput],
    scenario: ScenarioName,
    f: fn(&RunOutput) -> f64,
) -> HashMap<Strategy, f64> {
    runs.iter()
        .filter(|r| r.scenario == scenario)
        .map(|r| (r.strategy, f(r)))
        .collect()
}

fn c7_technology_ordering(runs: &[RunOutput]) -> Outcome {
    let mut notes = Vec::new();
    for scenario in ScenarioName::ALL {
        let t = grid_totals(runs, scenario, RunOutput::total_private_cost);
        let get = |g, b| t[&Strategy::new(g, b, Sharing::Baseline)];
        let (g4w, g3w, g4f) = (
            get(Generation::G4, Backhaul::Wireless),
            get(Generation::G3, Backhaul::Wireless),
            get(Generation::G4, Backhaul::Fiber),
        );
        check(g4w < g3w && g4w < g4f, || {
            format!("{scenario}: 4G(W) {g4w:.0}, 3G(W) {g3w:.0}, 4G(F) {g4f:.0}")
        })?;
        notes.push(format!(
            "{scenario} 4G(W) saves {:.0}% on 3G(W)",
            100.0 * (1.0 - g4w / g3w)
        ));
    }
    Ok(notes.join(", "))
}

fn c8_sharing_ordering(runs: &[RunOutput], geotypes: &[Geotype]) -> Outcome {
    let order = [
        Sharing::Baseline,
        Sharing::PassiveSite,
        Sharing::PassiveBackhaul,
        Sharing::Srn,
    ];
    for scenario in ScenarioName::ALL {
        let t = grid_totals(runs, scenario, RunOutput::total_government_cost);
        for g in Generation::ALL {
            for b in Backhaul::ALL {
                let costs: Vec<f64> = order.iter().map(|&s| t[&Strategy::new(g, b, s)]).collect();
                check(costs.windows(2).all(|w| w[0] >= w[1]), || {
                    format!("{scenario} {g}/{}: baseline, passive_site, passive_backhaul, srn = {costs:.0?}", b.as_str())
                })?;
            }
        }
    }
    let find = |scenario, strategy| {
        runs.iter()
            .find(|r| r.scenario == scenario && r.strategy == strategy)
            .unwrap()
    };
    for run in runs.iter().filter(|r| r.strategy.sharing == Sharing::Srn) {
        let base = find(
            run.scenario,
            Strategy {
                sharing: Sharing::Baseline,
                ..run.strategy
            },
        );
        for ((srn, b), &geotype) in run.regions.iter().zip(&base.regions).zip(geotypes) {
            if geotype != Geotype::Rural {
                check(
                    srn.cost == b.cost && srn.assessment.private_cost == b.assessment.private_cost,
                    || {
                        format!(
                            "{} {}: srn cost differs from baseline in {}",
                            run.scenario, run.strategy, srn.region_id
                        )
                    },
                )?;
            }
        }
    }
    Ok(
        "baseline >= passive_site >= passive_backhaul >= srn in 12 cells; srn = baseline off-rural"
            .into(),
    )
}

fn c9_lut_properties(config: &uso_sim::model::Config, lut: &CapacityLut) -> Outcome {
    let sim = SimParams::default();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    lut.save(&a).map_err(|e| e.to_string())?;
    generate_lut(&config.country, &sim)
        .and_then(|l| l.save(&b))
        .map_err(|e| e.to_string())?;
    let file = uso_sim::capacity::LUT_FILE_NAME;
    let (fa, fb) = (
        fs::read(a.join(file)).unwrap(),
        fs::read(b.join(file)).unwrap(),
    );
    check(fa == fb, || {
        "two generations with the same seed differ".into()
    })?;

    for t in lut.tables() {
        check(
            t.entries
                .windows(2)
                .all(|w| w[1].capacity_density >= w[0].capacity_density),
            || {
                format!(
                    "{} {} capacity falls with density",
                    t.environment, t.generation
                )
            },
        )?;
    }

    let mut wider = config.country.clone();
    for g in Generation::ALL {
        let bands: Vec<Band> = wider
            .spectrum
            .bands(g)
            .iter()
            .map(|b| Band::new(b.frequency_mhz, b.bandwidth_mhz * 1.5))
            .collect();
        match g {
            Generation::G3 => wider.spectrum.g3.bands = bands,
            Generation::G4 => wider.spectrum.g4.bands = bands,
        }
    }
    let wide = generate_lut(&wider, &sim).map_err(|e| e.to_string())?;
    for (narrow, broad) in lut.tables().zip(wide.tables()) {
        for (x, y) in narrow.entries.iter().zip(&broad.entries) {
            check(y.capacity_density >= x.capacity_density, || {
                format!(
                    "{} {} at {}: more bandwidth gives less capacity",
                    x.environment, x.generation, x.site_density
                )
            })?;
        }
    }

    for env in uso_sim::capacity::Environment::ALL {
        let g3 = lut.table(Generation::G3, env).unwrap();
        let g4 = lut.table(Generation::G4, env).unwrap();
        for (x, y) in g3.entries.iter().zip(&g4.entries) {
            check(y.capacity_density >= x.capacity_density, || {
                format!(
                    "{env} at {} sites/km2: 4G {} < 3G {}",
                    x.site_density, y.capacity_density, x.capacity_density
                )
            })?;
        }
    }
    Ok("bit-identical regeneration, monotone in density and bandwidth, 4G >= 3G".into())
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn list(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .map(|rd| {
            rd.filter_map(|e| e.ok()?.file_name().into_string().ok())
                .collect()
        })
        .unwrap_or_default();
    names.sort();
    names
}

fn c10_end_to_end(lut: &CapacityLut, lut_time: Duration) -> Outcome {
    let start = Instant::now();
    let model = model_with(fixtures::synthetic_config(), lut);
    let runs = model.run_grid().map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let rows: Vec<_> = runs.iter().map(RunOutput::keyed_rows).collect();
    write_run_outputs(dir.path(), &rows).map_err(|e| e.to_string())?;
    lut.save(dir.path()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed() + lut_time;
    check(runs.len() == 60, || {
        format!("{} runs instead of 60", runs.len())
    })?;
    check(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;

    let golden = golden_dir();
    if std::env::var_os("USO_UPDATE_GOLDEN").is_some() {
        let _ = fs::remove_dir_all(&golden);
        fs::create_dir_all(&golden).map_err(|e| e.to_string())?;
        for name in list(dir.path()) {
            fs::copy(dir.path().join(&name), golden.join(&name)).map_err(|e| e.to_string())?;
        }
    }
    let (got, want) = (list(dir.path()), list(&golden));
    check(got == want, || {
        format!("wrote {} files, golden has {}", got.len(), want.len())
    })?;
    for name in &got {
        check(
            fs::read(dir.path().join(name)).ok() == fs::read(golden.join(name)).ok(),
            || format!("{name} differs from golden"),
        )?;
    }
    Ok(format!(
        "60 runs in {elapsed:.2?} (LUT {lut_time:.2?}), {} files match golden",
        got.len()
    ))
}

fn main() -> ExitCode {
    let config = fixtures::synthetic_config();
    let lut_start = Instant::now();
    let lut = generate_lut(&config.country, &SimParams::default()).expect("LUT generation");
    let lut_time = lut_start.elapsed();
    let model = model_with(config.clone(), &lut);
    let runs = model.run_grid().expect("fixture grid runs");

    let criteria: Vec<Criterion> = vec![
        ("formula oracles", Box::new(c1_formula_oracles)),
        ("NPV closed form", Box::new(c2_npv_closed_form)),
        ("spanning tree vs exhaustive", Box::new(c3_mst)),
        ("site allocation", Box::new(c4_allocation)),
        ("cross-subsidy", Box::new(c5_cross_subsidy)),
        ("dollar for dollar", Box::new(|| c6_dollar_for_dollar(&lut))),
        (
            "technology ordering",
            Box::new(|| c7_technology_ordering(&runs)),
        ),
        (
            "sharing ordering",
            Box::new(|| c8_sharing_ordering(&runs, model.geotypes())),
        ),
        (
            "capacity tables",
            Box::new(|| c9_lut_properties(&config, &lut)),
        ),
        ("end to end", Box::new(|| c10_end_to_end(&lut, lut_time))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
