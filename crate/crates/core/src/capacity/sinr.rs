//! Monte Carlo downlink SINR over a hexagonal macro layout.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::propagation::median_path_loss;
use super::{Environment, SimParams};

/// Thermal noise density at 290 K.
const THERMAL_NOISE_DBM_HZ: f64 = -174.0;
/// Carrier width that `tx_power_dbm` refers to.
const REFERENCE_BANDWIDTH_HZ: f64 = 10e6;
const SECTOR_BEAMWIDTH_DEG: f64 = 65.0;
const SECTOR_FRONT_TO_BACK_DB: f64 = 20.0;

/// Site positions (m) of a hexagonal layout centred on the origin.
///
/// `rings = 2` gives the serving site plus 18 interferers.
pub fn hex_layout(rings: u32, isd_m: f64) -> Vec<(f64, f64)> {
    let n = rings as i32;
    let mut sites = Vec::new();
    for q in -n..=n {
        for r in -n..=n {
            if (q + r).abs() <= n {
                let x = isd_m * (f64::from(q) + f64::from(r) / 2.0);
                let y = isd_m * f64::from(r) * 3f64.sqrt() / 2.0;
                sites.push((x, y));
            }
        }
    }
    // Serving site first, rest in a fixed order.
    sites.sort_by(|a, b| {
        let ka = (a.0.hypot(a.1), a.1, a.0);
        let kb = (b.0.hypot(b.1), b.1, b.0);
        ka.partial_cmp(&kb).expect("finite coordinates")
    });
    sites
}

/// Inter-site distance (m) such that each hexagonal cell covers `1 / site_density` km².
pub fn inter_site_distance_m(site_density: f64) -> f64 {
    (2.0 / (3f64.sqrt() * site_density)).sqrt() * 1000.0
}

fn in_central_hex(x: f64, y: f64, isd_m: f64) -> bool {
    let half = isd_m / 2.0;
    [0.0f64, 60.0, 120.0].iter().all(|deg| {
        let (s, c) = deg.to_radians().sin_cos();
        (x * c + y * s).abs() <= half
    })
}

fn sample_user(rng: &mut ChaCha8Rng, isd_m: f64) -> (f64, f64) {
    let half_w = isd_m / 2.0;
    let half_h = isd_m / 3f64.sqrt();
    loop {
        let x = (rng.random::<f64>() * 2.0 - 1.0) * half_w;
        let y = (rng.random::<f64>() * 2.0 - 1.0) * half_h;
        if in_central_hex(x, y, isd_m) {
            return (x, y);
        }
    }
}

fn sector_gain_db(azimuth_deg: f64, sector: u32, sectors: u32) -> f64 {
    if sectors <= 1 {
        return 0.0;
    }
    let boresight = 360.0 / f64::from(sectors) * f64::from(sector);
    let mut off = (azimuth_deg - boresight).rem_euclid(360.0);
    if off > 180.0 {
        off = 360.0 - off;
    }
    -(12.0 * (off / SECTOR_BEAMWIDTH_DEG).powi(2)).min(SECTOR_FRONT_TO_BACK_DB)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent random stream for one simulation cell.
///
/// The stream depends on the environment, density and carrier frequency but
/// not on the generation, so 3G and 4G lookups see the same SINR samples.
pub(crate) fn cell_rng(
    seed: u64,
    environment: Environment,
    site_density: f64,
    frequency_mhz: f64,
) -> ChaCha8Rng {
    let env = match environment {
        Environment::Urban => 1,
        Environment::Rural => 2,
    };
    let stream =
        splitmix64(splitmix64(splitmix64(env) ^ site_density.to_bits()) ^ frequency_mhz.to_bits());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Empirical SINR distribution (dB) for users dropped uniformly in the
/// central cell. `sim.iterations` samples; reproducible for a fixed seed.
///
/// SINR does not depend on carrier bandwidth: transmit power is specified per
/// reference carrier, so power and noise both scale with bandwidth.
pub fn simulate_sinr(
    site_density: f64,
    frequency_mhz: f64,
    environment: Environment,
    sim: &SimParams,
) -> Vec<f64> {
    assert!(site_density > 0.0, "site density must be positive");
    let isd = inter_site_distance_m(site_density);
    let sites = hex_layout(sim.interference_rings, isd);
    let sigma = sim.shadow_sigma_db(environment);
    let tx_psd = sim.tx_power_dbm - 10.0 * REFERENCE_BANDWIDTH_HZ.log10() + sim.antenna_gain_dbi;
    let noise_mw = 10f64.powf((THERMAL_NOISE_DBM_HZ + sim.noise_figure_db) / 10.0);
    let sectors = sim.sectors_per_site.max(1);

    let mut rng = cell_rng(sim.seed, environment, site_density, frequency_mhz);
    let mut out = Vec::with_capacity(sim.iterations as usize);
    for _ in 0..sim.iterations {
        let (ux, uy) = sample_user(&mut rng, isd);
        let mut best = 0.0f64;
        let mut total = 0.0f64;
        for &(sx, sy) in &sites {
            let shadow: f64 = rng.sample::<f64, _>(StandardNormal) * sigma;
            let (dx, dy) = (ux - sx, uy - sy);
            let pl = median_path_loss(
                frequency_mhz,
                dx.hypot(dy),
                environment,
                sim.tx_height_m,
                sim.rx_height_m,
            );
            let azimuth = dy.atan2(dx).to_degrees();
            for sector in 0..sectors {
                let dbm = tx_psd + sector_gain_db(azimuth, sector, sectors) - pl - shadow;
                let mw = 10f64.powf(dbm / 10.0);
                total += mw;
                best = best.max(mw);
            }
        }
        let interference = total - best;
        out.push(10.0 * (best / (interference + noise_mw)).log10());
    }
    out
}

/// Signal-to-noise ratio (dB) at `distance_m` from a lone omni site with no shadowing.
pub fn snr_db(
    distance_m: f64,
    frequency_mhz: f64,
    environment: Environment,
    sim: &SimParams,
) -> f64 {
    let tx_psd = sim.tx_power_dbm - 10.0 * REFERENCE_BANDWIDTH_HZ.log10() + sim.antenna_gain_dbi;
    let pl = median_path_loss(
        frequency_mhz,
        distance_m,
        environment,
        sim.tx_height_m,
        sim.rx_height_m,
    );
    tx_psd - pl - (THERMAL_NOISE_DBM_HZ + sim.noise_figure_db)
}
