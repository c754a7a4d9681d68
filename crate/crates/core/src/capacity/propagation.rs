//! Median path loss from the 3GPP TR 38.901 urban macro (UMa) and rural macro (RMa)
//! NLOS models, plus caller-supplied lognormal shadowing.

use super::Environment;

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Below this horizontal distance the models are not valid; inputs are clamped up to it.
pub const MIN_DISTANCE_M: f64 = 10.0;

pub const DEFAULT_TX_HEIGHT_M: f64 = 30.0;
pub const DEFAULT_RX_HEIGHT_M: f64 = 1.5;

/// RMa average building height and street width.
const RMA_BUILDING_HEIGHT_M: f64 = 5.0;
const RMA_STREET_WIDTH_M: f64 = 20.0;

/// Path loss in dB: the median for `environment` plus `shadowing_db`.
///
/// Uses a 30 m mast and a 1.5 m handset.
pub fn path_loss(
    frequency_mhz: f64,
    distance_m: f64,
    environment: Environment,
    shadowing_db: f64,
) -> f64 {
    median_path_loss(
        frequency_mhz,
        distance_m,
        environment,
        DEFAULT_TX_HEIGHT_M,
        DEFAULT_RX_HEIGHT_M,
    ) + shadowing_db
}

/// Median NLOS path loss in dB. Non-decreasing in both distance and frequency.
pub fn median_path_loss(
    frequency_mhz: f64,
    distance_m: f64,
    environment: Environment,
    tx_height_m: f64,
    rx_height_m: f64,
) -> f64 {
    let d2d = distance_m.max(MIN_DISTANCE_M);
    let d3d = d2d.hypot(tx_height_m - rx_height_m);
    let fc_ghz = frequency_mhz / 1000.0;
    match environment {
        Environment::Urban => uma_nlos(d2d, d3d, fc_ghz, tx_height_m, rx_height_m),
        Environment::Rural => rma_nlos(d2d, d3d, fc_ghz, tx_height_m, rx_height_m),
    }
}

fn uma_los(d2d: f64, d3d: f64, fc_ghz: f64, h_bs: f64, h_ut: f64) -> f64 {
    // Effective heights with a 1 m environment height.
    let d_bp = 4.0 * (h_bs - 1.0) * (h_ut - 1.0).max(0.0) * fc_ghz * 1e9 / SPEED_OF_LIGHT;
    if d2d <= d_bp {
        28.0 + 22.0 * d3d.log10() + 20.0 * fc_ghz.log10()
    } else {
        28.0 + 40.0 * d3d.log10() + 20.0 * fc_ghz.log10()
            - 9.0 * (d_bp * d_bp + (h_bs - h_ut).powi(2)).log10()
    }
}

fn uma_nlos(d2d: f64, d3d: f64, fc_ghz: f64, h_bs: f64, h_ut: f64) -> f64 {
    let nlos = 13.54 + 39.08 * d3d.log10() + 20.0 * fc_ghz.log10() - 0.6 * (h_ut - 1.5);
    nlos.max(uma_los(d2d, d3d, fc_ghz, h_bs, h_ut))
}

fn rma_pl1(d3d: f64, fc_ghz: f64) -> f64 {
    let h = RMA_BUILDING_HEIGHT_M;
    20.0 * (40.0 * std::f64::consts::PI * d3d * fc_ghz / 3.0).log10()
        + (0.03 * h.powf(1.72)).min(10.0) * d3d.log10()
        - (0.044 * h.powf(1.72)).min(14.77)
        + 0.002 * h.log10() * d3d
}

fn rma_los(d2d: f64, d3d: f64, fc_ghz: f64, h_bs: f64, h_ut: f64) -> f64 {
    let d_bp = 2.0 * std::f64::consts::PI * h_bs * h_ut * fc_ghz * 1e9 / SPEED_OF_LIGHT;
    if d2d <= d_bp {
        rma_pl1(d3d, fc_ghz)
    } else {
        let d3d_bp = d_bp.hypot(h_bs - h_ut);
        rma_pl1(d3d_bp, fc_ghz) + 40.0 * (d3d / d3d_bp).log10()
    }
}

fn rma_nlos(d2d: f64, d3d: f64, fc_ghz: f64, h_bs: f64, h_ut: f64) -> f64 {
    let (h, w) = (RMA_BUILDING_HEIGHT_M, RMA_STREET_WIDTH_M);
    let nlos = 161.04 - 7.1 * w.log10() + 7.5 * h.log10()
        - (24.37 - 3.7 * (h / h_bs).powi(2)) * h_bs.log10()
        + (43.42 - 3.1 * h_bs.log10()) * (d3d.log10() - 3.0)
        + 20.0 * fc_ghz.log10()
        - (3.2 * (11.75 * h_ut).log10().powi(2) - 4.97);
    nlos.max(rma_los(d2d, d3d, fc_ghz, h_bs, h_ut))
}
