//! Shared fixtures for the benchmarks.

use prbdim_core::{InterferenceProfile, RadioConfigDb, Scenario, Traffic};

/// 60 dBm macro cell of radius 0.6 km, 180 kHz PRBs, 2 layers.
pub fn macro_cell(lambda: f64, tau_bps: f64) -> Scenario {
    Scenario {
        radio: RadioConfigDb {
            power_dbm: 60.0,
            prop_const_db: 130.0,
            pathloss_exponent: 3.5,
            prb_bandwidth_hz: 180e3,
            mimo_layers: 2,
            noise_dbm: -93.0,
            sinr_threshold_db: -10.0,
            service_rate_bps: 1e6,
            n_max: 1_000_000,
        }
        .to_linear()
        .expect("valid radio config"),
        interference: InterferenceProfile::noise_limited(),
        radius_km: 0.6,
        lambda,
        traffic: Traffic::CellThroughput { tau_bps },
        estimator: Default::default(),
    }
}
