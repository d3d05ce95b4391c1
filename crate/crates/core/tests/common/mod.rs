#![allow(dead_code)]

use prbdim_core::radio::db_to_linear;
use prbdim_core::{
    EstimatorSettings, InterferenceProfile, RadioConfig, RadioConfigDb, Region, Scenario, Traffic,
};

pub fn macro_radio(service_rate_bps: f64) -> RadioConfig {
    RadioConfigDb {
        power_dbm: 60.0,
        prop_const_db: 130.0,
        pathloss_exponent: 3.5,
        prb_bandwidth_hz: 180e3,
        mimo_layers: 2,
        noise_dbm: -93.0,
        sinr_threshold_db: -10.0,
        service_rate_bps,
        n_max: 1_000_000,
    }
    .to_linear()
    .unwrap()
}

pub fn macro_cell(lambda: f64, tau_bps: f64) -> Scenario {
    Scenario {
        radio: macro_radio(1e6),
        interference: InterferenceProfile::noise_limited(),
        radius_km: 0.6,
        lambda,
        traffic: Traffic::CellThroughput { tau_bps },
        estimator: EstimatorSettings::default(),
    }
}

/// High service rate: users need several PRBs and ring radii fall inside
/// the cell, so interference changes the demand.
pub fn demanding_cell(lambda: f64, tau_bps: f64) -> Scenario {
    Scenario {
        radio: macro_radio(2e7),
        ..macro_cell(lambda, tau_bps)
    }
}

pub fn three_regions(center_db: f64, middle_db: f64, edge_db: f64) -> InterferenceProfile {
    InterferenceProfile::Regions(vec![
        Region {
            inner_km: 0.0,
            outer_km: 0.2,
            margin_linear: db_to_linear(center_db),
        },
        Region {
            inner_km: 0.2,
            outer_km: 0.4,
            margin_linear: db_to_linear(middle_db),
        },
        Region {
            inner_km: 0.4,
            outer_km: 0.6,
            margin_linear: db_to_linear(edge_db),
        },
    ])
}

pub struct Moments {
    pub n: f64,
    pub mean: f64,
    pub var: f64,
}

impl Moments {
    pub fn of(xs: impl IntoIterator<Item = f64>) -> Moments {
        let xs: Vec<f64> = xs.into_iter().collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Moments { n, mean, var }
    }

    pub fn std_error(&self) -> f64 {
        (self.var / self.n).sqrt()
    }
}
