use std::f64::consts::PI;

use crate::error::{check_nonnegative, check_positive, Error, Result};
use crate::geometry::mean_users_in_disk;
use crate::quadrature::QuadratureOptions;
use crate::radio::{InterferenceProfile, RadioConfig, Zone};
use crate::streams::Substreams;

/// Offered traffic, either as a road user density or as cell throughput.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Traffic {
    /// Users per km of road.
    UserIntensity { delta_per_km: f64 },
    /// Cell throughput `tau = u C*`, bit/s.
    CellThroughput { tau_bps: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorSettings {
    /// PLP realizations averaged by the analytic estimator, and PLP draws of
    /// the Monte Carlo estimator.
    pub n_realizations: usize,
    /// User draws per PLP in the Monte Carlo estimator.
    pub n_user_draws: usize,
    pub seed: u64,
    pub quadrature: QuadratureOptions,
    /// Largest PRB count the dimensioning search will try.
    pub m_cap: u64,
}

impl Default for EstimatorSettings {
    fn default() -> Self {
        EstimatorSettings {
            n_realizations: 1000,
            n_user_draws: 1,
            seed: 0,
            quadrature: QuadratureOptions::default(),
            m_cap: crate::dimensioning::DEFAULT_M_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub radio: RadioConfig,
    pub interference: InterferenceProfile,
    pub radius_km: f64,
    /// Road intensity, km^-1; the disk holds `2 pi lambda R` roads on average.
    pub lambda: f64,
    pub traffic: Traffic,
    pub estimator: EstimatorSettings,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.radio.validate()?;
        check_positive("radius_km", self.radius_km)?;
        check_nonnegative("lambda", self.lambda)?;
        self.interference.validate(self.radius_km)?;
        match self.traffic {
            Traffic::UserIntensity { delta_per_km } => check_nonnegative("delta", delta_per_km)?,
            Traffic::CellThroughput { tau_bps } => {
                check_nonnegative("tau", tau_bps)?;
                if tau_bps > 0.0 && self.lambda == 0.0 {
                    return Err(Error::invalid(
                        "tau",
                        "positive throughput needs lambda > 0 to carry users",
                    ));
                }
            }
        }
        if self.estimator.n_realizations == 0 {
            return Err(Error::invalid("n_realizations", "must be >= 1"));
        }
        if self.estimator.m_cap == 0 {
            return Err(Error::invalid("m_cap", "must be >= 1"));
        }
        if self.estimator.n_user_draws == 0 {
            return Err(Error::invalid("n_user_draws", "must be >= 1"));
        }
        Ok(())
    }

    /// User intensity on roads, users per km.
    pub fn delta(&self) -> f64 {
        match self.traffic {
            Traffic::UserIntensity { delta_per_km } => delta_per_km,
            Traffic::CellThroughput { tau_bps } => {
                if tau_bps == 0.0 {
                    0.0
                } else {
                    let u = tau_bps / self.radio.service_rate_bps;
                    u / (self.lambda * PI * self.radius_km * self.radius_km)
                }
            }
        }
    }

    /// `lambda delta pi R^2`, equal to `tau / C*` for throughput traffic.
    pub fn mean_users(&self) -> f64 {
        mean_users_in_disk(self.lambda, self.delta(), self.radius_km)
    }

    pub fn with_tau(&self, tau_bps: f64) -> Scenario {
        Scenario {
            traffic: Traffic::CellThroughput { tau_bps },
            ..self.clone()
        }
    }

    pub fn with_interference(&self, interference: InterferenceProfile) -> Scenario {
        Scenario {
            interference,
            ..self.clone()
        }
    }

    pub fn zones(&self) -> Result<Vec<Zone>> {
        self.interference.zones(&self.radio, self.radius_km)
    }

    pub fn substreams(&self) -> Substreams {
        Substreams::new(self.estimator.seed)
    }
}
