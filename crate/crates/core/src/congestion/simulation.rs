use rand::Rng;
use rayon::prelude::*;

use super::{CongestionEstimate, PrbDemand};
use crate::error::{Error, Result};
use crate::geometry::{sample_plp, sample_users_on_realization, PlpRealization};
use crate::radio::{prb_demand, RadioConfig, Zone};
use crate::scenario::Scenario;
use crate::streams::{Substreams, MONTE_CARLO};

/// Draws users on `plp` and adds up the PRBs each one requests.
pub fn sample_gamma<R: Rng + ?Sized>(
    plp: &PlpRealization,
    delta: f64,
    cfg: &RadioConfig,
    zones: &[Zone],
    rng: &mut R,
) -> Result<PrbDemand> {
    let users = sample_users_on_realization(plp, delta, rng)?;
    let mut gamma = 0;
    for &x in &users.distances_km {
        let zone = zones
            .iter()
            .find(|z| z.contains(x))
            .ok_or_else(|| Error::Domain(format!("user at {x} km lies in no interference zone")))?;
        gamma += prb_demand(x, cfg, zone.interference_mw)?;
    }
    Ok(PrbDemand { gamma })
}

/// Simulated total demands, grouped by PLP realization.
#[derive(Debug, Clone, PartialEq)]
pub struct DemandSamples {
    per_realization: Vec<Vec<u64>>,
}

impl DemandSamples {
    /// Realization `i` and its user draws come from Monte Carlo substream `i`.
    pub fn simulate(
        scenario: &Scenario,
        n_realizations: usize,
        n_user_draws: usize,
        streams: &Substreams,
    ) -> Result<Self> {
        scenario.validate()?;
        if n_realizations == 0 || n_user_draws == 0 {
            return Err(Error::invalid(
                "n_realizations",
                "Monte Carlo counts must be >= 1",
            ));
        }
        let zones = scenario.zones()?;
        let delta = scenario.delta();
        let per_realization = (0..n_realizations as u64)
            .into_par_iter()
            .map(|i| {
                let tag = streams.tag(MONTE_CARLO, i);
                let mut rng = tag.rng();
                // roads first, then every user draw, all from one stream
                let mut plp = sample_plp(scenario.lambda, scenario.radius_km, &mut rng)?;
                plp.seed_tag = Some(tag);
                (0..n_user_draws)
                    .map(|_| {
                        Ok(sample_gamma(&plp, delta, &scenario.radio, &zones, &mut rng)?.gamma)
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DemandSamples { per_realization })
    }

    pub fn n_draws(&self) -> usize {
        self.per_realization.iter().map(Vec::len).sum()
    }

    pub fn per_realization(&self) -> &[Vec<u64>] {
        &self.per_realization
    }

    pub fn mean(&self) -> f64 {
        let total: u64 = self.per_realization.iter().flatten().sum();
        total as f64 / self.n_draws() as f64
    }

    /// Empirical `P(Gamma >= m)`. With one user draw per realization the
    /// error is binomial; otherwise it comes from the spread of the
    /// per-realization frequencies, since draws on one PLP are correlated.
    pub fn congestion(&self, m: u64) -> CongestionEstimate {
        let n = self.n_draws();
        let single = self.per_realization.iter().all(|d| d.len() == 1);
        if single {
            let hits = self
                .per_realization
                .iter()
                .flatten()
                .filter(|&&g| g >= m)
                .count();
            let p = hits as f64 / n as f64;
            return CongestionEstimate {
                value: p,
                std_error: (p * (1.0 - p) / n as f64).sqrt(),
                n_samples: n,
            };
        }
        let freqs: Vec<f64> = self
            .per_realization
            .iter()
            .map(|d| d.iter().filter(|&&g| g >= m).count() as f64 / d.len() as f64)
            .collect();
        CongestionEstimate {
            n_samples: n,
            ..CongestionEstimate::from_samples(&freqs)
        }
    }
}

/// Empirical congestion from fresh (PLP, users) draws.
pub fn congestion_mc(
    scenario: &Scenario,
    m: u64,
    n_realizations: usize,
    n_user_draws: usize,
    streams: &Substreams,
) -> Result<CongestionEstimate> {
    Ok(DemandSamples::simulate(scenario, n_realizations, n_user_draws, streams)?.congestion(m))
}
