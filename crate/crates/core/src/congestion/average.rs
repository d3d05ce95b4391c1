use rayon::prelude::*;

use super::{
    congestion_conditional_with, demand_profile_cox_annulus, CongestionEstimate, DemandProfile,
};
use crate::error::Result;
use crate::geometry::{sample_plp_tagged, PlpRealization};
use crate::quadrature::QuadratureOptions;
use crate::radio::Zone;
use crate::scenario::Scenario;
use crate::streams::{Substreams, ANALYTIC_REALIZATIONS};

/// A fixed set of PLP realizations with the demand profile of each zone at
/// unit user intensity. Profiles are linear in `delta`, so one set serves a
/// whole traffic sweep with common random numbers.
#[derive(Debug, Clone)]
pub struct RealizationSet {
    plps: Vec<PlpRealization>,
    zones: Vec<Zone>,
    /// `unit_profiles[i][z]`: realization `i`, zone `z`, `delta = 1`.
    unit_profiles: Vec<Vec<DemandProfile>>,
}

impl RealizationSet {
    /// Draws realizations `0..n` of the scenario's road process.
    pub fn sample(scenario: &Scenario, n: usize, streams: &Substreams) -> Result<Self> {
        scenario.validate()?;
        let plps = (0..n as u64)
            .into_par_iter()
            .map(|i| {
                sample_plp_tagged(
                    scenario.lambda,
                    scenario.radius_km,
                    streams.tag(ANALYTIC_REALIZATIONS, i),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_realizations(plps, scenario.zones()?)
    }

    pub fn from_realizations(plps: Vec<PlpRealization>, zones: Vec<Zone>) -> Result<Self> {
        let unit_profiles = plps
            .par_iter()
            .map(|plp| {
                zones
                    .iter()
                    .map(|z| demand_profile_cox_annulus(plp, &z.rings, 1.0, z.inner_km, z.outer_km))
                    .collect()
            })
            .collect();
        Ok(RealizationSet {
            plps,
            zones,
            unit_profiles,
        })
    }

    /// Same roads, different interference zones.
    pub fn rezoned(&self, zones: Vec<Zone>) -> Result<Self> {
        Self::from_realizations(self.plps.clone(), zones)
    }

    pub fn len(&self) -> usize {
        self.plps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plps.is_empty()
    }

    pub fn realizations(&self) -> &[PlpRealization] {
        &self.plps
    }

    pub fn zones(&self) -> &[Zone] {
        &self.zones
    }

    /// Per-realization profiles at intensity `delta`, either for one zone or
    /// summed over the cell.
    pub fn profiles(&self, delta: f64, zone: Option<usize>) -> Vec<DemandProfile> {
        self.unit_profiles
            .iter()
            .map(|per_zone| match zone {
                Some(z) => per_zone[z].scaled(delta),
                None => {
                    let mut total = DemandProfile::zeros(0);
                    for p in per_zone {
                        total.add(p);
                    }
                    total.scaled(delta)
                }
            })
            .collect()
    }

    /// `E_phi[P(Gamma >= m | phi)]` over this set.
    pub fn congestion(
        &self,
        delta: f64,
        zone: Option<usize>,
        m: u64,
        opts: &QuadratureOptions,
    ) -> Result<CongestionEstimate> {
        let profiles = self.profiles(delta, zone);
        congestion_over(&profiles, m, opts)
    }
}

/// Mean and standard error of the conditional congestion over `profiles`.
pub fn congestion_over(
    profiles: &[DemandProfile],
    m: u64,
    opts: &QuadratureOptions,
) -> Result<CongestionEstimate> {
    if m == 0 {
        return Ok(CongestionEstimate {
            value: 1.0,
            std_error: 0.0,
            n_samples: profiles.len(),
        });
    }
    let values = profiles
        .par_iter()
        .map(|p| congestion_conditional_with(p, m, opts))
        .collect::<Result<Vec<f64>>>()?;
    Ok(CongestionEstimate::from_samples(&values))
}

/// `Pi(M, tau)`: the conditional congestion averaged over `n_realizations` PLPs.
pub fn congestion_avg(
    scenario: &Scenario,
    m: u64,
    n_realizations: usize,
    streams: &Substreams,
) -> Result<CongestionEstimate> {
    let set = RealizationSet::sample(scenario, n_realizations, streams)?;
    set.congestion(scenario.delta(), None, m, &scenario.estimator.quadrature)
}
