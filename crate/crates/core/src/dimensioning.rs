//! Solving `Pi(M, tau) = Pi*` for the smallest PRB budget `M`.
//!
//! All probes of one solve, and all traffic points of one sweep, share a
//! single [`RealizationSet`]. `Pi(.)` is then a fixed non-increasing function
//! during the search, so bracketing plus bisection returns its exact
//! crossing point on that set.

use std::collections::BTreeMap;

use crate::congestion::{CongestionEstimate, RealizationSet};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureOptions;
use crate::radio::{InterferenceProfile, Region};
use crate::scenario::Scenario;
use crate::streams::Substreams;

pub const DEFAULT_M_CAP: u64 = 4096;

/// Two-sided 95% normal quantile used for the reported halfwidth.
const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensioningResult {
    pub m_star: u64,
    /// `Pi(m_star)`.
    pub achieved_pi: f64,
    pub pi_target: f64,
    /// 95% halfwidth of `achieved_pi` over the realization set.
    pub ci_halfwidth: f64,
    /// `Pi(m_star - 1)`, which exceeds the target.
    pub pi_previous: f64,
}

/// Smallest `m >= 1` with `pi(m) <= target`, for a non-increasing `pi`.
///
/// Brackets by doubling from 1, then bisects. Fails with
/// [`Error::SearchExhausted`] if `pi(cap)` is still above the target.
pub fn solve_min_m<F>(mut pi: F, target: f64, cap: u64) -> Result<DimensioningResult>
where
    F: FnMut(u64) -> Result<CongestionEstimate>,
{
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::invalid(
            "pi_target",
            format!("must lie in (0, 1), got {target}"),
        ));
    }
    if cap == 0 {
        return Err(Error::invalid("m_cap", "must be >= 1"));
    }
    let mut memo: BTreeMap<u64, CongestionEstimate> = BTreeMap::new();
    let mut eval = |m: u64| -> Result<CongestionEstimate> {
        if let Some(e) = memo.get(&m) {
            return Ok(*e);
        }
        let e = if m == 0 {
            CongestionEstimate::exact(1.0)
        } else {
            pi(m)?
        };
        memo.insert(m, e);
        Ok(e)
    };

    // invariant: pi(lo) > target >= pi(hi)
    let mut lo = 0;
    let mut hi = 1;
    loop {
        let e = eval(hi)?;
        if e.value <= target {
            break;
        }
        if hi >= cap {
            return Err(Error::SearchExhausted {
                cap,
                pi_at_cap: e.value,
                target,
            });
        }
        lo = hi;
        hi = (hi * 2).min(cap);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if eval(mid)?.value <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let achieved = eval(hi)?;
    let previous = eval(hi - 1)?;
    Ok(DimensioningResult {
        m_star: hi,
        achieved_pi: achieved.value,
        pi_target: target,
        ci_halfwidth: Z_95 * achieved.std_error,
        pi_previous: previous.value,
    })
}

/// Dimensions on an existing realization set.
pub fn dimension_on(
    set: &RealizationSet,
    delta: f64,
    zone: Option<usize>,
    pi_target: f64,
    opts: &QuadratureOptions,
    cap: u64,
) -> Result<DimensioningResult> {
    let profiles = set.profiles(delta, zone);
    solve_min_m(
        |m| crate::congestion::congestion_over(&profiles, m, opts),
        pi_target,
        cap,
    )
}

/// Minimal PRB count meeting `pi_target` for the scenario's traffic.
pub fn dimension(
    scenario: &Scenario,
    pi_target: f64,
    streams: &Substreams,
) -> Result<DimensioningResult> {
    let set = RealizationSet::sample(scenario, scenario.estimator.n_realizations, streams)?;
    dimension_on(
        &set,
        scenario.delta(),
        None,
        pi_target,
        &scenario.estimator.quadrature,
        scenario.estimator.m_cap,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub tau_bps: f64,
    pub result: Result<DimensioningResult>,
}

fn check_grid(tau_grid: &[f64]) -> Result<()> {
    if tau_grid.is_empty() {
        return Err(Error::invalid("tau_grid", "must not be empty"));
    }
    if tau_grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::invalid(
            "tau_grid",
            "throughputs must be finite and >= 0",
        ));
    }
    if tau_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("tau_grid", "must be strictly increasing"));
    }
    Ok(())
}

/// Dimensions every throughput of `tau_grid` on an existing realization set,
/// for the users of `zone` (the whole cell when `None`).
pub fn sweep_traffic_on(
    scenario: &Scenario,
    set: &RealizationSet,
    zone: Option<usize>,
    pi_target: f64,
    tau_grid: &[f64],
) -> Result<Vec<SweepRow>> {
    check_grid(tau_grid)?;
    if let Some(z) = zone {
        if z >= set.zones().len() {
            return Err(Error::invalid(
                "zone",
                format!("no zone {z} in a set of {}", set.zones().len()),
            ));
        }
    }
    Ok(sweep_on(scenario, set, zone, pi_target, tau_grid))
}

fn sweep_on(
    scenario: &Scenario,
    set: &RealizationSet,
    zone: Option<usize>,
    pi_target: f64,
    tau_grid: &[f64],
) -> Vec<SweepRow> {
    tau_grid
        .iter()
        .map(|&tau_bps| {
            let at = scenario.with_tau(tau_bps);
            let result = at.validate().and_then(|_| {
                dimension_on(
                    set,
                    at.delta(),
                    zone,
                    pi_target,
                    &at.estimator.quadrature,
                    at.estimator.m_cap,
                )
            });
            SweepRow { tau_bps, result }
        })
        .collect()
}

/// One dimensioning solve per throughput, all on the same realizations.
pub fn sweep_traffic(
    scenario: &Scenario,
    pi_target: f64,
    tau_grid: &[f64],
    streams: &Substreams,
) -> Result<Vec<SweepRow>> {
    check_grid(tau_grid)?;
    let set = RealizationSet::sample(scenario, scenario.estimator.n_realizations, streams)?;
    Ok(sweep_on(scenario, &set, None, pi_target, tau_grid))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionTable {
    pub region: Region,
    pub rows: Vec<SweepRow>,
}

/// Dimensions each interference region on its own: users are restricted to
/// the region's annulus and see its margin. `tau` stays the whole-cell
/// throughput, so `delta` is shared by all regions.
pub fn region_study(
    scenario: &Scenario,
    pi_target: f64,
    tau_grid: &[f64],
    streams: &Substreams,
) -> Result<Vec<RegionTable>> {
    check_grid(tau_grid)?;
    let regions = match &scenario.interference {
        InterferenceProfile::Regions(r) => r.clone(),
        InterferenceProfile::Uniform { .. } => {
            return Err(Error::invalid(
                "interference",
                "region study needs an annular region list",
            ))
        }
    };
    let set = RealizationSet::sample(scenario, scenario.estimator.n_realizations, streams)?;
    Ok(regions
        .into_iter()
        .enumerate()
        .map(|(z, region)| RegionTable {
            region,
            rows: sweep_on(scenario, &set, Some(z), pi_target, tau_grid),
        })
        .collect())
}
