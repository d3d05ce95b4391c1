//! Total PRB demand in the cell and its tail, the congestion probability.
//!
//! Conditionally on the roads, the number of users needing `n` PRBs is
//! Poisson with mean `mu_n`, independently across rings, so the total demand
//! `Gamma = sum n X_n` is compound Poisson with generating function
//! `exp(sum mu_n (z^n - 1))`. Its tail `P(Gamma >= M)` is recovered from that
//! generating function by a Cauchy integral over the unit circle, folded
//! onto `[0, pi]`:
//!
//! ```text
//! P(Gamma >= M) = 1 - (1/pi) exp(-sum mu_n) *
//!     int_0^pi exp(p(t)) sin(M t/2)/sin(t/2) cos((M-1) t/2 - q(t)) dt
//! p(t) = sum mu_n cos(n t),   q(t) = sum mu_n sin(n t)
//! ```

mod average;
pub mod oracle;
mod simulation;

use num_complex::Complex64;

use crate::error::{check_nonnegative, Error, Result};
use crate::geometry::{chord_half_length, PlpRealization};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::radio::{RingPartition, Zone};

pub use average::{congestion_avg, congestion_over, RealizationSet};
pub use oracle::{brute_force_ccdf, compound_poisson_pmf};
pub use simulation::{congestion_mc, sample_gamma, DemandSamples};

/// Mean user counts `(mu_1, ..., mu_N)`; entry `n - 1` belongs to the ring
/// whose users each need `n` PRBs.
#[derive(Debug, Clone, PartialEq)]
pub struct DemandProfile {
    mu: Vec<f64>,
}

impl DemandProfile {
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        for &m in &mu {
            check_nonnegative("mu", m)?;
        }
        Ok(DemandProfile { mu })
    }

    pub(crate) fn zeros(n: usize) -> Self {
        DemandProfile { mu: vec![0.0; n] }
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn n_terminal(&self) -> usize {
        self.mu.len()
    }

    /// Mean number of users over all rings.
    pub fn alpha_terminal(&self) -> f64 {
        self.mu.iter().sum()
    }

    /// `E[Gamma] = sum n mu_n`.
    pub fn mean_demand(&self) -> f64 {
        self.weighted(|n| n)
    }

    /// `Var[Gamma] = sum n^2 mu_n`.
    pub fn demand_variance(&self) -> f64 {
        self.weighted(|n| n * n)
    }

    fn weighted(&self, w: impl Fn(f64) -> f64) -> f64 {
        self.mu
            .iter()
            .enumerate()
            .map(|(i, m)| w((i + 1) as f64) * m)
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        DemandProfile {
            mu: self.mu.iter().map(|m| m * factor).collect(),
        }
    }

    /// Demand of two independent user populations.
    pub fn add(&mut self, other: &DemandProfile) {
        if other.mu.len() > self.mu.len() {
            self.mu.resize(other.mu.len(), 0.0);
        }
        for (a, b) in self.mu.iter_mut().zip(&other.mu) {
            *a += b;
        }
    }
}

/// Total PRBs requested by one sampled user population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrbDemand {
    pub gamma: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CongestionEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl CongestionEstimate {
    pub fn exact(value: f64) -> Self {
        CongestionEstimate {
            value,
            std_error: 0.0,
            n_samples: 1,
        }
    }

    pub(crate) fn from_samples(values: &[f64]) -> Self {
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let std_error = if n > 1 {
            let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n as f64 - 1.0) / n as f64).sqrt()
        } else {
            0.0
        };
        CongestionEstimate {
            value: mean.clamp(0.0, 1.0),
            std_error,
            n_samples: n,
        }
    }
}

/// Mean number of users of intensity `delta` on the roads inside `B(0, d)`.
pub fn alpha(plp: &PlpRealization, d: f64, delta: f64) -> f64 {
    2.0 * delta
        * plp
            .lines
            .iter()
            .map(|l| chord_half_length(l.r, d))
            .sum::<f64>()
}

/// Cox demand profile over the whole cell.
pub fn demand_profile_cox(
    plp: &PlpRealization,
    rings: &RingPartition,
    delta: f64,
) -> DemandProfile {
    demand_profile_cox_annulus(plp, rings, delta, 0.0, plp.radius_km)
}

/// Cox demand profile restricted to users in the annulus `(inner, outer]`.
pub fn demand_profile_cox_annulus(
    plp: &PlpRealization,
    rings: &RingPartition,
    delta: f64,
    inner: f64,
    outer: f64,
) -> DemandProfile {
    let radii = rings.effective_radii(inner, outer);
    let alphas: Vec<f64> = radii.iter().map(|&d| alpha(plp, d, delta)).collect();
    DemandProfile {
        mu: alphas.windows(2).map(|w| (w[1] - w[0]).max(0.0)).collect(),
    }
}

/// Spatial PPP demand profile with `u` mean users in the cell of radius `radius_km`.
pub fn demand_profile_ppp(u: f64, rings: &RingPartition, radius_km: f64) -> DemandProfile {
    demand_profile_ppp_annulus(u, rings, radius_km, 0.0, radius_km)
}

pub fn demand_profile_ppp_annulus(
    u: f64,
    rings: &RingPartition,
    radius_km: f64,
    inner: f64,
    outer: f64,
) -> DemandProfile {
    let radii = rings.effective_radii(inner, outer);
    let r2 = radius_km * radius_km;
    DemandProfile {
        mu: radii
            .windows(2)
            .map(|w| u * (w[1] * w[1] - w[0] * w[0]) / r2)
            .collect(),
    }
}

/// Spatial PPP demand profile over a cell split into interference zones.
pub fn demand_profile_ppp_zones(u: f64, zones: &[Zone], radius_km: f64) -> DemandProfile {
    let mut total = DemandProfile::zeros(0);
    for zone in zones {
        total.add(&demand_profile_ppp_annulus(
            u,
            &zone.rings,
            radius_km,
            zone.inner_km,
            zone.outer_km,
        ));
    }
    total
}

/// Probability generating function `E[z^Gamma]`.
pub fn pgf_eval(profile: &DemandProfile, z: Complex64) -> Complex64 {
    let mut power = z;
    let mut exponent = Complex64::new(0.0, 0.0);
    for &m in &profile.mu {
        // termwise `z^n - 1` so that pgf(1) is exactly 1
        exponent += (power - 1.0) * m;
        power *= z;
    }
    exponent.exp()
}

/// `sin(M t / 2) / sin(t / 2)`, equal to `M` in the limit `t -> 0`.
fn dirichlet_kernel(m: f64, t: f64) -> f64 {
    if t.abs() < 1e-8 {
        m
    } else {
        (0.5 * m * t).sin() / (0.5 * t).sin()
    }
}

/// Smallest value `>= m` that `Gamma` can take: a sum of ring indices `n`
/// with `mu_n > 0`.
fn support_ceiling(mu: &[f64], m: u64) -> u64 {
    let steps: Vec<usize> = (1..=mu.len()).filter(|&n| mu[n - 1] > 0.0).collect();
    let Some(&smallest) = steps.first() else {
        return m;
    };
    if smallest == 1 || m == 0 {
        return m;
    }
    // some multiple of `smallest` lies in [m, m + smallest)
    let limit = m as usize + smallest;
    let mut reach = vec![false; limit];
    reach[0] = true;
    for k in 1..limit {
        reach[k] = steps.iter().take_while(|&&n| n <= k).any(|&n| reach[k - n]);
        if reach[k] && k as u64 >= m {
            return k as u64;
        }
    }
    unreachable!("a multiple of the smallest step lies below the limit")
}

/// `P(Gamma >= M)` given the roads, with default quadrature settings.
pub fn congestion_conditional(profile: &DemandProfile, m: u64) -> Result<f64> {
    congestion_conditional_with(profile, m, &QuadratureOptions::default())
}

pub fn congestion_conditional_with(
    profile: &DemandProfile,
    m: u64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    let total = profile.alpha_terminal();
    if total == 0.0 {
        return Ok(0.0);
    }
    if !total.is_finite() {
        return Err(Error::invalid("mu", "profile total must be finite"));
    }
    // trailing empty rings add nothing to the sums below
    let active = profile
        .mu
        .iter()
        .rposition(|&w| w > 0.0)
        .map_or(0, |i| i + 1);
    let mu = &profile.mu[..active];
    // Gamma skips values no sum of active ring indices reaches, and
    // P(Gamma >= m) is flat across such gaps
    let m = support_ceiling(mu, m);
    let mf = m as f64;
    let integrand = |t: f64| {
        let (s, c) = t.sin_cos();
        let step = Complex64::new(c, s);
        let mut power = step;
        let (mut p, mut q) = (0.0, 0.0);
        for &weight in mu {
            p += weight * power.re;
            q += weight * power.im;
            power *= step;
        }
        // exp(p - sum mu) <= 1 keeps the integrand bounded by M
        (p - total).exp() * dirichlet_kernel(mf, t) * (0.5 * (mf - 1.0) * t - q).cos()
    };
    // Fourier content reaches roughly M plus the bulk of Gamma
    let bulk = profile.mean_demand() + 8.0 * profile.demand_variance().sqrt();
    let bandwidth = m as usize + mu.len() + 2 + bulk.ceil() as usize;
    // a 16-point panel resolves several periods; convergence is still checked
    let initial_panels = (bandwidth / 8).max(4);
    let result = integrate(
        integrand,
        0.0,
        std::f64::consts::PI,
        initial_panels,
        opts,
        &|| format!("P(Gamma >= {m}) with N={} and total mean {total}", mu.len()),
    )?;
    let pi = 1.0 - result.value / std::f64::consts::PI;
    // closer than abs_tol to 0 or 1, only rounding noise is left; snapping
    // keeps the tails exactly monotone in M
    Ok(if pi < opts.abs_tol {
        0.0
    } else if pi > 1.0 - opts.abs_tol {
        1.0
    } else {
        pi
    })
}
