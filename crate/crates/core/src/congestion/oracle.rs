//! Exact compound Poisson law by direct convolution.
//!
//! This path never touches the generating function or the quadrature and is
//! used to cross-check [`super::congestion_conditional`].

use super::DemandProfile;
use crate::error::{Error, Result};

/// Total probability mass the truncated pmf may drop.
pub const NEGLECTED_MASS: f64 = 1e-12;
/// Largest support (number of pmf cells) the oracle will allocate.
pub const MAX_SUPPORT: usize = 1 << 24;

/// Poisson pmf truncated at the first `k` whose upper tail is below `cutoff`.
fn truncated_poisson(mean: f64, cutoff: f64) -> Result<Vec<f64>> {
    let p0 = (-mean).exp();
    if p0 == 0.0 {
        return Err(Error::Resource(format!(
            "Poisson mean {mean} underflows the convolution oracle"
        )));
    }
    let mut pmf = vec![p0];
    let mut cumulative = p0;
    let mut p = p0;
    let mut k = 0.0;
    while 1.0 - cumulative >= cutoff {
        k += 1.0;
        p *= mean / k;
        if k > mean && p < cutoff * 1e-6 {
            // rounding stalled the cumulative sum
            break;
        }
        pmf.push(p);
        cumulative += p;
        if pmf.len() > MAX_SUPPORT {
            return Err(Error::Resource(format!(
                "Poisson({mean}) support exceeds {MAX_SUPPORT}"
            )));
        }
    }
    Ok(pmf)
}

/// pmf of `Gamma = sum n X_n`, `X_n ~ Poisson(mu_n)`, missing at most
/// [`NEGLECTED_MASS`] of probability.
pub fn compound_poisson_pmf(profile: &DemandProfile) -> Result<Vec<f64>> {
    let cutoff = NEGLECTED_MASS / profile.n_terminal().max(1) as f64;
    let mut pmf = vec![1.0];
    for (idx, &mean) in profile.mu().iter().enumerate() {
        if mean == 0.0 {
            continue;
        }
        let n = idx + 1;
        let factor = truncated_poisson(mean, cutoff)?;
        let len = pmf.len() + n * (factor.len() - 1);
        if len > MAX_SUPPORT {
            return Err(Error::Resource(format!(
                "compound Poisson support {len} exceeds {MAX_SUPPORT}"
            )));
        }
        let mut next = vec![0.0; len];
        for (k, &pk) in factor.iter().enumerate() {
            let shift = n * k;
            for (i, &pi) in pmf.iter().enumerate() {
                next[i + shift] += pi * pk;
            }
        }
        pmf = next;
    }
    Ok(pmf)
}

/// `P(Gamma >= m)` from the convolved pmf.
pub fn brute_force_ccdf(profile: &DemandProfile, m: u64) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    let pmf = compound_poisson_pmf(profile)?;
    let start = usize::try_from(m).unwrap_or(usize::MAX);
    Ok(pmf.iter().skip(start).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_tail() {
        let p = DemandProfile::new(vec![1.0]).unwrap();
        assert_eq!(brute_force_ccdf(&p, 0).unwrap(), 1.0);
        let v = brute_force_ccdf(&p, 1).unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn pmf_normalized_and_mean_matches() {
        let p = DemandProfile::new(vec![2.0, 0.0, 1.5, 0.7, 3.1]).unwrap();
        let pmf = compound_poisson_pmf(&p).unwrap();
        let total: f64 = pmf.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        let mean: f64 = pmf.iter().enumerate().map(|(k, q)| k as f64 * q).sum();
        assert!((mean - p.mean_demand()).abs() < 1e-9);
        let var: f64 = pmf
            .iter()
            .enumerate()
            .map(|(k, q)| (k as f64 - mean).powi(2) * q)
            .sum();
        assert!((var - p.demand_variance()).abs() < 1e-8);
    }

    #[test]
    fn enumeration_of_two_rings() {
        let p = DemandProfile::new(vec![0.5, 0.5]).unwrap();
        let pmf = compound_poisson_pmf(&p).unwrap();
        let e = (-1.0f64).exp();
        assert!((pmf[0] - e).abs() < 1e-15);
        assert!((pmf[1] - 0.5 * e).abs() < 1e-15);
        // X1 = 2 or X2 = 1
        assert!((pmf[2] - (0.125 * e + 0.5 * e)).abs() < 1e-15);
    }

    #[test]
    fn huge_mean_is_a_resource_error() {
        let p = DemandProfile::new(vec![5000.0]).unwrap();
        assert!(matches!(compound_poisson_pmf(&p), Err(Error::Resource(_))));
    }

    #[test]
    fn empty_profile_is_point_mass() {
        let p = DemandProfile::new(vec![0.0, 0.0]).unwrap();
        assert_eq!(compound_poisson_pmf(&p).unwrap(), vec![1.0]);
        assert_eq!(brute_force_ccdf(&p, 1).unwrap(), 0.0);
    }
}
