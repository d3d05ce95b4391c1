//! Downlink link budget: SINR, Shannon-MIMO throughput, per-user PRB demand
//! and the rings of equal demand around the base station.
//!
//! Units: distances km, powers mW, rates bit/s, bandwidth Hz. dB inputs are
//! converted once through [`RadioConfigDb::to_linear`].

use crate::error::{check_nonnegative, check_positive, Error, Result};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    /// Transmit power `P`, mW.
    pub power_mw: f64,
    /// Propagation constant `a`, linear.
    pub prop_const: f64,
    /// Half the path loss exponent, `b`.
    pub half_pathloss_exp: f64,
    /// PRB bandwidth `W`, Hz.
    pub prb_bandwidth_hz: f64,
    /// Spatial layers, `min(Tx, Rx)`.
    pub mimo_layers: u32,
    /// Thermal noise `sigma^2`, mW.
    pub noise_mw: f64,
    /// Decoding threshold `Theta*`, linear.
    pub sinr_threshold: f64,
    /// Required user rate `C*`, bit/s.
    pub service_rate_bps: f64,
    /// Operator cap on PRBs per user.
    pub n_max: u64,
}

impl RadioConfig {
    pub fn validate(&self) -> Result<()> {
        check_positive("power_mw", self.power_mw)?;
        check_positive("prop_const", self.prop_const)?;
        check_positive("prb_bandwidth_hz", self.prb_bandwidth_hz)?;
        check_positive("noise_mw", self.noise_mw)?;
        check_positive("sinr_threshold", self.sinr_threshold)?;
        check_positive("service_rate_bps", self.service_rate_bps)?;
        if !(self.half_pathloss_exp.is_finite() && self.half_pathloss_exp > 0.5) {
            return Err(Error::invalid(
                "half_pathloss_exp",
                format!(
                    "path loss exponent 2b must exceed 1, got b={}",
                    self.half_pathloss_exp
                ),
            ));
        }
        if self.mimo_layers == 0 {
            return Err(Error::invalid("mimo_layers", "must be >= 1"));
        }
        if self.n_max == 0 {
            return Err(Error::invalid("n_max", "must be >= 1"));
        }
        Ok(())
    }

    /// Same configuration with a different required user rate.
    pub fn with_service_rate(self, service_rate_bps: f64) -> Self {
        RadioConfig {
            service_rate_bps,
            ..self
        }
    }
}

/// Link budget inputs in the units radio engineers quote them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfigDb {
    pub power_dbm: f64,
    pub prop_const_db: f64,
    /// Full path loss exponent `2b`.
    pub pathloss_exponent: f64,
    pub prb_bandwidth_hz: f64,
    pub mimo_layers: u32,
    pub noise_dbm: f64,
    pub sinr_threshold_db: f64,
    pub service_rate_bps: f64,
    pub n_max: u64,
}

impl RadioConfigDb {
    pub fn to_linear(&self) -> Result<RadioConfig> {
        let cfg = RadioConfig {
            power_mw: db_to_linear(self.power_dbm),
            prop_const: db_to_linear(self.prop_const_db),
            half_pathloss_exp: self.pathloss_exponent / 2.0,
            prb_bandwidth_hz: self.prb_bandwidth_hz,
            mimo_layers: self.mimo_layers,
            noise_mw: db_to_linear(self.noise_dbm),
            sinr_threshold: db_to_linear(self.sinr_threshold_db),
            service_rate_bps: self.service_rate_bps,
            n_max: self.n_max,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_linear(cfg: &RadioConfig) -> Self {
        RadioConfigDb {
            power_dbm: linear_to_db(cfg.power_mw),
            prop_const_db: linear_to_db(cfg.prop_const),
            pathloss_exponent: 2.0 * cfg.half_pathloss_exp,
            prb_bandwidth_hz: cfg.prb_bandwidth_hz,
            mimo_layers: cfg.mimo_layers,
            noise_dbm: linear_to_db(cfg.noise_mw),
            sinr_threshold_db: linear_to_db(cfg.sinr_threshold),
            service_rate_bps: cfg.service_rate_bps,
            n_max: cfg.n_max,
        }
    }
}

fn check_distance(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "distance must be finite and > 0 (path loss is singular at the base station), got {x}"
        )))
    }
}

/// `(P x^-2b / a) / (I + sigma^2)`.
pub fn sinr(x: f64, cfg: &RadioConfig, interference_mw: f64) -> Result<f64> {
    check_distance(x)?;
    let received = cfg.power_mw * x.powf(-2.0 * cfg.half_pathloss_exp) / cfg.prop_const;
    Ok(received / (interference_mw + cfg.noise_mw))
}

/// Shannon bound `layers * W * log2(1 + SINR)` for one PRB.
pub fn throughput(x: f64, cfg: &RadioConfig, interference_mw: f64) -> Result<f64> {
    let theta = sinr(x, cfg, interference_mw)?;
    Ok(rate_from_sinr(theta, cfg))
}

fn rate_from_sinr(theta: f64, cfg: &RadioConfig) -> f64 {
    f64::from(cfg.mimo_layers) * cfg.prb_bandwidth_hz * theta.ln_1p() / std::f64::consts::LN_2
}

/// Largest PRB count any user is granted.
pub fn terminal_n(cfg: &RadioConfig) -> u64 {
    let per_prb = rate_from_sinr(cfg.sinr_threshold, cfg);
    let needed = (cfg.service_rate_bps / per_prb).ceil();
    let needed = if needed.is_finite() && needed < u64::MAX as f64 {
        needed as u64
    } else {
        u64::MAX
    };
    needed.min(cfg.n_max).max(1)
}

/// PRBs a user at distance `x` needs to reach `C*`, capped at [`terminal_n`].
pub fn prb_demand(x: f64, cfg: &RadioConfig, interference_mw: f64) -> Result<u64> {
    let rate = throughput(x, cfg, interference_mw)?;
    let cap = terminal_n(cfg);
    let ratio = (cfg.service_rate_bps / rate).ceil();
    // users below the threshold keep the cap instead of being dropped
    if !(ratio < cap as f64) {
        return Ok(cap);
    }
    Ok((ratio as u64).max(1))
}

/// Boundaries `d_0 = 0 < d_1 < ... < d_N` of the equal-demand rings.
///
/// `d_n` is unbounded: it may lie inside or beyond the cell. Use
/// [`RingPartition::effective_radii`] to clip it to an annulus.
#[derive(Debug, Clone, PartialEq)]
pub struct RingPartition {
    radii_km: Vec<f64>,
}

impl RingPartition {
    pub fn from_radii(radii_km: Vec<f64>) -> Result<Self> {
        if radii_km.len() < 2 || radii_km[0] != 0.0 {
            return Err(Error::invalid(
                "radii_km",
                "need d_0 = 0 and at least one ring",
            ));
        }
        if radii_km.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid(
                "radii_km",
                "radii must be strictly increasing",
            ));
        }
        Ok(RingPartition { radii_km })
    }

    pub fn n_terminal(&self) -> usize {
        self.radii_km.len() - 1
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii_km
    }

    /// Radii clipped to the annulus `(inner, outer]`: `d~_0 = inner`,
    /// `d~_n = clamp(d_n, inner, outer)` and `d~_N = outer`, so the last
    /// nonempty ring always ends on the outer boundary.
    pub fn effective_radii(&self, inner: f64, outer: f64) -> Vec<f64> {
        let n = self.n_terminal();
        let mut out: Vec<f64> = self
            .radii_km
            .iter()
            .map(|&d| d.clamp(inner, outer))
            .collect();
        out[0] = inner;
        out[n] = outer;
        out
    }

    /// Ring index of a user at distance `x`: the smallest `n >= 1` with
    /// `x <= d_n`, or `N` past the last radius.
    pub fn ring_of(&self, x: f64) -> usize {
        let n = self.n_terminal();
        let idx = self.radii_km[1..].partition_point(|&d| d < x);
        (idx + 1).min(n)
    }
}

/// Ring radii for the configuration under interference `I`.
pub fn ring_radii(cfg: &RadioConfig, interference_mw: f64) -> Result<RingPartition> {
    cfg.validate()?;
    check_nonnegative("interference_mw", interference_mw)?;
    let n_terminal = terminal_n(cfg);
    if n_terminal > 1 << 24 {
        return Err(Error::Resource(format!("{n_terminal} rings requested")));
    }
    let scale = cfg.prop_const * (interference_mw + cfg.noise_mw) / cfg.power_mw;
    let layers_bw = f64::from(cfg.mimo_layers) * cfg.prb_bandwidth_hz;
    let inv_exp = -1.0 / (2.0 * cfg.half_pathloss_exp);
    let mut radii_km = Vec::with_capacity(n_terminal as usize + 1);
    radii_km.push(0.0);
    for n in 1..=n_terminal {
        let excess =
            (cfg.service_rate_bps / (n as f64 * layers_bw) * std::f64::consts::LN_2).exp_m1();
        radii_km.push((scale * excess).powf(inv_exp));
    }
    RingPartition::from_radii(radii_km)
}

/// Interference power from a linear margin `IM = (I + sigma^2) / sigma^2`.
pub fn interference_from_margin(margin_linear: f64, noise_mw: f64) -> Result<f64> {
    if !(margin_linear.is_finite() && margin_linear >= 1.0) {
        return Err(Error::invalid(
            "interference_margin",
            format!("must be >= 1 in linear scale (>= 0 dB), got {margin_linear}"),
        ));
    }
    check_positive("noise_mw", noise_mw)?;
    Ok((margin_linear - 1.0) * noise_mw)
}

/// An annulus `(inner_km, outer_km]` with its own interference margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub inner_km: f64,
    pub outer_km: f64,
    pub margin_linear: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InterferenceProfile {
    /// One interference power for the whole cell.
    Uniform { interference_mw: f64 },
    /// Annuli partitioning `[0, R]`, each with its own margin.
    Regions(Vec<Region>),
}

/// A part of the cell sharing one interference level.
#[derive(Debug, Clone, PartialEq)]
pub struct Zone {
    pub inner_km: f64,
    pub outer_km: f64,
    pub interference_mw: f64,
    pub rings: RingPartition,
}

impl Zone {
    pub fn contains(&self, x: f64) -> bool {
        (x > self.inner_km || self.inner_km == 0.0) && x <= self.outer_km
    }
}

impl InterferenceProfile {
    pub fn noise_limited() -> Self {
        InterferenceProfile::Uniform {
            interference_mw: 0.0,
        }
    }

    pub fn validate(&self, radius_km: f64) -> Result<()> {
        match self {
            InterferenceProfile::Uniform { interference_mw } => {
                check_nonnegative("interference_mw", *interference_mw)
            }
            InterferenceProfile::Regions(regions) => {
                if regions.is_empty() {
                    return Err(Error::invalid("regions", "at least one region required"));
                }
                let mut edge = 0.0;
                for region in regions {
                    if region.inner_km != edge {
                        return Err(Error::invalid(
                            "regions",
                            format!(
                                "regions must tile [0, R] in order; gap or overlap at {edge} km"
                            ),
                        ));
                    }
                    if !(region.outer_km > region.inner_km) {
                        return Err(Error::invalid("regions", "each region needs outer > inner"));
                    }
                    if !(region.margin_linear.is_finite() && region.margin_linear >= 1.0) {
                        return Err(Error::invalid("interference_margin", "must be >= 0 dB"));
                    }
                    edge = region.outer_km;
                }
                if (edge - radius_km).abs() > 1e-12 * radius_km {
                    return Err(Error::invalid(
                        "regions",
                        format!("regions end at {edge} km, cell radius is {radius_km} km"),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn zones(&self, cfg: &RadioConfig, radius_km: f64) -> Result<Vec<Zone>> {
        self.validate(radius_km)?;
        match self {
            InterferenceProfile::Uniform { interference_mw } => Ok(vec![Zone {
                inner_km: 0.0,
                outer_km: radius_km,
                interference_mw: *interference_mw,
                rings: ring_radii(cfg, *interference_mw)?,
            }]),
            InterferenceProfile::Regions(regions) => regions
                .iter()
                .map(|region| {
                    let interference_mw =
                        interference_from_margin(region.margin_linear, cfg.noise_mw)?;
                    Ok(Zone {
                        inner_km: region.inner_km,
                        outer_km: region.outer_km,
                        interference_mw,
                        rings: ring_radii(cfg, interference_mw)?,
                    })
                })
                .collect(),
        }
    }
}
