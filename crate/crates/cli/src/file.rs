//! TOML scenario files.
//!
//! Radio quantities are given in dB/dBm and converted on load. Every table
//! rejects keys it does not know.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use prbdim_core::radio::db_to_linear;
use prbdim_core::{
    EstimatorSettings, InterferenceProfile, QuadratureOptions, RadioConfigDb, Region, Scenario,
    Traffic, DEFAULT_M_CAP,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub radio: RadioSection,
    pub geometry: GeometrySection,
    pub traffic: TrafficSection,
    #[serde(default)]
    pub interference: InterferenceSection,
    #[serde(default)]
    pub estimator: EstimatorSection,
    #[serde(default)]
    pub study: StudySection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioSection {
    pub power_dbm: f64,
    pub prop_const_db: f64,
    pub pathloss_exponent: f64,
    pub prb_bandwidth_hz: f64,
    pub mimo_layers: u32,
    pub noise_dbm: f64,
    pub sinr_threshold_db: f64,
    #[serde(default = "default_n_max")]
    pub n_max: u64,
}

fn default_n_max() -> u64 {
    1_000_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub radius_km: f64,
    /// Road intensity, km^-1.
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrafficSection {
    /// Required user rate `C*`, bit/s.
    pub service_rate_bps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_per_km: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_bps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InterferenceSection {
    #[default]
    None,
    Power {
        interference_mw: f64,
    },
    Margin {
        margin_db: f64,
    },
    Regions {
        regions: Vec<RegionSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub inner_km: f64,
    pub outer_km: f64,
    pub margin_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatorSection {
    pub n_realizations: usize,
    pub n_user_draws: usize,
    pub seed: u64,
    pub quadrature_rel_tol: f64,
    pub quadrature_abs_tol: f64,
}

impl Default for EstimatorSection {
    fn default() -> Self {
        let q = QuadratureOptions::default();
        EstimatorSection {
            n_realizations: 1000,
            n_user_draws: 1,
            seed: 0,
            quadrature_rel_tol: q.rel_tol,
            quadrature_abs_tol: q.abs_tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StudyKind {
    Congestion,
    Dimension,
    Compare,
    Regions,
}

impl StudyKind {
    pub fn name(self) -> &'static str {
        match self {
            StudyKind::Congestion => "congestion",
            StudyKind::Dimension => "dimension",
            StudyKind::Compare => "compare",
            StudyKind::Regions => "regions",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudySection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<StudyKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_grid: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_grid_bps: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_targets: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_cap: Option<u64>,
}

impl StudySection {
    pub fn m_grid(&self) -> Result<&[u64]> {
        let grid = self
            .m_grid
            .as_deref()
            .ok_or_else(|| anyhow!("study: missing key `m_grid`"))?;
        if grid.is_empty() {
            bail!("study: `m_grid` must not be empty");
        }
        Ok(grid)
    }

    pub fn tau_grid(&self) -> Result<&[f64]> {
        let grid = self
            .tau_grid_bps
            .as_deref()
            .ok_or_else(|| anyhow!("study: missing key `tau_grid_bps`"))?;
        if grid.is_empty() {
            bail!("study: `tau_grid_bps` must not be empty");
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            bail!("study: `tau_grid_bps` must be strictly increasing");
        }
        Ok(grid)
    }

    pub fn pi_targets(&self) -> Result<&[f64]> {
        let targets = self
            .pi_targets
            .as_deref()
            .ok_or_else(|| anyhow!("study: missing key `pi_targets`"))?;
        if targets.is_empty() {
            bail!("study: `pi_targets` must not be empty");
        }
        if let Some(t) = targets.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
            bail!("study: `pi_targets` entries must lie in (0, 1), got {t}");
        }
        Ok(targets)
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| anyhow!("{e}"))?;
        file.scenario()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid scenario file {}", path.display()))
    }

    /// Canonical TOML text; the same scenario always serializes identically.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("scenario tables serialize")
    }

    /// Region labels in file order, defaulting to center/middle/edge for
    /// three regions.
    pub fn region_names(&self) -> Vec<String> {
        match &self.interference {
            InterferenceSection::Regions { regions } => regions
                .iter()
                .enumerate()
                .map(|(i, r)| match &r.name {
                    Some(name) => name.clone(),
                    None if regions.len() == 3 => ["center", "middle", "edge"][i].to_string(),
                    None => format!("region{i}"),
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn scenario(&self) -> Result<Scenario> {
        let r = &self.radio;
        let radio = RadioConfigDb {
            power_dbm: r.power_dbm,
            prop_const_db: r.prop_const_db,
            pathloss_exponent: r.pathloss_exponent,
            prb_bandwidth_hz: r.prb_bandwidth_hz,
            mimo_layers: r.mimo_layers,
            noise_dbm: r.noise_dbm,
            sinr_threshold_db: r.sinr_threshold_db,
            service_rate_bps: self.traffic.service_rate_bps,
            n_max: r.n_max,
        }
        .to_linear()
        .context("radio")?;

        let traffic = match (self.traffic.delta_per_km, self.traffic.tau_bps) {
            (Some(delta_per_km), None) => Traffic::UserIntensity { delta_per_km },
            (None, Some(tau_bps)) => Traffic::CellThroughput { tau_bps },
            _ => bail!("traffic: set exactly one of `delta_per_km` or `tau_bps`"),
        };

        let interference = match &self.interference {
            InterferenceSection::None => InterferenceProfile::noise_limited(),
            InterferenceSection::Power { interference_mw } => InterferenceProfile::Uniform {
                interference_mw: *interference_mw,
            },
            InterferenceSection::Margin { margin_db } => {
                let interference_mw =
                    prbdim_core::interference_from_margin(db_to_linear(*margin_db), radio.noise_mw)
                        .context("interference: `margin_db`")?;
                InterferenceProfile::Uniform { interference_mw }
            }
            InterferenceSection::Regions { regions } => InterferenceProfile::Regions(
                regions
                    .iter()
                    .map(|r| Region {
                        inner_km: r.inner_km,
                        outer_km: r.outer_km,
                        margin_linear: db_to_linear(r.margin_db),
                    })
                    .collect(),
            ),
        };

        let e = &self.estimator;
        let scenario = Scenario {
            radio,
            interference,
            radius_km: self.geometry.radius_km,
            lambda: self.geometry.lambda,
            traffic,
            estimator: EstimatorSettings {
                n_realizations: e.n_realizations,
                n_user_draws: e.n_user_draws,
                seed: e.seed,
                quadrature: QuadratureOptions {
                    rel_tol: e.quadrature_rel_tol,
                    abs_tol: e.quadrature_abs_tol,
                    ..QuadratureOptions::default()
                },
                m_cap: self.study.m_cap.unwrap_or(DEFAULT_M_CAP),
            },
        };
        if !(e.quadrature_rel_tol > 0.0 && e.quadrature_abs_tol > 0.0) {
            bail!("estimator: quadrature tolerances must be positive");
        }
        scenario.validate()?;
        Ok(scenario)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[radio]
power_dbm = 60.0
prop_const_db = 130.0
pathloss_exponent = 3.5
prb_bandwidth_hz = 180e3
mimo_layers = 2
noise_dbm = -93.0
sinr_threshold_db = -10.0

[geometry]
radius_km = 0.6
lambda = 5.0

[traffic]
service_rate_bps = 1e6
tau_bps = 8e6
"#;

    #[test]
    fn minimal_file_uses_defaults() {
        let f = ScenarioFile::parse(BASE).unwrap();
        assert_eq!(f.interference, InterferenceSection::None);
        assert_eq!(f.estimator, EstimatorSection::default());
        let s = f.scenario().unwrap();
        assert!((s.mean_users() - 8.0).abs() < 1e-12);
        assert_eq!(s.estimator.m_cap, DEFAULT_M_CAP);
    }

    #[test]
    fn canonical_text_round_trips() {
        let mut text = BASE.to_string();
        text.push_str(
            "[interference]\nkind = \"regions\"\n\
             [[interference.regions]]\ninner_km = 0.0\nouter_km = 0.3\nmargin_db = 1.0\n\
             [[interference.regions]]\ninner_km = 0.3\nouter_km = 0.6\nmargin_db = 15.0\n",
        );
        let f = ScenarioFile::parse(&text).unwrap();
        let again = ScenarioFile::parse(&f.canonical()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f.region_names(), vec!["region0", "region1"]);
    }

    #[test]
    fn unknown_keys_are_named() {
        let text = BASE.replace("lambda = 5.0", "lambda = 5.0\nlambd = 5.0");
        let err = format!("{:#}", ScenarioFile::parse(&text).unwrap_err());
        assert!(err.contains("lambd"), "{err}");
        let text = format!("{BASE}[interference]\nkind = \"margin\"\nmargin_db = 3.0\nextra = 1\n");
        let err = format!("{:#}", ScenarioFile::parse(&text).unwrap_err());
        assert!(err.contains("extra"), "{err}");
    }

    #[test]
    fn traffic_needs_exactly_one_quantity() {
        let both = BASE.replace("tau_bps = 8e6", "tau_bps = 8e6\ndelta_per_km = 1.0");
        assert!(ScenarioFile::parse(&both).is_err());
        let neither = BASE.replace("tau_bps = 8e6", "");
        assert!(ScenarioFile::parse(&neither).is_err());
    }

    #[test]
    fn margin_converts_to_power() {
        let text = format!("{BASE}[interference]\nkind = \"margin\"\nmargin_db = 15.0\n");
        let s = ScenarioFile::parse(&text).unwrap().scenario().unwrap();
        match s.interference {
            InterferenceProfile::Uniform { interference_mw } => {
                assert!((interference_mw - 1.534774469098386e-8).abs() < 1e-20)
            }
            other => panic!("{other:?}"),
        }
    }
}
