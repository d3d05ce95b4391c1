use anyhow::{bail, Result};

use prbdim_core::{
    demand_profile_ppp_zones, sweep_traffic_on, CongestionEstimate, DemandSamples,
    InterferenceProfile, RealizationSet, Scenario, SweepRow,
};

use crate::file::{InterferenceSection, ScenarioFile, StudyKind};
use crate::table::{num, Table};

/// Command line settings that replace values from the scenario file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub realizations: Option<usize>,
}

impl Overrides {
    pub fn apply(&self, file: &ScenarioFile) -> ScenarioFile {
        let mut file = file.clone();
        if let Some(seed) = self.seed {
            file.estimator.seed = seed;
        }
        if let Some(n) = self.realizations {
            file.estimator.n_realizations = n;
        }
        file
    }
}

/// Runs `kind` on the scenario. Overrides are folded into the file first,
/// so the table's hash describes what was actually run.
pub fn run_study(file: &ScenarioFile, kind: StudyKind, overrides: Overrides) -> Result<Table> {
    if let Some(declared) = file.study.kind {
        if declared != kind {
            bail!(
                "study: file declares kind `{}` but `{}` was requested",
                declared.name(),
                kind.name()
            );
        }
    }
    let file = overrides.apply(file);
    let scenario = file.scenario()?;
    match kind {
        StudyKind::Congestion => congestion(&file, &scenario),
        StudyKind::Dimension => dimension(&file, &scenario),
        StudyKind::Compare => compare(&file, &scenario),
        StudyKind::Regions => regions(&file, &scenario),
    }
}

fn status<T>(r: &prbdim_core::Result<T>) -> String {
    match r {
        Ok(_) => "ok".to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn estimate_cells(r: &prbdim_core::Result<CongestionEstimate>) -> (String, String) {
    match r {
        Ok(e) => (num(e.value), num(e.std_error)),
        Err(_) => (String::new(), String::new()),
    }
}

fn congestion(file: &ScenarioFile, scenario: &Scenario) -> Result<Table> {
    let grid = file.study.m_grid()?;
    let streams = scenario.substreams();
    let est = &scenario.estimator;
    let set = RealizationSet::sample(scenario, est.n_realizations, &streams)?;
    let mc = DemandSamples::simulate(scenario, est.n_realizations, est.n_user_draws, &streams)?;
    let delta = scenario.delta();
    let mut table = Table::new(
        "congestion",
        file,
        vec![
            "m",
            "pi_analytic",
            "pi_mc",
            "mc_stderr",
            "analytic_stderr",
            "status",
        ],
    );
    for &m in grid {
        let analytic = set.congestion(delta, None, m, &est.quadrature);
        let sim = mc.congestion(m);
        let (value, se) = estimate_cells(&analytic);
        table.push(vec![
            m.to_string(),
            value,
            num(sim.value),
            num(sim.std_error),
            se,
            status(&analytic),
        ]);
    }
    Ok(table)
}

fn compare(file: &ScenarioFile, scenario: &Scenario) -> Result<Table> {
    let grid = file.study.m_grid()?;
    let est = &scenario.estimator;
    let set = RealizationSet::sample(scenario, est.n_realizations, &scenario.substreams())?;
    let ppp = demand_profile_ppp_zones(scenario.mean_users(), set.zones(), scenario.radius_km);
    let delta = scenario.delta();
    let mut table = Table::new(
        "compare",
        file,
        vec!["m", "pi_cox", "pi_ppp", "cox_stderr", "status"],
    );
    for &m in grid {
        let cox = set.congestion(delta, None, m, &est.quadrature);
        let ppp = prbdim_core::congestion_conditional_with(&ppp, m, &est.quadrature);
        let (value, se) = estimate_cells(&cox);
        let row_status = match (&cox, &ppp) {
            (Err(e), _) | (_, Err(e)) => format!("error: {e}"),
            _ => "ok".to_string(),
        };
        let ppp = ppp.map(num).unwrap_or_default();
        table.push(vec![m.to_string(), value, ppp, se, row_status]);
    }
    Ok(table)
}

fn sweep_cells(row: &SweepRow) -> Vec<String> {
    match &row.result {
        Ok(r) => vec![
            r.m_star.to_string(),
            num(r.achieved_pi),
            num(r.ci_halfwidth),
            num(r.pi_previous),
            "ok".to_string(),
        ],
        Err(_) => vec![
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            status(&row.result),
        ],
    }
}

fn dimension(file: &ScenarioFile, scenario: &Scenario) -> Result<Table> {
    let taus = file.study.tau_grid()?;
    let targets = file.study.pi_targets()?;
    let set = RealizationSet::sample(
        scenario,
        scenario.estimator.n_realizations,
        &scenario.substreams(),
    )?;
    let mut table = Table::new(
        "dimension",
        file,
        vec![
            "tau_bps",
            "pi_target",
            "m_star",
            "achieved_pi",
            "halfwidth",
            "pi_previous",
            "status",
        ],
    );
    for &target in targets {
        for row in sweep_traffic_on(scenario, &set, None, target, taus)? {
            let mut cells = vec![num(row.tau_bps), num(target)];
            cells.extend(sweep_cells(&row));
            table.push(cells);
        }
    }
    Ok(table)
}

/// Per-region solves, then the whole cell with the region margins and
/// without interference, all on one set of roads.
fn regions(file: &ScenarioFile, scenario: &Scenario) -> Result<Table> {
    let taus = file.study.tau_grid()?;
    let targets = file.study.pi_targets()?;
    let regions = match &scenario.interference {
        InterferenceProfile::Regions(r) => r.clone(),
        InterferenceProfile::Uniform { .. } => {
            bail!("interference: regions study needs kind = \"regions\"")
        }
    };
    let names = file.region_names();
    let margins_db: Vec<f64> = match &file.interference {
        InterferenceSection::Regions { regions } => regions.iter().map(|r| r.margin_db).collect(),
        _ => unreachable!("region profile comes from a regions section"),
    };
    let set = RealizationSet::sample(
        scenario,
        scenario.estimator.n_realizations,
        &scenario.substreams(),
    )?;
    let quiet = set.rezoned(
        InterferenceProfile::noise_limited().zones(&scenario.radio, scenario.radius_km)?,
    )?;
    let radius = num(scenario.radius_km);

    let mut table = Table::new(
        "regions",
        file,
        vec![
            "region",
            "inner_km",
            "outer_km",
            "margin_db",
            "tau_bps",
            "pi_target",
            "m_star",
            "achieved_pi",
            "halfwidth",
            "pi_previous",
            "status",
        ],
    );
    let mut emit = |label: &str,
                    inner: String,
                    outer: String,
                    margin: String,
                    target: f64,
                    rows: Vec<SweepRow>| {
        for row in rows {
            let mut cells = vec![
                label.to_string(),
                inner.clone(),
                outer.clone(),
                margin.clone(),
                num(row.tau_bps),
                num(target),
            ];
            cells.extend(sweep_cells(&row));
            table.push(cells);
        }
    };
    for &target in targets {
        for (z, (region, name)) in regions.iter().zip(&names).enumerate() {
            emit(
                name,
                num(region.inner_km),
                num(region.outer_km),
                num(margins_db[z]),
                target,
                sweep_traffic_on(scenario, &set, Some(z), target, taus)?,
            );
        }
        emit(
            "cell",
            num(0.0),
            radius.clone(),
            String::new(),
            target,
            sweep_traffic_on(scenario, &set, None, target, taus)?,
        );
        emit(
            "cell_noise_limited",
            num(0.0),
            radius.clone(),
            num(0.0),
            target,
            sweep_traffic_on(scenario, &quiet, None, target, taus)?,
        );
    }
    Ok(table)
}
