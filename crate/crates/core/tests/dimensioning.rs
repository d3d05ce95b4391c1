mod common;

use common::{demanding_cell, macro_cell};
use prbdim_core::{
    dimension_on, sweep_traffic, Error, InterferenceProfile, QuadratureOptions, RealizationSet,
    Substreams,
};

fn set_for(s: &prbdim_core::Scenario, n: usize, seed: u64) -> RealizationSet {
    RealizationSet::sample(s, n, &Substreams::new(seed)).unwrap()
}

#[test]
fn solution_brackets_the_target() {
    let s = macro_cell(5.0, 15e6);
    let set = set_for(&s, 300, 31);
    let opts = QuadratureOptions::default();
    for target in [0.01, 0.05, 0.2] {
        let r = dimension_on(&set, s.delta(), None, target, &opts, 4096).unwrap();
        assert!(r.achieved_pi <= target && r.pi_previous > target, "{r:?}");
        let at = set
            .congestion(s.delta(), None, r.m_star, &opts)
            .unwrap()
            .value;
        let before = set
            .congestion(s.delta(), None, r.m_star - 1, &opts)
            .unwrap()
            .value;
        assert_eq!(at, r.achieved_pi);
        assert_eq!(before, r.pi_previous);
        assert!(r.ci_halfwidth >= 0.0);
    }
}

#[test]
fn budget_grows_with_traffic_and_strictness() {
    let s = macro_cell(5.0, 1e6);
    let taus: Vec<f64> = (1..=10).map(|k| k as f64 * 3e6).collect();
    let streams = Substreams::new(32);
    let loose = sweep_traffic(&s, 0.05, &taus, &streams).unwrap();
    let strict = sweep_traffic(&s, 0.01, &taus, &streams).unwrap();
    let m = |rows: &[prbdim_core::SweepRow]| -> Vec<u64> {
        rows.iter()
            .map(|r| r.result.as_ref().unwrap().m_star)
            .collect()
    };
    let (loose, strict) = (m(&loose), m(&strict));
    assert!(loose.windows(2).all(|w| w[1] >= w[0]), "{loose:?}");
    assert!(strict.windows(2).all(|w| w[1] >= w[0]), "{strict:?}");
    assert!(loose.iter().zip(&strict).all(|(l, s)| s >= l));
}

#[test]
fn interference_never_lowers_the_budget() {
    let s = demanding_cell(5.0, 100e6);
    let set = set_for(&s, 200, 33);
    let opts = QuadratureOptions::default();
    let mut prev = 0;
    for margin_db in [0.0, 3.0, 8.0, 15.0] {
        let interference_mw =
            prbdim_core::interference_from_margin(10f64.powf(margin_db / 10.0), s.radio.noise_mw)
                .unwrap();
        let zones = InterferenceProfile::Uniform { interference_mw }
            .zones(&s.radio, s.radius_km)
            .unwrap();
        let r = dimension_on(
            &set.rezoned(zones).unwrap(),
            s.delta(),
            None,
            0.05,
            &opts,
            4096,
        )
        .unwrap();
        assert!(r.m_star >= prev, "{margin_db} dB: {} < {prev}", r.m_star);
        prev = r.m_star;
    }
    assert!(prev > 0);
}

#[test]
fn no_traffic_needs_one_prb() {
    let s = macro_cell(5.0, 0.0);
    let set = set_for(&s, 20, 34);
    let r = dimension_on(
        &set,
        s.delta(),
        None,
        0.01,
        &QuadratureOptions::default(),
        4096,
    )
    .unwrap();
    assert_eq!(r.m_star, 1);
    assert_eq!(r.achieved_pi, 0.0);
    assert_eq!(r.pi_previous, 1.0);
}

#[test]
fn small_cap_is_reported() {
    let s = macro_cell(5.0, 25e6);
    let set = set_for(&s, 50, 35);
    let err = dimension_on(
        &set,
        s.delta(),
        None,
        0.01,
        &QuadratureOptions::default(),
        8,
    )
    .unwrap_err();
    match err {
        Error::SearchExhausted { cap, pi_at_cap, .. } => {
            assert_eq!(cap, 8);
            assert!(pi_at_cap > 0.01);
        }
        other => panic!("{other:?}"),
    }
}
