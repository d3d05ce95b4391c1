use num_complex::Complex64;
use prbdim_core::{brute_force_ccdf, congestion_conditional, pgf_eval, DemandProfile};
use proptest::prelude::*;

fn profile() -> impl Strategy<Value = DemandProfile> {
    (1usize..=10, 0.0f64..=20.0)
        .prop_flat_map(|(n, total)| {
            (
                prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], n),
                Just(total),
            )
        })
        .prop_map(|(weights, total)| {
            let sum: f64 = weights.iter().sum();
            let mu = if sum > 0.0 {
                weights.iter().map(|w| w * total / sum).collect()
            } else {
                weights
            };
            DemandProfile::new(mu).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadrature_matches_convolution(p in profile()) {
        for m in 0..=100u64 {
            let a = congestion_conditional(&p, m).unwrap();
            let b = brute_force_ccdf(&p, m).unwrap();
            prop_assert!((a - b).abs() <= 1e-8, "M={} quadrature {} oracle {}", m, a, b);
        }
    }

    #[test]
    fn tail_sum_equals_mean_demand(p in profile()) {
        // sum over M >= 1 of P(Gamma >= M) is E[Gamma]
        let limit = (p.mean_demand() + 12.0 * p.demand_variance().sqrt()) as u64 + 20;
        let total: f64 = (1..=limit).map(|m| congestion_conditional(&p, m).unwrap()).sum();
        prop_assert!((total - p.mean_demand()).abs() <= 1e-7 * (1.0 + p.mean_demand()));
    }

    #[test]
    fn normalised_and_monotone(p in profile()) {
        prop_assert_eq!(congestion_conditional(&p, 0).unwrap(), 1.0);
        prop_assert_eq!(pgf_eval(&p, Complex64::new(1.0, 0.0)), Complex64::new(1.0, 0.0));
        let mut prev = 1.0;
        for m in 1..=120u64 {
            let v = congestion_conditional(&p, m).unwrap();
            prop_assert!(v <= prev, "M={} rose from {} to {}", m, prev, v);
            prev = v;
        }
    }

    #[test]
    fn pgf_at_zero_is_empty_probability(p in profile()) {
        let g = pgf_eval(&p, Complex64::new(0.0, 0.0));
        prop_assert!((g.re - (-p.alpha_terminal()).exp()).abs() <= 1e-15);
        prop_assert_eq!(g.im, 0.0);
    }
}

#[test]
fn pure_poisson_tail() {
    // only one-PRB users: Gamma ~ Poisson(3)
    let p = DemandProfile::new(vec![3.0]).unwrap();
    let pmf = |k: i32| (-3.0f64).exp() * 3.0f64.powi(k) / (1..=k).map(f64::from).product::<f64>();
    let tail_4 = 1.0 - (0..4).map(pmf).sum::<f64>();
    assert!((congestion_conditional(&p, 4).unwrap() - tail_4).abs() < 1e-12);
}

#[test]
fn large_demand_stays_accurate() {
    let mu: Vec<f64> = (1..=21).map(|n| 4.0 / n as f64).collect();
    let p = DemandProfile::new(mu).unwrap();
    for m in [1u64, 20, 60, 84, 120, 200] {
        let a = congestion_conditional(&p, m).unwrap();
        let b = brute_force_ccdf(&p, m).unwrap();
        assert!((a - b).abs() <= 1e-9, "M={m}: {a} vs {b}");
    }
}
