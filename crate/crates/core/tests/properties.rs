use proptest::prelude::*;
use std::collections::BTreeMap;
use touchdown_cert::bounds::{g_bound_cutoff, BoundMode, H_bound};
use touchdown_cert::cutoff::{build_q0, build_q1, eval_q0, k_min_q0, Cutoff};
use touchdown_cert::model::ProblemParams;
use touchdown_cert::optimizer::{evaluate, recompute_objective, Candidate};
use touchdown_cert::pdesim::{build_profile, simulate, ProfileKind, SimConfig};
use touchdown_cert::specfun::erf;
use touchdown_cert::{Execution, SearchConfig, TheoremId};

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn erf_is_odd_bounded_and_increasing(x in -8.0f64..8.0, dx in 0.0f64..1.0) {
        prop_assert_eq!(erf(-x), -erf(x));
        prop_assert!(erf(x).abs() <= 1.0);
        prop_assert!(erf(x + dx) >= erf(x));
    }

    #[test]
    fn q0_cutoff_decreases_to_zero(
        p in 0.5f64..3.0, mu in 0.5f64..10.0, beta in 0.3f64..3.0, eta in 0.2f64..1.0, extra in 0.0f64..2.0,
    ) {
        let k = k_min_q0(p, mu, beta, eta).max(0.01) + extra;
        let c = build_q0(p, mu, beta, k, eta);
        prop_assume!(c.is_ok());
        let c = c.unwrap();
        let hi = 1.0 + beta;
        let mut prev = f64::INFINITY;
        for i in 0..=400 {
            let r = if i == 400 { hi } else { hi * i as f64 / 400.0 };
            let a = eval_q0(&c, r).unwrap();
            prop_assert!(a >= 0.0 && a <= prev * (1.0 + 1e-12) + 1e-15, "a({r}) = {a} after {prev}");
            prev = a;
        }
        prop_assert!(prev.abs() < 1e-12);
        prop_assert!(eval_q0(&c, hi + 1e-6).is_err());
    }

    #[test]
    fn q1_cutoff_is_nonnegative_and_vanishes_at_the_end(
        p in 0.5f64..3.0, mu in 0.5f64..10.0, beta in 0.2f64..2.0, kf in 0.01f64..1.0,
    ) {
        let c = build_q1(p, mu, beta, kf * p);
        prop_assume!(c.is_ok());
        let c = c.unwrap();
        prop_assert!(c.value_unchecked(1.0 + beta).abs() < 1e-12);
        for i in 0..=200 {
            let r = (1.0 + beta) * i as f64 / 200.0;
            prop_assert!(c.value_unchecked(r) >= -1e-15);
        }
    }

    #[test]
    fn certified_h_is_a_refinable_lower_bound(t in 0.01f64..0.4, beta in 0.2f64..3.0, p in 0.5f64..3.0) {
        let coarse = H_bound(t, beta, p, BoundMode::Certify(500)).unwrap();
        let fine = H_bound(t, beta, p, BoundMode::Certify(1000)).unwrap();
        let nodes = H_bound(t, beta, p, BoundMode::Explore(5000)).unwrap();
        prop_assert!(coarse.certified && !nodes.certified);
        prop_assert!(coarse.value <= fine.value + 1e-14, "{} > {}", coarse.value, fine.value);
        prop_assert!(fine.value <= nodes.value + 1e-14, "{} > {}", fine.value, nodes.value);
        let gap = nodes.value - coarse.value;
        prop_assert!(gap <= 4.0 * coarse.error_estimate.unwrap() + 1e-12, "gap {gap}");
    }

    #[test]
    fn certified_g_is_a_refinable_lower_bound(
        t in 0.01f64..0.4, p in 0.5f64..3.0, mu in 0.5f64..10.0, beta in 0.3f64..3.0, extra in 0.0f64..2.0,
    ) {
        let k = k_min_q0(p, mu, beta, 1.0).max(0.01) + extra;
        let c = build_q0(p, mu, beta, k, 1.0);
        prop_assume!(c.is_ok());
        let c = c.unwrap();
        let coarse = g_bound_cutoff(t, &c, BoundMode::Certify(200)).unwrap().value;
        let fine = g_bound_cutoff(t, &c, BoundMode::Certify(400)).unwrap().value;
        let nodes = g_bound_cutoff(t, &c, BoundMode::Explore(4000)).unwrap().value;
        prop_assert!(coarse <= fine + 1e-14 && fine <= nodes + 1e-14, "{coarse} {fine} {nodes}");
    }

    #[test]
    fn objective_is_reproducible_from_its_components(
        tau in 0.62f64..0.99, beta in 0.6f64..2.5, k in 0.2f64..2.0,
    ) {
        let params = ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap();
        let res = SearchConfig::for_theorem(TheoremId::Op1, &params).explore_resolution();
        let c = Candidate::op1(tau, beta, k);
        if let Ok(ev) = evaluate(&c, &params, &res) {
            let comps: BTreeMap<String, f64> = ev.components.clone();
            prop_assert_eq!(recompute_objective(&c, params.p, &comps).to_bits(), ev.rho.to_bits());
        }
    }

    #[test]
    fn execution_strategies_agree(n in 0usize..500, seed in any::<u64>()) {
        let f = |i: usize| ((i as u64).wrapping_mul(seed | 1) % 1000) as f64 / 7.0;
        prop_assert_eq!(Execution::Sequential.map(n, f), Execution::Parallel.map(n, f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn symmetric_bump_gives_symmetric_monotone_solution(
        half_width in 0.5f64..1.5, level in 1.0f64..3.0, plateau_frac in 0.0f64..0.3,
    ) {
        let profile = build_profile(
            4.0,
            ProfileKind::Bumps {
                bumps: vec![(-half_width, half_width)],
                level,
                plateau: plateau_frac * level,
                ramp: 0.1,
            },
        )
        .unwrap();
        let cfg = SimConfig { n_grid: 160, t_max: 5.0, ..SimConfig::default() };
        let r = simulate(&profile, 2.0, &cfg).unwrap();
        prop_assert_eq!(r.monotone_violation, 0.0);
        prop_assert!(r.comparison_excess <= 1e-12);
        let u = &r.snapshots.last().unwrap().u;
        let n = u.len() - 1;
        for j in 0..=n {
            prop_assert!((u[j] - u[n - j]).abs() <= 1e-9, "asymmetry at node {j}");
        }
        if r.quenched {
            for &(a, b) in &r.touchdown_set {
                prop_assert!(r.touchdown_set.iter().any(|&(c, d)| (c + b).abs() < 1e-9 && (d + a).abs() < 1e-9));
                prop_assert!(a >= -half_width - 0.1 && b <= half_width + 0.1);
            }
        }
    }
}
