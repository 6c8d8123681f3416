//! Sequential versus rayon execution of the main scans.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use touchdown_cert::optimizer::{objective, search, Candidate};
use touchdown_cert::pdesim::{one_bump_scenario, verify_localization, SimConfig};
use touchdown_cert::{Execution, ProblemParams, SearchConfig, TheoremId};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn quick(theorem: TheoremId, params: &ProblemParams, execution: Execution) -> SearchConfig {
    SearchConfig {
        n_tau: 4,
        refine_points: 4,
        refine_rounds: 2,
        n_x_certify_h: 5_000,
        n_x_certify_g: 1_000,
        n_r_certify: 500,
        n_t_certify: 40,
        execution,
        ..SearchConfig::for_theorem(theorem, params)
    }
}

fn bench_search(c: &mut Criterion) {
    let params = ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for theorem in [TheoremId::Op1, TheoremId::Op3] {
        for (name, execution) in STRATEGIES {
            let cfg = quick(theorem, &params, execution);
            group.bench_with_input(BenchmarkId::new(theorem.as_str(), name), &cfg, |b, cfg| {
                b.iter(|| search(theorem, black_box(&params), cfg).unwrap().rho_lower)
            });
        }
    }
    group.finish();
}

fn bench_candidate_scan(c: &mut Criterion) {
    let params = ProblemParams::new(2.0, 10.0, 10.0, 0.005, 10.0).unwrap();
    let res = SearchConfig::for_theorem(TheoremId::Op3, &params).explore_resolution();
    let cands: Vec<Candidate> = (0..64)
        .map(|i| Candidate::op3(0.5 + 0.01 * (i % 8) as f64, 0.4 + 0.05 * (i / 8) as f64, 0.8, 0.3))
        .collect();
    let mut group = c.benchmark_group("op3_candidate_scan");
    for (name, execution) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| {
                execution
                    .map(cands.len(), |i| objective(&cands[i], &params, &res))
                    .into_iter()
                    .fold(f64::NEG_INFINITY, f64::max)
            })
        });
    }
    group.finish();
}

fn bench_pde(c: &mut Criterion) {
    let profile = one_bump_scenario();
    let cfg = SimConfig {
        n_grid: 200,
        ..SimConfig::default()
    };
    let mut group = c.benchmark_group("pde_localisation");
    group.sample_size(10);
    for (name, execution) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| {
                verify_localization(&profile, 2.0, 0.2, &[(-2.5, 0.5)], &cfg, execution)
                    .unwrap()
                    .localized()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_search, bench_candidate_scan, bench_pde);
criterion_main!(benches);
