//! Acceptance suite. Each criterion prints one `[PASS]` or `[FAIL]` line.
//!
//! Run with `cargo test -p seqdelib --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqdelib::analytics::aggregate_runs;
use seqdelib::bargaining::BargainScheme;
use seqdelib::experiments::{
    run_hypercube_stationary, run_kstar_experiment, run_second_moment_experiment,
    run_unanimity_experiment, simulate_runs, simulate_runs_sequential, Mechanism, SimulationConfig,
};
use seqdelib::{
    median3, nash_bargain, pareto_efficient, run_paper_simulation, worst_case_distortion, Agent,
    Alternative, Bliss, DecisionSpace, DistortionReport,
};

const SEED: u64 = 42;

fn report(criterion: u32, ok: bool, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn scheme_report(scheme: BargainScheme) -> DistortionReport {
    run_paper_simulation(&SimulationConfig::with_scheme(scheme)).unwrap()
}

fn line_agent(space: &DecisionSpace, id: usize, a: Alternative) -> Agent {
    Agent::at(id, space.line_position(a).unwrap())
}

fn vertex_agent(id: usize, a: Alternative) -> Agent {
    Agent::new(id, Bliss::Vertex(a), 1.0)
}

fn middle_oracle(a: usize, b: usize, c: usize) -> usize {
    let mut v = [a, b, c];
    v.sort_unstable();
    v[1]
}

fn majority_oracle(a: usize, b: usize, c: usize, dim: u32) -> usize {
    (0..dim)
        .filter(|&k| (a >> k & 1) + (b >> k & 1) + (c >> k & 1) >= 2)
        .map(|k| 1 << k)
        .sum()
}

#[test]
fn criterion_01_nash_equals_median_of_three() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    for size in [51usize, 201] {
        let space = DecisionSpace::line(size).unwrap();
        for _ in 0..1000 {
            let (a, b, t) = (
                rng.random_range(0..size),
                rng.random_range(0..size),
                rng.random_range(0..size),
            );
            let u = line_agent(&space, 0, Alternative(a));
            let v = line_agent(&space, 1, Alternative(b));
            let nash = nash_bargain(&space, &u, &v, Alternative(t));
            let lib = median3(&space, Alternative(a), Alternative(b), Alternative(t)).unwrap();
            let oracle = Alternative(middle_oracle(a, b, t));
            checked += 1;
            mismatches += usize::from(nash != oracle || lib != oracle);
        }
    }
    for dim in 1..=5u32 {
        let space = DecisionSpace::hypercube(dim).unwrap();
        let n = 1usize << dim;
        for _ in 0..1000 {
            let (a, b, t) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            let nash = nash_bargain(
                &space,
                &vertex_agent(0, Alternative(a)),
                &vertex_agent(1, Alternative(b)),
                Alternative(t),
            );
            let lib = median3(&space, Alternative(a), Alternative(b), Alternative(t)).unwrap();
            let oracle = Alternative(majority_oracle(a, b, t, dim));
            checked += 1;
            mismatches += usize::from(nash != oracle || lib != oracle);
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        mismatches == 0 && elapsed < Duration::from_secs(10),
        format!(
            "{} of {checked} triples differ from the median oracle, {:.2?} elapsed (< 10 s)",
            mismatches, elapsed
        ),
    );
}

#[test]
fn criterion_02_nash_headline() {
    let start = Instant::now();
    let r = scheme_report(BargainScheme::Nash);
    let elapsed = start.elapsed();
    let q3_final = *r.per_step_q3.last().unwrap();
    let ok =
        (1.10..=1.21).contains(&r.mean) && q3_final <= 1.30 && elapsed < Duration::from_secs(120);
    report(
        2,
        ok,
        format!(
            "mean {:.4} in [1.10, 1.21], q3 at T=10 {:.4} <= 1.30, {:.2?} elapsed (< 2 min)",
            r.mean, q3_final, elapsed
        ),
    );
}

#[test]
fn criterion_03_selfish_worse_and_flat() {
    let nash = scheme_report(BargainScheme::Nash);
    let selfish = scheme_report(BargainScheme::Selfish);
    let drift = (selfish.per_step_mean[10] - selfish.per_step_mean[1]).abs();
    let ok = selfish.mean > nash.mean && selfish.mean > 1.208 && drift < 0.03;
    report(
        3,
        ok,
        format!(
            "selfish mean {:.4} > nash {:.4} and > 1.208; |mean(10) - mean(1)| = |{:.4} - {:.4}| = {:.4} < 0.03",
            selfish.mean, nash.mean, selfish.per_step_mean[10], selfish.per_step_mean[1], drift
        ),
    );
}

#[test]
fn criterion_04_unselfish_near_nash() {
    let nash = scheme_report(BargainScheme::Nash);
    let unselfish = scheme_report(BargainScheme::unselfish());
    let gap = (unselfish.mean - nash.mean).abs();
    report(
        4,
        gap <= 0.06,
        format!(
            "unselfish mean {:.4}, nash {:.4}, gap {:.4} <= 0.06",
            unselfish.mean, nash.mean, gap
        ),
    );
}

#[test]
fn criterion_05_convergence_by_step_two() {
    let r = scheme_report(BargainScheme::Nash);
    let m2 = r.per_step_mean[2];
    report(5, m2 < 1.2, format!("nash mean after step 2 {m2:.4} < 1.2"));
}

#[test]
fn criterion_06_stationary_theory() {
    let (f_star, worst) = worst_case_distortion();
    let theory_ok = (1.2070..=1.2072).contains(&worst) && (0.2928..=0.2930).contains(&f_star);
    let mut details = vec![format!("worst case {worst:.6} at f* {f_star:.6}")];
    let mut chain_ok = true;
    for f in [0.1, 0.2929, 0.5] {
        let check = run_hypercube_stationary(f, SEED).unwrap();
        let err = check.max_error();
        chain_ok &= err <= 0.02;
        details.push(format!(
            "f={f}: max per-dimension error {err:.4} (vs pi1(f) alone {:.4})",
            check.max_error_vs_parameter()
        ));
    }
    report(6, theory_ok && chain_ok, details.join("; "));
}

#[test]
fn criterion_07_dictatorship_bound() {
    let config = SimulationConfig {
        mechanism: Mechanism::Dictator,
        runs: 10_000,
        ..Default::default()
    };
    let line = run_paper_simulation(&config).unwrap();
    let star = run_kstar_experiment(50, 10_000, 10, SEED).unwrap();
    let star_gap = (star.dictator_mean - 1.96).abs();
    let ok = line.mean <= 2.02 && star_gap <= 0.05;
    report(
        7,
        ok,
        format!(
            "line dictator mean {:.4} <= 2.02; 50-star dictator mean {:.4} within 0.05 of 1.96",
            line.mean, star.dictator_mean
        ),
    );
}

#[test]
fn criterion_08_second_moment() {
    let (dictator, deliberation) = run_second_moment_experiment(0.01, 10_000, SEED).unwrap();
    report(
        8,
        dictator >= 50.0 && deliberation <= 5.0,
        format!("f=0.01: dictator E[D^2] {dictator:.3} >= 50, deliberation E[D^2] {deliberation:.3} <= 5"),
    );
}

#[test]
fn criterion_09_epsilon_unanimity() {
    let (deliberation, dictator) = run_unanimity_experiment(0.1, 2000, SEED).unwrap();
    report(
        9,
        deliberation <= 1.15 && dictator >= 1.6,
        format!("eps=0.1: deliberation mean {deliberation:.4} <= 1.15, dictator mean {dictator:.4} >= 1.6"),
    );
}

fn property_spaces() -> Vec<(&'static str, DecisionSpace)> {
    let grid = DecisionSpace::from_edges(
        9,
        &[
            (0, 1),
            (1, 2),
            (3, 4),
            (4, 5),
            (6, 7),
            (7, 8),
            (0, 3),
            (3, 6),
            (1, 4),
            (4, 7),
            (2, 5),
            (5, 8),
        ],
    )
    .unwrap();
    let tree =
        DecisionSpace::from_edges(8, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)])
            .unwrap();
    vec![
        ("line-50", DecisionSpace::line(50).unwrap()),
        ("cube-5", DecisionSpace::hypercube(5).unwrap()),
        ("star-10", DecisionSpace::star(10).unwrap()),
        ("grid-3x3", grid),
        ("tree-8", tree),
    ]
}

fn random_agent<R: Rng>(space: &DecisionSpace, id: usize, rng: &mut R) -> Agent {
    let a = Alternative(rng.random_range(0..space.len()));
    match space.line_position(a) {
        Some(_) => line_agent(space, id, a),
        None => vertex_agent(id, a),
    }
}

#[test]
fn criterion_10_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut violations = Vec::new();

    let mut triangle = 0usize;
    for (name, space) in property_spaces() {
        let n = space.len();
        for _ in 0..10_000 {
            let (x, y, z) = (
                Alternative(rng.random_range(0..n)),
                Alternative(rng.random_range(0..n)),
                Alternative(rng.random_range(0..n)),
            );
            let d = |a, b| space.distance(a, b).unwrap();
            if d(x, z) > d(x, y) + d(y, z) + 1e-12 {
                triangle += 1;
                violations.push(format!("triangle in {name}"));
            }
        }
    }

    let mut rational = 0usize;
    let mut pareto = 0usize;
    for (name, space) in property_spaces() {
        if !space.is_median_graph() {
            continue;
        }
        for _ in 0..2000 {
            let u = random_agent(&space, 0, &mut rng);
            let v = random_agent(&space, 1, &mut rng);
            let t = Alternative(rng.random_range(0..space.len()));
            let o = nash_bargain(&space, &u, &v, t);
            for agent in [&u, &v] {
                if space.bliss_distance(&agent.bliss, o)
                    > space.bliss_distance(&agent.bliss, t) + 1e-12
                {
                    rational += 1;
                    violations.push(format!("individual rationality in {name}"));
                }
            }
            if !pareto_efficient(&space, &[u, v], o) {
                pareto += 1;
                violations.push(format!("pareto in {name}"));
            }
        }
    }

    let mut chaining = 0usize;
    let mut determinism = 0usize;
    let mut ordering = 0usize;
    for scheme in [
        BargainScheme::Nash,
        BargainScheme::Selfish,
        BargainScheme::unselfish(),
    ] {
        let config = SimulationConfig {
            runs: 100,
            ..SimulationConfig::with_scheme(scheme)
        };
        let parallel = simulate_runs(&config).unwrap();
        let again = simulate_runs(&config).unwrap();
        let sequential = simulate_runs_sequential(&config).unwrap();
        if parallel != again || parallel != sequential {
            determinism += 1;
            violations.push(format!("determinism for {}", scheme.name()));
        }
        for run in &parallel {
            if !run.trace.as_ref().is_some_and(|t| t.is_chained()) {
                chaining += 1;
                violations.push(format!("trace chaining for {}", scheme.name()));
            }
        }
        let mut matrix: Vec<Vec<f64>> = parallel.iter().map(|r| r.distortions.clone()).collect();
        let base = aggregate_runs(&matrix).unwrap();
        for _ in 0..5 {
            matrix.shuffle(&mut rng);
            if aggregate_runs(&matrix).unwrap() != base {
                ordering += 1;
                violations.push(format!("aggregation order for {}", scheme.name()));
            }
        }
    }

    violations.dedup();
    report(
        10,
        violations.is_empty(),
        format!(
            "violations: triangle {triangle}, chaining {chaining}, rationality {rational}, pareto {pareto}, \
             determinism {determinism}, aggregation order {ordering}"
        ),
    );
}
