//! Reproducible experiment recipes.
//!
//! Every run draws from its own ChaCha stream, `(master_seed, run_index)`,
//! so results do not depend on how runs are scheduled across threads.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{
    aggregate_runs, distortion_ratio, optimal_alternative, social_cost, stationary_bit_probability,
    DistortionReport,
};
use crate::bargaining::BargainScheme;
use crate::deliberation::{
    one_shot_median3, random_dictator, run_deliberation_with, DeliberationTrace,
};
use crate::error::{Error, Result};
use crate::population::{
    bit_frequencies, hypercube_population_from_f, sample_epsilon_unanimous, sample_population,
    sample_uniform_vertices, Agent, PopulationSpec,
};
use crate::spaces::{Alternative, Bliss, DecisionSpace};

/// Generator for run `run` of an experiment seeded with `master_seed`.
pub fn run_rng(master_seed: u64, run: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(run as u64);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceSpec {
    Line { alternatives: usize },
    Hypercube { dim: u32 },
    Star { leaves: usize },
    Graph { path: PathBuf },
}

impl SpaceSpec {
    pub fn build(&self) -> Result<DecisionSpace> {
        match self {
            SpaceSpec::Line { alternatives } => DecisionSpace::line(*alternatives),
            SpaceSpec::Hypercube { dim } => DecisionSpace::hypercube(*dim),
            SpaceSpec::Star { leaves } => DecisionSpace::star(*leaves),
            SpaceSpec::Graph { path } => DecisionSpace::from_edge_file(path),
        }
    }
}

/// What picks the outcome of a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mechanism {
    Deliberation(BargainScheme),
    Dictator,
    Median3,
}

impl Mechanism {
    pub fn name(&self) -> &'static str {
        match self {
            Mechanism::Deliberation(scheme) => scheme.name(),
            Mechanism::Dictator => "dictator",
            Mechanism::Median3 => "median3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub space: SpaceSpec,
    pub population: PopulationSpec,
    pub mechanism: Mechanism,
    /// Deliberation rounds `T`; ignored by one-shot mechanisms.
    pub steps: usize,
    pub runs: usize,
    pub master_seed: u64,
    /// When set, populations are ε-unanimous instead of the space's default.
    pub epsilon: Option<f64>,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            space: SpaceSpec::Line { alternatives: 50 },
            population: PopulationSpec::default(),
            mechanism: Mechanism::Deliberation(BargainScheme::Nash),
            steps: 10,
            runs: 1000,
            master_seed: 42,
            epsilon: None,
        }
    }
}

impl SimulationConfig {
    pub fn with_scheme(scheme: BargainScheme) -> Self {
        SimulationConfig {
            mechanism: Mechanism::Deliberation(scheme),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::input("at least one run is required"));
        }
        if let Some(eps) = self.epsilon {
            if !(0.0..1.0).contains(&eps) {
                return Err(Error::input(format!("epsilon {eps} outside [0, 1)")));
            }
        }
        self.population.validate()
    }
}

/// Fresh population for one run of `config` on `space`.
pub fn sample_run_population<R: Rng + ?Sized>(
    config: &SimulationConfig,
    space: &DecisionSpace,
    rng: &mut R,
) -> Result<Vec<Agent>> {
    let n = config.population.n_agents;
    if let Some(eps) = config.epsilon {
        return sample_epsilon_unanimous(n, eps, space, rng);
    }
    match &config.space {
        SpaceSpec::Line { .. } => sample_population(&config.population, rng),
        SpaceSpec::Hypercube { dim } => {
            let f: Vec<f64> = (0..*dim).map(|_| rng.random::<f64>()).collect();
            hypercube_population_from_f(space, &f, n, rng)
        }
        SpaceSpec::Star { .. } | SpaceSpec::Graph { .. } => sample_uniform_vertices(space, n, rng),
    }
}

/// Everything measured in one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    /// Distortion of `a^0 ..= a^T`, against the population at that step.
    pub distortions: Vec<f64>,
    /// Distortion of the same states against the run's starting population.
    pub initial_distortions: Vec<f64>,
    pub trace: Option<DeliberationTrace>,
}

/// Distortion of every state of a deliberation, tracking the optimum when
/// bargaining moves bliss points.
fn deliberate_and_measure<R: Rng + ?Sized>(
    space: &DecisionSpace,
    population: &[Agent],
    scheme: &BargainScheme,
    steps: usize,
    rng: &mut R,
) -> Result<RunOutcome> {
    let (_, initial_opt) = optimal_alternative(space, population);
    let mutates = scheme.mutates_population();
    let mut distortions = Vec::with_capacity(steps + 1);
    let mut initial_distortions = Vec::with_capacity(steps + 1);
    let trace = run_deliberation_with(
        space,
        population,
        scheme,
        steps,
        rng,
        |_, outcome, current| {
            let initial_d = distortion_ratio(social_cost(space, population, outcome), initial_opt);
            let d = if mutates {
                let (_, opt) = optimal_alternative(space, current);
                distortion_ratio(social_cost(space, current, outcome), opt)
            } else {
                initial_d
            };
            distortions.push(d);
            initial_distortions.push(initial_d);
        },
    )?;
    Ok(RunOutcome {
        distortions,
        initial_distortions,
        trace: Some(trace),
    })
}

fn simulate_run(
    config: &SimulationConfig,
    space: &DecisionSpace,
    run: usize,
) -> Result<RunOutcome> {
    let mut rng = run_rng(config.master_seed, run);
    let population = sample_run_population(config, space, &mut rng)?;
    let one_shot = |a: Alternative| {
        let d = distortion_ratio(
            social_cost(space, &population, a),
            optimal_alternative(space, &population).1,
        );
        RunOutcome {
            distortions: vec![d],
            initial_distortions: vec![d],
            trace: None,
        }
    };
    match &config.mechanism {
        Mechanism::Deliberation(scheme) => {
            deliberate_and_measure(space, &population, scheme, config.steps, &mut rng)
        }
        Mechanism::Dictator => random_dictator(space, &population, &mut rng).map(one_shot),
        Mechanism::Median3 => one_shot_median3(space, &population, &mut rng).map(one_shot),
    }
}

/// Runs every simulation of `config` in parallel, returning outcomes in run order.
pub fn simulate_runs(config: &SimulationConfig) -> Result<Vec<RunOutcome>> {
    config.validate()?;
    let space = config.space.build()?;
    simulate_runs_on(config, &space)
}

pub fn simulate_runs_on(
    config: &SimulationConfig,
    space: &DecisionSpace,
) -> Result<Vec<RunOutcome>> {
    config.validate()?;
    (0..config.runs)
        .into_par_iter()
        .map(|run| simulate_run(config, space, run))
        .collect()
}

/// Sequential reference for [`simulate_runs`].
pub fn simulate_runs_sequential(config: &SimulationConfig) -> Result<Vec<RunOutcome>> {
    config.validate()?;
    let space = config.space.build()?;
    (0..config.runs)
        .map(|run| simulate_run(config, &space, run))
        .collect()
}

/// Aggregates run outcomes; attaches the starting-population mean when
/// bargaining moved bliss points.
pub fn report_from_runs(
    config: &SimulationConfig,
    runs: &[RunOutcome],
) -> Result<DistortionReport> {
    let matrix: Vec<Vec<f64>> = runs.iter().map(|r| r.distortions.clone()).collect();
    let mut report = aggregate_runs(&matrix)?;
    if let Mechanism::Deliberation(scheme) = config.mechanism {
        if scheme.mutates_population() {
            let initial: Vec<Vec<f64>> =
                runs.iter().map(|r| r.initial_distortions.clone()).collect();
            report.initial_population_mean = Some(aggregate_runs(&initial)?.mean);
        }
    }
    Ok(report)
}

/// The main simulation: fresh population per run, deliberation, per-step distortion.
pub fn run_paper_simulation(config: &SimulationConfig) -> Result<DistortionReport> {
    let runs = simulate_runs(config)?;
    report_from_runs(config, &runs)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KStarResult {
    pub k: usize,
    pub dictator_mean: f64,
    pub deliberation_mean: f64,
    /// `2(k − 1) / k`.
    pub expected: f64,
}

/// One agent on each leaf of a k-star.
pub fn run_kstar_experiment(
    k: usize,
    runs: usize,
    steps: usize,
    master_seed: u64,
) -> Result<KStarResult> {
    if k < 2 {
        return Err(Error::input("k-star experiment needs k >= 2"));
    }
    if runs == 0 {
        return Err(Error::input("at least one run is required"));
    }
    let space = DecisionSpace::star(k)?;
    let population: Vec<Agent> = (0..k)
        .map(|i| Agent::new(i, Bliss::Vertex(Alternative(i + 1)), 1.0))
        .collect();
    let (_, opt) = optimal_alternative(&space, &population);
    let pairs: Vec<(f64, f64)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = run_rng(master_seed, run);
            let dictator = random_dictator(&space, &population, &mut rng)?;
            let trace = run_deliberation_with(
                &space,
                &population,
                &BargainScheme::Nash,
                steps,
                &mut rng,
                |_, _, _| {},
            )?;
            Ok((
                distortion_ratio(social_cost(&space, &population, dictator), opt),
                distortion_ratio(social_cost(&space, &population, trace.final_outcome), opt),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(KStarResult {
        k,
        dictator_mean: pairs.iter().map(|p| p.0).sum::<f64>() / runs as f64,
        deliberation_mean: pairs.iter().map(|p| p.1).sum::<f64>() / runs as f64,
        expected: 2.0 * (k - 1) as f64 / k as f64,
    })
}

pub const UNANIMITY_AGENTS: usize = 300;
pub const UNANIMITY_STEPS: usize = 10;

fn two_point_space() -> DecisionSpace {
    DecisionSpace::hypercube(1).expect("1-cube")
}

/// Mean final distortion of deliberation and of dictatorship over ε-unanimous
/// populations on two alternatives.
pub fn run_unanimity_experiment(epsilon: f64, runs: usize, master_seed: u64) -> Result<(f64, f64)> {
    if !(0.0..0.5).contains(&epsilon) {
        return Err(Error::input(format!("epsilon {epsilon} outside [0, 0.5)")));
    }
    if runs == 0 {
        return Err(Error::input("at least one run is required"));
    }
    let space = two_point_space();
    let pairs: Vec<(f64, f64)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = run_rng(master_seed, run);
            let population = sample_epsilon_unanimous(UNANIMITY_AGENTS, epsilon, &space, &mut rng)?;
            let (_, opt) = optimal_alternative(&space, &population);
            let dictator = random_dictator(&space, &population, &mut rng)?;
            let trace = run_deliberation_with(
                &space,
                &population,
                &BargainScheme::Nash,
                UNANIMITY_STEPS,
                &mut rng,
                |_, _, _| {},
            )?;
            Ok((
                distortion_ratio(social_cost(&space, &population, trace.final_outcome), opt),
                distortion_ratio(social_cost(&space, &population, dictator), opt),
            ))
        })
        .collect::<Result<_>>()?;
    let n = runs as f64;
    Ok((
        pairs.iter().map(|p| p.0).sum::<f64>() / n,
        pairs.iter().map(|p| p.1).sum::<f64>() / n,
    ))
}

pub const SECOND_MOMENT_STEPS: usize = 10;

/// Agents on the two-node instance: enough that `f · n` is at least 10.
pub fn second_moment_agents(f: f64) -> usize {
    ((10.0 / f).ceil() as usize).max(1000)
}

/// `E[D²]` for dictatorship and for deliberation when a fraction `f` of the
/// agents sits on one node of a two-node graph.
pub fn run_second_moment_experiment(f: f64, runs: usize, master_seed: u64) -> Result<(f64, f64)> {
    if !(f > 0.0 && f <= 0.5) {
        return Err(Error::input(format!(
            "minority fraction {f} outside (0, 0.5]"
        )));
    }
    if runs == 0 {
        return Err(Error::input("at least one run is required"));
    }
    let space = two_point_space();
    let n = second_moment_agents(f);
    let minority = (f * n as f64).round() as usize;
    let population: Vec<Agent> = (0..n)
        .map(|i| {
            Agent::new(
                i,
                Bliss::Vertex(Alternative(usize::from(i < minority))),
                1.0,
            )
        })
        .collect();
    let (_, opt) = optimal_alternative(&space, &population);
    let pairs: Vec<(f64, f64)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = run_rng(master_seed, run);
            let dictator = random_dictator(&space, &population, &mut rng)?;
            let trace = run_deliberation_with(
                &space,
                &population,
                &BargainScheme::Nash,
                SECOND_MOMENT_STEPS,
                &mut rng,
                |_, _, _| {},
            )?;
            let d = distortion_ratio(social_cost(&space, &population, dictator), opt);
            let l = distortion_ratio(social_cost(&space, &population, trace.final_outcome), opt);
            Ok((d * d, l * l))
        })
        .collect::<Result<_>>()?;
    let r = runs as f64;
    Ok((
        pairs.iter().map(|p| p.0).sum::<f64>() / r,
        pairs.iter().map(|p| p.1).sum::<f64>() / r,
    ))
}

/// Closed-form `E[D²]` of dictatorship on the two-node instance.
pub fn dictator_second_moment(f: f64) -> f64 {
    (1.0 - f) + (1.0 - f) * (1.0 - f) / f
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryCheck {
    pub f: f64,
    /// `π₁(f)` at the sampling frequency.
    pub expected: f64,
    /// Bit-1 frequency of the agents, per dimension.
    pub population_frequencies: Vec<f64>,
    /// `π₁` at each dimension's realized agent frequency.
    pub expected_per_dimension: Vec<f64>,
    /// Bit-1 frequency of the disagreement state over the measured window.
    pub state_frequencies: Vec<f64>,
}

impl StationaryCheck {
    /// Largest gap between a dimension's state frequency and `π₁` of that
    /// dimension's realized agent frequency.
    pub fn max_error(&self) -> f64 {
        self.state_frequencies
            .iter()
            .zip(&self.expected_per_dimension)
            .map(|(x, e)| (x - e).abs())
            .fold(0.0, f64::max)
    }

    /// Same gap measured against `π₁(f)` at the sampling frequency.
    pub fn max_error_vs_parameter(&self) -> f64 {
        self.state_frequencies
            .iter()
            .map(|x| (x - self.expected).abs())
            .fold(0.0, f64::max)
    }
}

pub const STATIONARY_DIM: u32 = 8;
pub const STATIONARY_AGENTS: usize = 2000;
pub const STATIONARY_BURN_IN: usize = 500;
pub const STATIONARY_MEASURE: usize = 5000;

/// Long Nash deliberation chain on the 8-cube with every bit frequency `f`.
pub fn run_hypercube_stationary(f: f64, master_seed: u64) -> Result<StationaryCheck> {
    let expected = stationary_bit_probability(f)?;
    let space = DecisionSpace::hypercube(STATIONARY_DIM)?;
    let mut rng = run_rng(master_seed, 0);
    let population = hypercube_population_from_f(
        &space,
        &vec![f; STATIONARY_DIM as usize],
        STATIONARY_AGENTS,
        &mut rng,
    )?;
    let mut ones = vec![0usize; STATIONARY_DIM as usize];
    run_deliberation_with(
        &space,
        &population,
        &BargainScheme::Nash,
        STATIONARY_BURN_IN + STATIONARY_MEASURE,
        &mut rng,
        |round, state, _| {
            if round > STATIONARY_BURN_IN {
                for (k, count) in ones.iter_mut().enumerate() {
                    *count += state.0 >> k & 1;
                }
            }
        },
    )?;
    let population_frequencies = bit_frequencies(&population, STATIONARY_DIM);
    let expected_per_dimension = population_frequencies
        .iter()
        .map(|&fk| stationary_bit_probability(fk))
        .collect::<Result<_>>()?;
    Ok(StationaryCheck {
        f,
        expected,
        population_frequencies,
        expected_per_dimension,
        state_frequencies: ones
            .iter()
            .map(|&c| c as f64 / STATIONARY_MEASURE as f64)
            .collect(),
    })
}

/// Mean distortion of (one-shot median of three, random dictatorship) on a
/// single 10-cube population with every bit frequency 1/2.
pub fn run_one_shot_comparison(runs: usize, master_seed: u64) -> Result<(f64, f64)> {
    if runs == 0 {
        return Err(Error::input("at least one run is required"));
    }
    let space = DecisionSpace::hypercube(10)?;
    let population = hypercube_population_from_f(
        &space,
        &[0.5; 10],
        1000,
        &mut run_rng(master_seed, usize::MAX),
    )?;
    let (_, opt) = optimal_alternative(&space, &population);
    let pairs: Vec<(f64, f64)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = run_rng(master_seed, run);
            let m = one_shot_median3(&space, &population, &mut rng)?;
            let d = random_dictator(&space, &population, &mut rng)?;
            Ok((
                distortion_ratio(social_cost(&space, &population, m), opt),
                distortion_ratio(social_cost(&space, &population, d), opt),
            ))
        })
        .collect::<Result<_>>()?;
    let r = runs as f64;
    Ok((
        pairs.iter().map(|p| p.0).sum::<f64>() / r,
        pairs.iter().map(|p| p.1).sum::<f64>() / r,
    ))
}

/// Knobs shared by the registry entries; unset fields take each
/// experiment's own default.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
    pub f: Option<f64>,
    pub k: Option<usize>,
    pub steps: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutput {
    pub name: String,
    /// Named scalar results, in reporting order.
    pub summary: Vec<(String, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<DistortionReport>,
}

pub struct ExperimentInfo {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&ExperimentParams) -> Result<ExperimentOutput>,
}

impl ExperimentInfo {
    pub fn run(&self, params: &ExperimentParams) -> Result<ExperimentOutput> {
        (self.run)(params)
    }
}

const DEFAULT_SEED: u64 = 42;

fn output(
    name: &str,
    summary: Vec<(&str, f64)>,
    report: Option<DistortionReport>,
) -> ExperimentOutput {
    ExperimentOutput {
        name: name.to_string(),
        summary: summary
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        report,
    }
}

fn scheme_run(name: &str, scheme: BargainScheme, p: &ExperimentParams) -> Result<ExperimentOutput> {
    let config = SimulationConfig {
        runs: p.runs.unwrap_or(1000),
        steps: p.steps.unwrap_or(10),
        master_seed: p.seed.unwrap_or(DEFAULT_SEED),
        ..SimulationConfig::with_scheme(scheme)
    };
    let report = run_paper_simulation(&config)?;
    let mut summary = vec![
        ("mean", report.mean),
        ("q1", report.q1),
        ("q3", report.q3),
        ("second_moment", report.second_moment),
    ];
    if let Some(m) = report.initial_population_mean {
        summary.push(("initial_population_mean", m));
    }
    Ok(output(name, summary, Some(report)))
}

static REGISTRY: &[ExperimentInfo] = &[
    ExperimentInfo {
        name: "line-nash",
        description: "line, 50 alternatives, 300 agents, T = 10, Nash bargaining",
        run: |p| scheme_run("line-nash", BargainScheme::Nash, p),
    },
    ExperimentInfo {
        name: "line-selfish",
        description: "as line-nash with selfish bargaining",
        run: |p| scheme_run("line-selfish", BargainScheme::Selfish, p),
    },
    ExperimentInfo {
        name: "line-unselfish",
        description: "as line-nash with unselfish bargaining (shift scale 0.05)",
        run: |p| scheme_run("line-unselfish", BargainScheme::unselfish(), p),
    },
    ExperimentInfo {
        name: "dictator-bound",
        description: "random dictatorship over fresh line populations",
        run: |p| {
            let config = SimulationConfig {
                mechanism: Mechanism::Dictator,
                runs: p.runs.unwrap_or(10_000),
                master_seed: p.seed.unwrap_or(DEFAULT_SEED),
                ..Default::default()
            };
            let report = run_paper_simulation(&config)?;
            Ok(output(
                "dictator-bound",
                vec![
                    ("mean", report.mean),
                    ("second_moment", report.second_moment),
                ],
                Some(report),
            ))
        },
    },
    ExperimentInfo {
        name: "kstar",
        description: "one agent per leaf of a k-star (default k = 50)",
        run: |p| {
            let r = run_kstar_experiment(
                p.k.unwrap_or(50),
                p.runs.unwrap_or(1000),
                p.steps.unwrap_or(10),
                p.seed.unwrap_or(DEFAULT_SEED),
            )?;
            Ok(output(
                "kstar",
                vec![
                    ("k", r.k as f64),
                    ("dictator_mean", r.dictator_mean),
                    ("deliberation_mean", r.deliberation_mean),
                    ("expected", r.expected),
                ],
                None,
            ))
        },
    },
    ExperimentInfo {
        name: "unanimity",
        description: "epsilon-unanimous two-alternative populations (default epsilon = 0.1)",
        run: |p| {
            let eps = p.epsilon.unwrap_or(0.1);
            let (delib, dict) = run_unanimity_experiment(
                eps,
                p.runs.unwrap_or(2000),
                p.seed.unwrap_or(DEFAULT_SEED),
            )?;
            Ok(output(
                "unanimity",
                vec![
                    ("epsilon", eps),
                    ("deliberation_mean", delib),
                    ("dictator_mean", dict),
                ],
                None,
            ))
        },
    },
    ExperimentInfo {
        name: "second-moment",
        description: "two-node instance with minority fraction f (default f = 0.01)",
        run: |p| {
            let f = p.f.unwrap_or(0.01);
            let (dict, delib) = run_second_moment_experiment(
                f,
                p.runs.unwrap_or(20_000),
                p.seed.unwrap_or(DEFAULT_SEED),
            )?;
            Ok(output(
                "second-moment",
                vec![
                    ("f", f),
                    ("dictator_second_moment", dict),
                    ("dictator_closed_form", dictator_second_moment(f)),
                    ("deliberation_second_moment", delib),
                ],
                None,
            ))
        },
    },
    ExperimentInfo {
        name: "hypercube-stationary",
        description: "8-cube Nash chain, 500 burn-in + 5000 measured steps (default f = 0.2929)",
        run: |p| {
            let check =
                run_hypercube_stationary(p.f.unwrap_or(0.2929), p.seed.unwrap_or(DEFAULT_SEED))?;
            let summary = vec![
                ("f", check.f),
                ("expected", check.expected),
                ("max_error", check.max_error()),
                ("max_error_vs_parameter", check.max_error_vs_parameter()),
            ];
            let mut out = output("hypercube-stationary", summary, None);
            for (k, (state, expected)) in check
                .state_frequencies
                .iter()
                .zip(&check.expected_per_dimension)
                .enumerate()
            {
                out.summary.push((format!("state_bit_{k}"), *state));
                out.summary.push((format!("expected_bit_{k}"), *expected));
            }
            Ok(out)
        },
    },
    ExperimentInfo {
        name: "one-shot-median",
        description: "one-shot median of three vs dictatorship on a 10-cube, f = 1/2",
        run: |p| {
            let (median, dict) =
                run_one_shot_comparison(p.runs.unwrap_or(2000), p.seed.unwrap_or(DEFAULT_SEED))?;
            Ok(output(
                "one-shot-median",
                vec![("median3_mean", median), ("dictator_mean", dict)],
                None,
            ))
        },
    },
];

pub fn registry() -> &'static [ExperimentInfo] {
    REGISTRY
}

pub fn find_experiment(name: &str) -> Option<&'static ExperimentInfo> {
    REGISTRY.iter().find(|e| e.name == name)
}
