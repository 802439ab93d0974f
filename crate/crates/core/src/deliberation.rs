//! Sequential deliberation and the one-shot baselines it is compared with.

use std::io::Write;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bargaining::{bargain, BargainScheme};
use crate::error::{Error, Result};
use crate::population::Agent;
use crate::spaces::{median3_unchecked, Alternative, Bliss, DecisionSpace};

/// One bargaining round. `round` is 1-based: round `t` produces `a^t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub round: usize,
    pub agent_u: usize,
    pub agent_v: usize,
    pub threat: Alternative,
    pub outcome: Alternative,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeliberationTrace {
    pub initial: Alternative,
    pub steps: Vec<Step>,
    pub final_outcome: Alternative,
    /// Bliss positions after each round; recorded for the unselfish scheme only.
    pub population_snapshots: Option<Vec<Vec<Bliss>>>,
}

impl DeliberationTrace {
    /// `a^0, a^1, ..., a^T`.
    pub fn states(&self) -> impl Iterator<Item = Alternative> + '_ {
        std::iter::once(self.initial).chain(self.steps.iter().map(|s| s.outcome))
    }

    /// Whether every round bargained against the previous round's outcome.
    pub fn is_chained(&self) -> bool {
        let mut threat = self.initial;
        for step in &self.steps {
            if step.threat != threat {
                return false;
            }
            threat = step.outcome;
        }
        threat == self.final_outcome
    }
}

fn validate_population(space: &DecisionSpace, population: &[Agent]) -> Result<()> {
    if population.is_empty() {
        return Err(Error::input("population is empty"));
    }
    for agent in population {
        space.check_bliss(&agent.bliss)?;
        if agent.selfishness.is_nan() || agent.selfishness <= 0.0 {
            return Err(Error::input(format!(
                "agent {} has non-positive selfishness",
                agent.id
            )));
        }
    }
    Ok(())
}

pub(crate) fn distinct_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.random_range(0..n);
    let j = rng.random_range(0..n - 1);
    (i, if j >= i { j + 1 } else { j })
}

/// Runs `rounds` rounds of deliberation, calling `observe(round, outcome,
/// population)` after each one with the run's current population.
///
/// Round 0 is reported for the initial disagreement point before any
/// bargaining happens.
pub fn run_deliberation_with<R, F>(
    space: &DecisionSpace,
    population: &[Agent],
    scheme: &BargainScheme,
    rounds: usize,
    rng: &mut R,
    mut observe: F,
) -> Result<DeliberationTrace>
where
    R: Rng + ?Sized,
    F: FnMut(usize, Alternative, &[Agent]),
{
    validate_population(space, population)?;
    let n = population.len();
    if rounds > 0 && n < 2 {
        return Err(Error::input("deliberation needs at least two agents"));
    }
    let mut agents = population.to_vec();
    let initial = space.snap(&agents[rng.random_range(0..n)].bliss)?;
    observe(0, initial, &agents);

    let mut snapshots = scheme
        .mutates_population()
        .then(|| Vec::with_capacity(rounds));
    let mut steps = Vec::with_capacity(rounds);
    let mut threat = initial;
    for round in 1..=rounds {
        let (i, j) = distinct_pair(n, rng);
        let result = bargain(scheme, space, &agents[i], &agents[j], threat, rng)?;
        if let Some((u, v)) = result.updated_agents {
            agents[i] = u;
            agents[j] = v;
        }
        steps.push(Step {
            round,
            agent_u: agents[i].id,
            agent_v: agents[j].id,
            threat,
            outcome: result.outcome,
        });
        threat = result.outcome;
        if let Some(snaps) = snapshots.as_mut() {
            snaps.push(agents.iter().map(|a| a.bliss).collect());
        }
        observe(round, threat, &agents);
    }
    Ok(DeliberationTrace {
        initial,
        steps,
        final_outcome: threat,
        population_snapshots: snapshots,
    })
}

/// Sequential deliberation: a uniformly drawn agent's bliss point seeds the
/// disagreement alternative, then each round a uniformly drawn pair of
/// distinct agents bargains against the previous outcome.
pub fn run_deliberation<R: Rng + ?Sized>(
    space: &DecisionSpace,
    population: &[Agent],
    scheme: &BargainScheme,
    rounds: usize,
    rng: &mut R,
) -> Result<DeliberationTrace> {
    run_deliberation_with(space, population, scheme, rounds, rng, |_, _, _| {})
}

/// Imposes a uniformly drawn agent's (snapped) bliss point.
pub fn random_dictator<R: Rng + ?Sized>(
    space: &DecisionSpace,
    population: &[Agent],
    rng: &mut R,
) -> Result<Alternative> {
    validate_population(space, population)?;
    space.snap(&population[rng.random_range(0..population.len())].bliss)
}

/// Median of the snapped bliss points of three distinct, uniformly drawn agents.
pub fn one_shot_median3<R: Rng + ?Sized>(
    space: &DecisionSpace,
    population: &[Agent],
    rng: &mut R,
) -> Result<Alternative> {
    if !space.is_median_graph() {
        return Err(Error::structural("one-shot median needs a median graph"));
    }
    validate_population(space, population)?;
    if population.len() < 3 {
        return Err(Error::input("one-shot median needs at least three agents"));
    }
    let picked = index::sample(rng, population.len(), 3);
    let snapped: Vec<Alternative> = picked
        .iter()
        .map(|i| space.snap(&population[i].bliss))
        .collect::<Result<_>>()?;
    Ok(median3_unchecked(space, snapped[0], snapped[1], snapped[2]))
}

/// Writes `run,step,agent_u,agent_v,threat,outcome`; alternatives are
/// written as their plot label (line coordinate or id).
pub fn write_trace_csv<'a, W, I>(space: &DecisionSpace, traces: I, writer: W) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = (usize, &'a DeliberationTrace)>,
{
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["run", "step", "agent_u", "agent_v", "threat", "outcome"])?;
    for (run, trace) in traces {
        for step in &trace.steps {
            out.write_record([
                run.to_string(),
                step.round.to_string(),
                step.agent_u.to_string(),
                step.agent_v.to_string(),
                space.label(step.threat).to_string(),
                space.label(step.outcome).to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}
