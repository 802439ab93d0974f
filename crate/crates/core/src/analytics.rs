//! Social cost, distortion, Pareto checks, run aggregation, and the
//! closed-form stationary theory of deliberation on the hypercube.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::population::Agent;
use crate::spaces::{Alternative, DecisionSpace};

const TOL: f64 = 1e-12;

/// `Σ_u d(p_u, a)`.
pub fn social_cost(space: &DecisionSpace, population: &[Agent], a: Alternative) -> f64 {
    population
        .iter()
        .map(|agent| space.bliss_distance(&agent.bliss, a))
        .sum()
}

/// Brute-force social-cost minimizer; ties go to the lower id.
pub fn optimal_alternative(space: &DecisionSpace, population: &[Agent]) -> (Alternative, f64) {
    let mut best = Alternative(0);
    let mut best_cost = social_cost(space, population, best);
    for a in space.alternatives().skip(1) {
        let cost = social_cost(space, population, a);
        if cost < best_cost - TOL * best_cost.abs().max(1.0) {
            best = a;
            best_cost = cost;
        }
    }
    (best, best_cost)
}

/// `SC(a) / opt`, with `1` for `0 / 0` and `+∞` for `x / 0`.
pub fn distortion_ratio(cost: f64, optimal_cost: f64) -> f64 {
    if optimal_cost <= TOL {
        if cost <= TOL {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        // rounding in the sums can leave the ratio a hair under one
        (cost / optimal_cost).max(1.0)
    }
}

/// `SC(a) / SC(a*)`. Infinite when the optimum is free and `a` is not.
pub fn distortion(space: &DecisionSpace, population: &[Agent], a: Alternative) -> f64 {
    let (_, opt) = optimal_alternative(space, population);
    distortion_ratio(social_cost(space, population, a), opt)
}

/// True iff no alternative is at least as close for every agent and strictly
/// closer for one.
pub fn pareto_efficient(space: &DecisionSpace, population: &[Agent], a: Alternative) -> bool {
    let current: Vec<f64> = population
        .iter()
        .map(|p| space.bliss_distance(&p.bliss, a))
        .collect();
    !space.alternatives().any(|b| {
        let mut strictly = false;
        for (agent, &here) in population.iter().zip(&current) {
            let there = space.bliss_distance(&agent.bliss, b);
            if there > here + TOL {
                return false;
            }
            if there < here - TOL {
                strictly = true;
            }
        }
        strictly
    })
}

fn check_fraction(f: f64) -> Result<()> {
    if (0.0..=1.0).contains(&f) {
        Ok(())
    } else {
        Err(Error::Domain(format!("bit frequency {f} outside [0, 1]")))
    }
}

/// Stationary probability that one hypercube coordinate of the deliberation
/// state is 1, when a fraction `f` of agents have that bit set:
/// `f² / (f² + (1 − f)²)`.
pub fn stationary_bit_probability(f: f64) -> Result<f64> {
    check_fraction(f)?;
    let (up, down) = (f * f, (1.0 - f) * (1.0 - f));
    Ok(up / (up + down))
}

/// Expected stationary social cost over the optimal cost, per dimension.
pub fn stationary_distortion(f: f64) -> Result<f64> {
    check_fraction(f)?;
    if f == 0.0 || f == 1.0 {
        return Err(Error::Domain(format!("optimal cost vanishes at f = {f}")));
    }
    let pi = stationary_bit_probability(f)?;
    Ok((pi * (1.0 - f) + (1.0 - pi) * f) / f.min(1.0 - f))
}

/// Maximizer of [`stationary_distortion`] over `(0, 0.5]`, found by a coarse
/// grid followed by successive window refinement down to `1e-8`.
pub fn worst_case_distortion() -> (f64, f64) {
    let eval = |f: f64| stationary_distortion(f).unwrap_or(f64::NEG_INFINITY);
    let (mut lo, mut hi) = (1e-9, 0.5);
    let points = 1000;
    let mut best = (hi, eval(hi));
    loop {
        let h = (hi - lo) / points as f64;
        for i in 0..=points {
            let f = lo + h * i as f64;
            let value = eval(f);
            if value > best.1 {
                best = (f, value);
            }
        }
        if h < 1e-8 {
            return best;
        }
        lo = (best.0 - 2.0 * h).max(1e-9);
        hi = (best.0 + 2.0 * h).min(0.5);
    }
}

/// Summary of per-step distortions across runs.
///
/// Per-step lists are indexed by step, with index 0 the initial disagreement
/// point, so they have `T + 1` entries. Every field is independent of the
/// order in which runs are supplied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    /// Finite final distortions, sorted ascending.
    pub per_run_final: Vec<f64>,
    pub per_step_mean: Vec<f64>,
    pub per_step_q1: Vec<f64>,
    pub per_step_q3: Vec<f64>,
    pub mean: f64,
    pub q1: f64,
    pub q3: f64,
    pub second_moment: f64,
    /// Runs whose final distortion is infinite.
    pub infinite_count: usize,
    /// Mean final distortion measured against each run's starting population,
    /// when bargaining moved bliss points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_population_mean: Option<f64>,
}

impl DistortionReport {
    pub fn steps(&self) -> usize {
        self.per_step_mean.len().saturating_sub(1)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `step,mean,q1,q3`.
    pub fn write_steps_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(["step", "mean", "q1", "q3"])?;
        for (step, ((m, a), b)) in self
            .per_step_mean
            .iter()
            .zip(&self.per_step_q1)
            .zip(&self.per_step_q3)
            .enumerate()
        {
            out.write_record([
                step.to_string(),
                m.to_string(),
                a.to_string(),
                b.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Linear-interpolation quantile of sorted values (the `(n − 1)p` rule).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        n => {
            let h = (n - 1) as f64 * p;
            let lo = h.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
        }
    }
}

fn sorted_finite(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut finite: Vec<f64> = values.filter(|v| v.is_finite()).collect();
    finite.sort_by(f64::total_cmp);
    finite
}

fn mean_sorted(sorted: &[f64]) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    sorted.iter().sum::<f64>() / sorted.len() as f64
}

/// Aggregates an `R × (T + 1)` matrix of per-step distortions.
///
/// Infinite entries are counted and left out of every statistic. Values are
/// sorted before summation, which makes the result bit-identical under any
/// permutation of the rows.
pub fn aggregate_runs(per_run_step_distortions: &[Vec<f64>]) -> Result<DistortionReport> {
    let Some(first) = per_run_step_distortions.first() else {
        return Err(Error::input("no runs to aggregate"));
    };
    let width = first.len();
    if width == 0 {
        return Err(Error::input("runs have no steps"));
    }
    for row in per_run_step_distortions {
        if row.len() != width {
            return Err(Error::input("runs have differing step counts"));
        }
        if row.iter().any(|v| v.is_nan() || *v < 1.0 - 1e-9) {
            return Err(Error::input("distortions must be >= 1 or +inf"));
        }
    }
    let finals = sorted_finite(per_run_step_distortions.iter().map(|r| r[width - 1]));
    if finals.is_empty() {
        return Err(Error::DegenerateReport);
    }
    let infinite_count = per_run_step_distortions.len() - finals.len();

    let mut per_step_mean = Vec::with_capacity(width);
    let mut per_step_q1 = Vec::with_capacity(width);
    let mut per_step_q3 = Vec::with_capacity(width);
    for step in 0..width {
        let column = sorted_finite(per_run_step_distortions.iter().map(|r| r[step]));
        per_step_mean.push(mean_sorted(&column));
        per_step_q1.push(quantile_sorted(&column, 0.25));
        per_step_q3.push(quantile_sorted(&column, 0.75));
    }
    let squares: Vec<f64> = finals.iter().map(|d| d * d).collect();
    Ok(DistortionReport {
        mean: mean_sorted(&finals),
        q1: quantile_sorted(&finals, 0.25),
        q3: quantile_sorted(&finals, 0.75),
        second_moment: mean_sorted(&squares),
        per_run_final: finals,
        per_step_mean,
        per_step_q1,
        per_step_q3,
        infinite_count,
        initial_population_mean: None,
    })
}

/// `run,step,distortion` for every cell of the matrix.
pub fn write_distortion_csv<W: Write>(
    per_run_step_distortions: &[Vec<f64>],
    writer: W,
) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["run", "step", "distortion"])?;
    for (run, row) in per_run_step_distortions.iter().enumerate() {
        for (step, d) in row.iter().enumerate() {
            out.write_record([run.to_string(), step.to_string(), d.to_string()])?;
        }
    }
    out.flush()?;
    Ok(())
}
