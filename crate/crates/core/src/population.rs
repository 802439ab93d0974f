//! Agent populations.

use std::io::{Read, Write};

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{Alternative, Bliss, DecisionSpace, SpaceKind, LINE_UPPER};

/// Smallest selfishness a sampled agent can have.
pub const MIN_SELFISHNESS: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub id: usize,
    pub bliss: Bliss,
    /// The weight λ; always positive.
    pub selfishness: f64,
}

impl Agent {
    pub fn new(id: usize, bliss: Bliss, selfishness: f64) -> Self {
        Agent {
            id,
            bliss,
            selfishness,
        }
    }

    /// Agent on the line at `p` with unit selfishness.
    pub fn at(id: usize, p: f64) -> Self {
        Agent::new(id, Bliss::Point(p), 1.0)
    }

    /// Line position of a continuous bliss point.
    pub fn position(&self) -> Option<f64> {
        match self.bliss {
            Bliss::Point(p) => Some(p),
            Bliss::Vertex(_) => None,
        }
    }
}

/// Three-cluster Gaussian line population parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopulationSpec {
    pub n_agents: usize,
    pub n_clusters: usize,
    pub cluster_sigma: f64,
    pub selfishness_mean: f64,
    pub selfishness_sigma: f64,
}

impl Default for PopulationSpec {
    fn default() -> Self {
        PopulationSpec {
            n_agents: 300,
            n_clusters: 3,
            cluster_sigma: 0.05,
            selfishness_mean: 1.0,
            selfishness_sigma: 0.1,
        }
    }
}

impl PopulationSpec {
    pub fn with_agents(n_agents: usize) -> Self {
        PopulationSpec {
            n_agents,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_agents == 0 {
            return Err(Error::input("population needs at least one agent"));
        }
        if self.n_clusters == 0 {
            return Err(Error::input("population needs at least one cluster"));
        }
        if !(self.cluster_sigma >= 0.0 && self.cluster_sigma.is_finite()) {
            return Err(Error::input(format!(
                "cluster sigma {} must be finite and >= 0",
                self.cluster_sigma
            )));
        }
        if !(self.selfishness_sigma >= 0.0 && self.selfishness_sigma.is_finite()) {
            return Err(Error::input(format!(
                "selfishness sigma {} must be finite and >= 0",
                self.selfishness_sigma
            )));
        }
        if !self.selfishness_mean.is_finite() {
            return Err(Error::input("selfishness mean must be finite"));
        }
        Ok(())
    }
}

fn selfishness_sampler(mean: f64, sigma: f64) -> Result<Normal<f64>> {
    Normal::new(mean, sigma).map_err(|e| Error::input(format!("selfishness distribution: {e}")))
}

fn default_selfishness() -> Normal<f64> {
    let spec = PopulationSpec::default();
    selfishness_sampler(spec.selfishness_mean, spec.selfishness_sigma)
        .expect("default spec is valid")
}

#[inline]
fn clamp_selfishness(x: f64) -> f64 {
    x.max(MIN_SELFISHNESS)
}

/// Samples the line population and returns the cluster means alongside it.
pub fn sample_population_with_means<R: Rng + ?Sized>(
    spec: &PopulationSpec,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<Agent>)> {
    spec.validate()?;
    let means: Vec<f64> = (0..spec.n_clusters).map(|_| rng.random::<f64>()).collect();
    let clusters: Vec<Normal<f64>> = means
        .iter()
        .map(|&mu| Normal::new(mu, spec.cluster_sigma).expect("sigma validated"))
        .collect();
    let lambda = selfishness_sampler(spec.selfishness_mean, spec.selfishness_sigma)?;
    let agents = (0..spec.n_agents)
        .map(|id| {
            let cluster = clusters.choose(rng).expect("at least one cluster");
            let bliss = cluster.sample(rng).clamp(0.0, LINE_UPPER);
            let selfishness = clamp_selfishness(lambda.sample(rng));
            Agent::new(id, Bliss::Point(bliss), selfishness)
        })
        .collect();
    Ok((means, agents))
}

/// Bliss points drawn from uniformly placed Gaussian clusters on `[0, 1)`.
pub fn sample_population<R: Rng + ?Sized>(
    spec: &PopulationSpec,
    rng: &mut R,
) -> Result<Vec<Agent>> {
    sample_population_with_means(spec, rng).map(|(_, agents)| agents)
}

/// Number of agents placed on the common point of an ε-unanimous population.
pub fn unanimous_count(n: usize, epsilon: f64) -> usize {
    // The small offset keeps products like 0.9 * 300 from rounding up.
    (((1.0 - epsilon) * n as f64) - 1e-9).ceil().max(0.0) as usize
}

/// `⌈(1−ε)n⌉` agents on one uniformly drawn alternative, the rest uniform
/// over the other alternatives.
pub fn sample_epsilon_unanimous<R: Rng + ?Sized>(
    n: usize,
    epsilon: f64,
    space: &DecisionSpace,
    rng: &mut R,
) -> Result<Vec<Agent>> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::input(format!("epsilon {epsilon} outside [0, 1)")));
    }
    if n == 0 {
        return Err(Error::input("population needs at least one agent"));
    }
    let size = space.len();
    let majority = Alternative(rng.random_range(0..size));
    let unanimous = unanimous_count(n, epsilon).min(n);
    if unanimous < n && size < 2 {
        return Err(Error::input(
            "a dissenting minority needs at least two alternatives",
        ));
    }
    let lambda = default_selfishness();
    let agents = (0..n)
        .map(|id| {
            let at = if id < unanimous {
                majority
            } else {
                let other = rng.random_range(0..size - 1);
                Alternative(if other >= majority.0 {
                    other + 1
                } else {
                    other
                })
            };
            Agent::new(id, Bliss::Vertex(at), clamp_selfishness(lambda.sample(rng)))
        })
        .collect();
    Ok(agents)
}

/// Hypercube population whose k-th bit is 1 with probability `f[k]`.
pub fn hypercube_population_from_f<R: Rng + ?Sized>(
    space: &DecisionSpace,
    f: &[f64],
    n: usize,
    rng: &mut R,
) -> Result<Vec<Agent>> {
    let dim = space.dimension().ok_or(Error::UnsupportedSpace {
        op: "hypercube_population_from_f",
        kind: space.kind(),
    })?;
    if f.len() != dim as usize {
        return Err(Error::input(format!(
            "got {} bit frequencies for a {dim}-cube",
            f.len()
        )));
    }
    if let Some(bad) = f.iter().find(|fk| !(0.0..=1.0).contains(*fk)) {
        return Err(Error::input(format!("bit frequency {bad} outside [0, 1]")));
    }
    let lambda = default_selfishness();
    let agents = (0..n)
        .map(|id| {
            let bits = f.iter().enumerate().fold(0usize, |acc, (k, &fk)| {
                if rng.random::<f64>() < fk {
                    acc | (1 << k)
                } else {
                    acc
                }
            });
            Agent::new(
                id,
                Bliss::Vertex(Alternative(bits)),
                clamp_selfishness(lambda.sample(rng)),
            )
        })
        .collect();
    Ok(agents)
}

/// Agents placed uniformly over the alternatives of any space.
pub fn sample_uniform_vertices<R: Rng + ?Sized>(
    space: &DecisionSpace,
    n: usize,
    rng: &mut R,
) -> Result<Vec<Agent>> {
    if n == 0 {
        return Err(Error::input("population needs at least one agent"));
    }
    let lambda = default_selfishness();
    Ok((0..n)
        .map(|id| {
            let at = Alternative(rng.random_range(0..space.len()));
            Agent::new(id, Bliss::Vertex(at), clamp_selfishness(lambda.sample(rng)))
        })
        .collect())
}

/// Fraction of agents whose k-th bit is 1, per dimension.
pub fn bit_frequencies(agents: &[Agent], dim: u32) -> Vec<f64> {
    let n = agents.len().max(1) as f64;
    (0..dim)
        .map(|k| {
            agents
                .iter()
                .filter(|a| matches!(a.bliss, Bliss::Vertex(v) if v.0 >> k & 1 == 1))
                .count() as f64
                / n
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct AgentRow {
    id: usize,
    bliss: String,
    selfishness: f64,
}

/// Writes `id,bliss,selfishness`. Line bliss is a real, vertex bliss an id.
pub fn write_csv<W: Write>(agents: &[Agent], writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    for agent in agents {
        let bliss = match agent.bliss {
            Bliss::Point(p) => p.to_string(),
            Bliss::Vertex(v) => v.0.to_string(),
        };
        out.serialize(AgentRow {
            id: agent.id,
            bliss,
            selfishness: agent.selfishness,
        })?;
    }
    out.flush()?;
    Ok(())
}

/// Reads the format of [`write_csv`], interpreting bliss by the space's kind.
pub fn read_csv<R: Read>(reader: R, space: &DecisionSpace) -> Result<Vec<Agent>> {
    let mut input = csv::Reader::from_reader(reader);
    let mut agents = Vec::new();
    for row in input.deserialize() {
        let row: AgentRow = row?;
        let bliss = if space.kind() == SpaceKind::Line {
            Bliss::Point(
                row.bliss
                    .trim()
                    .parse()
                    .map_err(|e| Error::input(format!("bliss `{}`: {e}", row.bliss)))?,
            )
        } else {
            Bliss::Vertex(Alternative(
                row.bliss
                    .trim()
                    .parse()
                    .map_err(|e| Error::input(format!("bliss `{}`: {e}", row.bliss)))?,
            ))
        };
        space.check_bliss(&bliss)?;
        if row.selfishness.is_nan() || row.selfishness <= 0.0 {
            return Err(Error::input(format!(
                "agent {} has non-positive selfishness",
                row.id
            )));
        }
        agents.push(Agent::new(row.id, bliss, row.selfishness));
    }
    Ok(agents)
}
