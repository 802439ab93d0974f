//! Sequential deliberation for social choice.
//!
//! Pairs of agents repeatedly bargain over a finite metric decision space,
//! each round's outcome becoming the next round's disagreement point. The
//! crate provides the spaces, populations and bargaining rules, the
//! deliberation engine with its one-shot baselines, distortion analytics,
//! and seeded experiment recipes.

pub mod analytics;
pub mod bargaining;
pub mod deliberation;
pub mod error;
pub mod experiments;
pub mod population;
pub mod spaces;

pub use analytics::{
    aggregate_runs, distortion, optimal_alternative, pareto_efficient, social_cost,
    stationary_bit_probability, stationary_distortion, worst_case_distortion, DistortionReport,
};
pub use bargaining::{
    nash_bargain, nash_product, selfish_bargain, unselfish_bargain, BargainResult, BargainScheme,
};
pub use deliberation::{
    one_shot_median3, random_dictator, run_deliberation, DeliberationTrace, Step,
};
pub use error::{Error, Result};
pub use experiments::{run_paper_simulation, Mechanism, SimulationConfig, SpaceSpec};
pub use population::{Agent, PopulationSpec};
pub use spaces::{
    median3, nearest_alternative, validate_median_graph, Alternative, Bliss, DecisionSpace,
    SpaceKind,
};
