//! One pairwise bargaining step.
//!
//! [`nash_bargain`] maximizes the Nash product over the individually
//! rational alternatives. The two perturbed variants are line-only:
//! [`selfish_bargain`] pushes the Nash outcome toward the more selfish
//! agent, and [`unselfish_bargain`] keeps the Nash outcome but moves both
//! agents' bliss points toward each other and the threat.

use std::ops::RangeInclusive;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::population::Agent;
use crate::spaces::{
    nearest_alternative, Alternative, Bliss, DecisionSpace, SpaceKind, LINE_UPPER,
};

/// Multiplicative noise range used by both perturbed schemes.
pub const NOISE_RANGE: RangeInclusive<f64> = 0.9..=1.0;

pub const DEFAULT_SHIFT_SCALE: f64 = 0.05;

/// Slack for comparing gains and products built from floating distances.
const TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum BargainScheme {
    Nash,
    Selfish,
    Unselfish { shift_scale: f64 },
}

impl BargainScheme {
    pub fn unselfish() -> Self {
        BargainScheme::Unselfish {
            shift_scale: DEFAULT_SHIFT_SCALE,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BargainScheme::Nash => "nash",
            BargainScheme::Selfish => "selfish",
            BargainScheme::Unselfish { .. } => "unselfish",
        }
    }

    /// Whether bargaining can move bliss points.
    pub fn mutates_population(&self) -> bool {
        matches!(self, BargainScheme::Unselfish { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BargainResult {
    pub outcome: Alternative,
    /// Present only for the unselfish scheme, in `(u, v)` order.
    pub updated_agents: Option<(Agent, Agent)>,
}

impl From<Alternative> for BargainResult {
    fn from(outcome: Alternative) -> Self {
        BargainResult {
            outcome,
            updated_agents: None,
        }
    }
}

/// `(d(p_u, t) − d(p_u, o)) · (d(p_v, t) − d(p_v, o))`.
pub fn nash_product(
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
    o: Alternative,
) -> f64 {
    let (gu, gv) = gains(space, u, v, threat, o);
    gu * gv
}

#[inline]
fn gains(
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
    o: Alternative,
) -> (f64, f64) {
    let gu = space.bliss_distance(&u.bliss, threat) - space.bliss_distance(&u.bliss, o);
    let gv = space.bliss_distance(&v.bliss, threat) - space.bliss_distance(&v.bliss, o);
    (gu, gv)
}

/// Brute-force Nash bargaining solution against `threat`.
///
/// Only alternatives neither agent likes less than the threat compete. Ties
/// go to the candidate closest to the threat, then to the lower id, so the
/// threat itself wins whenever nothing beats a zero product.
pub fn nash_bargain(
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
) -> Alternative {
    let mut best = threat;
    let mut best_product = 0.0;
    let mut best_hops = 0;
    for o in space.alternatives() {
        let (gu, gv) = gains(space, u, v, threat, o);
        if gu < -TOL || gv < -TOL {
            continue;
        }
        let product = gu * gv;
        let hops = space.hops(o, threat);
        if product > best_product + TOL || (product >= best_product - TOL && hops < best_hops) {
            best = o;
            best_product = product;
            best_hops = hops;
        }
    }
    best
}

fn require_line(space: &DecisionSpace, op: &'static str) -> Result<()> {
    if space.kind() == SpaceKind::Line {
        Ok(())
    } else {
        Err(Error::UnsupportedSpace {
            op,
            kind: space.kind(),
        })
    }
}

fn line_bliss(space: &DecisionSpace, bliss: &Bliss) -> f64 {
    match *bliss {
        Bliss::Point(p) => p,
        Bliss::Vertex(v) => space.line_position(v).expect("line space"),
    }
}

fn noise<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(NOISE_RANGE)
}

/// Nash outcome pushed toward the more selfish agent by `Δλ · noise`.
pub fn selfish_bargain<R: Rng + ?Sized>(
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
    rng: &mut R,
) -> Result<Alternative> {
    require_line(space, "selfish_bargain")?;
    let (strong, weak) = if u.selfishness >= v.selfishness {
        (u, v)
    } else {
        (v, u)
    };
    let o = nash_bargain(space, u, v, threat);
    let weight = strong.selfishness - weak.selfishness;
    let pull = line_bliss(space, &strong.bliss) - space.line_position(o).expect("line space");
    if weight == 0.0 || pull == 0.0 {
        return Ok(o);
    }
    shift_outcome(space, o, weight, pull, noise(rng))
}

/// [`selfish_bargain`] with the noise draw supplied by the caller.
pub fn selfish_bargain_with_noise(
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
    noise: f64,
) -> Result<Alternative> {
    require_line(space, "selfish_bargain")?;
    let (strong, weak) = if u.selfishness >= v.selfishness {
        (u, v)
    } else {
        (v, u)
    };
    let o = nash_bargain(space, u, v, threat);
    let weight = strong.selfishness - weak.selfishness;
    let pull = line_bliss(space, &strong.bliss) - space.line_position(o).expect("line space");
    if weight == 0.0 || pull == 0.0 {
        return Ok(o);
    }
    shift_outcome(space, o, weight, pull, noise)
}

fn shift_outcome(
    space: &DecisionSpace,
    o: Alternative,
    weight: f64,
    pull: f64,
    noise: f64,
) -> Result<Alternative> {
    let at = space.line_position(o).expect("line space");
    let shifted = (at + weight * noise * pull.signum()).clamp(0.0, LINE_UPPER);
    nearest_alternative(space, shifted)
}

/// Nash outcome unchanged; each agent then drifts toward the midpoint of the
/// other agent's bliss point and the threat.
///
/// Updates are applied in place in `(u, v)` then `(v, u)` order, so `v`
/// reacts to `u`'s already-shifted position.
pub fn unselfish_bargain<R: Rng + ?Sized>(
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
    shift_scale: f64,
    rng: &mut R,
) -> Result<BargainResult> {
    let noises = [noise(rng), noise(rng)];
    unselfish_bargain_with_noise(space, u, v, threat, shift_scale, noises)
}

/// [`unselfish_bargain`] with both noise draws supplied, `u`'s first.
pub fn unselfish_bargain_with_noise(
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
    shift_scale: f64,
    noises: [f64; 2],
) -> Result<BargainResult> {
    require_line(space, "unselfish_bargain")?;
    if !(shift_scale > 0.0 && shift_scale.is_finite()) {
        return Err(Error::input(format!(
            "shift scale {shift_scale} must be positive"
        )));
    }
    let outcome = nash_bargain(space, u, v, threat);
    let a = space.line_position(threat).expect("line space");
    let mut u = u.clone();
    let mut v = v.clone();
    shift_toward(space, &mut u, &v, a, shift_scale, noises[0]);
    shift_toward(space, &mut v, &u, a, shift_scale, noises[1]);
    Ok(BargainResult {
        outcome,
        updated_agents: Some((u, v)),
    })
}

fn shift_toward(
    space: &DecisionSpace,
    x: &mut Agent,
    y: &Agent,
    threat: f64,
    shift_scale: f64,
    noise: f64,
) {
    let bx = line_bliss(space, &x.bliss);
    let by = line_bliss(space, &y.bliss);
    let destination = ((by - bx) + (threat - bx)) / 2.0;
    if destination == 0.0 {
        return;
    }
    let step = (shift_scale / x.selfishness * noise).min(destination.abs());
    if step == 0.0 {
        return;
    }
    x.bliss = Bliss::Point((bx + step * destination.signum()).clamp(0.0, LINE_UPPER));
}

/// Dispatches one bargaining round for `scheme`.
pub fn bargain<R: Rng + ?Sized>(
    scheme: &BargainScheme,
    space: &DecisionSpace,
    u: &Agent,
    v: &Agent,
    threat: Alternative,
    rng: &mut R,
) -> Result<BargainResult> {
    match *scheme {
        BargainScheme::Nash => Ok(nash_bargain(space, u, v, threat).into()),
        BargainScheme::Selfish => selfish_bargain(space, u, v, threat, rng).map(Into::into),
        BargainScheme::Unselfish { shift_scale } => {
            unselfish_bargain(space, u, v, threat, shift_scale, rng)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid() -> DecisionSpace {
        DecisionSpace::line(50).unwrap()
    }

    fn alt(space: &DecisionSpace, p: f64) -> Alternative {
        nearest_alternative(space, p).unwrap()
    }

    fn agent(p: f64, lambda: f64) -> Agent {
        Agent::new(0, Bliss::Point(p), lambda)
    }

    #[test]
    fn nash_product_examples() {
        let s = grid();
        let (u, v) = (Agent::at(0, 0.44), Agent::at(1, 0.56));
        assert_abs_diff_eq!(
            nash_product(&s, &u, &v, alt(&s, 0.10), alt(&s, 0.44)),
            0.1156,
            epsilon = 1e-12
        );
        assert_eq!(nash_product(&s, &u, &v, alt(&s, 0.10), alt(&s, 0.10)), 0.0);
        let (u, v) = (Agent::at(0, 0.2), Agent::at(1, 0.8));
        assert_abs_diff_eq!(
            nash_product(&s, &u, &v, alt(&s, 0.5), alt(&s, 0.4)),
            -0.01,
            epsilon = 1e-12
        );
    }

    #[test]
    fn nash_bargain_examples() {
        let s = grid();
        let o = nash_bargain(&s, &Agent::at(0, 0.2), &Agent::at(1, 0.8), alt(&s, 0.5));
        assert_eq!(o, alt(&s, 0.5));

        let (u, v) = (Agent::at(0, 0.44), Agent::at(1, 0.56));
        let t = alt(&s, 0.10);
        assert_eq!(nash_bargain(&s, &u, &v, t), alt(&s, 0.44));
        assert_abs_diff_eq!(
            nash_product(&s, &u, &v, t, alt(&s, 0.46)),
            0.1152,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            nash_product(&s, &u, &v, t, alt(&s, 0.50)),
            0.1120,
            epsilon = 1e-12
        );

        let o = nash_bargain(&s, &Agent::at(0, 0.3), &Agent::at(1, 0.9), alt(&s, 0.3));
        assert_eq!(o, alt(&s, 0.3));
    }

    #[test]
    fn hypercube_ties_resolve_to_median() {
        // t = 0000, u = 0111, v = 1011 in bit order (0 = lsb): products tie
        // between the median and points that trade a bit each way.
        let cube = DecisionSpace::hypercube(4).unwrap();
        let u = Agent::new(0, Bliss::Vertex(Alternative(0b0111)), 1.0);
        let v = Agent::new(1, Bliss::Vertex(Alternative(0b1011)), 1.0);
        let t = Alternative(0);
        let o = nash_bargain(&cube, &u, &v, t);
        assert_eq!(o, Alternative(0b0011));
        assert_eq!(
            nash_product(&cube, &u, &v, t, Alternative(0b1111)),
            nash_product(&cube, &u, &v, t, o)
        );
    }

    #[test]
    fn selfish_equal_weights_is_nash() {
        let s = grid();
        let (u, v) = (agent(0.8, 1.0), agent(0.2, 1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = alt(&s, 0.5);
        assert_eq!(
            selfish_bargain(&s, &u, &v, t, &mut rng).unwrap(),
            nash_bargain(&s, &u, &v, t)
        );
    }

    #[test]
    fn selfish_degenerate_direction() {
        let s = grid();
        // the stronger agent already sits on the outcome
        let (u, v) = (agent(0.5, 1.3), agent(0.3, 1.0));
        let t = alt(&s, 0.5);
        assert_eq!(selfish_bargain_with_noise(&s, &u, &v, t, 0.95).unwrap(), t);
    }

    #[test]
    fn selfish_worked_example() {
        let s = grid();
        let (u, v) = (agent(0.8, 1.2), agent(0.2, 1.0));
        let t = alt(&s, 0.5);
        assert_eq!(
            selfish_bargain_with_noise(&s, &u, &v, t, 0.95).unwrap(),
            alt(&s, 0.68)
        );
        // argument order does not matter: the stronger agent is found internally
        assert_eq!(
            selfish_bargain_with_noise(&s, &v, &u, t, 0.95).unwrap(),
            alt(&s, 0.68)
        );
    }

    #[test]
    fn selfish_clamps_into_space() {
        let s = grid();
        let (u, v) = (agent(0.98, 2.0), agent(0.9, 1.0));
        let o = selfish_bargain_with_noise(&s, &u, &v, alt(&s, 0.9), 1.0).unwrap();
        assert_eq!(o, Alternative(49));
    }

    #[test]
    fn perturbed_schemes_reject_other_spaces() {
        let cube = DecisionSpace::hypercube(2).unwrap();
        let u = Agent::new(0, Bliss::Vertex(Alternative(1)), 1.2);
        let v = Agent::new(1, Bliss::Vertex(Alternative(2)), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            selfish_bargain(&cube, &u, &v, Alternative(0), &mut rng),
            Err(Error::UnsupportedSpace { .. })
        ));
        assert!(matches!(
            unselfish_bargain(&cube, &u, &v, Alternative(0), 0.05, &mut rng),
            Err(Error::UnsupportedSpace { .. })
        ));
    }

    #[test]
    fn unselfish_worked_example() {
        let s = grid();
        let (u, v) = (agent(0.4, 1.0), agent(0.6, 1.0));
        let t = alt(&s, 0.5);
        let r = unselfish_bargain_with_noise(&s, &u, &v, t, 0.05, [1.0, 1.0]).unwrap();
        assert_eq!(r.outcome, nash_bargain(&s, &u, &v, t));
        let (nu, nv) = r.updated_agents.unwrap();
        assert_abs_diff_eq!(nu.position().unwrap(), 0.45, epsilon = 1e-12);
        // v reacts to u at 0.45: destination ((0.45 - 0.6) + (0.5 - 0.6)) / 2 = -0.125
        assert_abs_diff_eq!(nv.position().unwrap(), 0.55, epsilon = 1e-12);
    }

    #[test]
    fn unselfish_stubborn_agent_stays() {
        let s = grid();
        let (u, v) = (agent(0.4, f64::MAX), agent(0.6, f64::MAX));
        let r = unselfish_bargain_with_noise(&s, &u, &v, alt(&s, 0.5), 0.05, [1.0, 1.0]).unwrap();
        let (nu, nv) = r.updated_agents.unwrap();
        assert_eq!(nu.position(), Some(0.4));
        assert_eq!(nv.position(), Some(0.6));
    }

    #[test]
    fn unselfish_zero_destination() {
        let s = grid();
        // b_u = (b_v + a) / 2 = (0.6 + 0.2) / 2
        let (u, v) = (agent(0.4, 1.0), agent(0.6, 1.0));
        let r = unselfish_bargain_with_noise(&s, &u, &v, alt(&s, 0.2), 0.05, [1.0, 1.0]).unwrap();
        assert_eq!(r.updated_agents.unwrap().0.position(), Some(0.4));
    }

    #[test]
    fn unselfish_step_capped_by_destination() {
        let s = grid();
        let (u, v) = (agent(0.49, 0.01), agent(0.51, 1.0));
        let r = unselfish_bargain_with_noise(&s, &u, &v, alt(&s, 0.5), 0.05, [1.0, 1.0]).unwrap();
        // destination ((0.51 - 0.49) + (0.5 - 0.49)) / 2 = 0.015, step 5.0 capped
        assert_abs_diff_eq!(
            r.updated_agents.unwrap().0.position().unwrap(),
            0.505,
            epsilon = 1e-12
        );
    }

    #[test]
    fn unselfish_rejects_bad_scale() {
        let s = grid();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(unselfish_bargain(
            &s,
            &agent(0.1, 1.0),
            &agent(0.2, 1.0),
            Alternative(0),
            0.0,
            &mut rng
        )
        .is_err());
    }
}
