use std::f64::consts::FRAC_PI_8;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{SimConfig, SimError};

/// Field names in vector order; `y_a1`/`v_a1` are agent 1's maneuver
/// targets.
pub const PARAM_NAMES: [&str; 14] = [
    "x_init_ego",
    "y_init_ego",
    "theta_init_ego",
    "v_init_ego",
    "x_init_a1",
    "y_init_a1",
    "v_init_a1",
    "y_a1",
    "v_a1",
    "x_init_a2",
    "y_init_a2",
    "v_init_a2",
    "y_a2",
    "v_a2",
];

/// Initial conditions and maneuver targets for one test run. `rng_seed`
/// fixes the remaining randomness (maneuver start times).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioParams {
    #[serde(rename = "x_init_ego")]
    pub ego_x: f64,
    #[serde(rename = "y_init_ego")]
    pub ego_y: f64,
    #[serde(rename = "theta_init_ego")]
    pub ego_theta: f64,
    #[serde(rename = "v_init_ego")]
    pub ego_v: f64,
    #[serde(rename = "x_init_a1")]
    pub a1_x: f64,
    #[serde(rename = "y_init_a1")]
    pub a1_y: f64,
    #[serde(rename = "v_init_a1")]
    pub a1_v: f64,
    #[serde(rename = "y_a1")]
    pub a1_y_target: f64,
    #[serde(rename = "v_a1")]
    pub a1_v_target: f64,
    #[serde(rename = "x_init_a2")]
    pub a2_x: f64,
    #[serde(rename = "y_init_a2")]
    pub a2_y: f64,
    #[serde(rename = "v_init_a2")]
    pub a2_v: f64,
    #[serde(rename = "y_a2")]
    pub a2_y_target: f64,
    #[serde(rename = "v_a2")]
    pub a2_v_target: f64,
    #[serde(default)]
    pub rng_seed: u64,
}

impl ScenarioParams {
    pub fn to_vec(&self) -> [f64; 14] {
        [
            self.ego_x,
            self.ego_y,
            self.ego_theta,
            self.ego_v,
            self.a1_x,
            self.a1_y,
            self.a1_v,
            self.a1_y_target,
            self.a1_v_target,
            self.a2_x,
            self.a2_y,
            self.a2_v,
            self.a2_y_target,
            self.a2_v_target,
        ]
    }

    pub fn from_vec(v: &[f64; 14], rng_seed: u64) -> Self {
        ScenarioParams {
            ego_x: v[0],
            ego_y: v[1],
            ego_theta: v[2],
            ego_v: v[3],
            a1_x: v[4],
            a1_y: v[5],
            a1_v: v[6],
            a1_y_target: v[7],
            a1_v_target: v[8],
            a2_x: v[9],
            a2_y: v[10],
            a2_v: v[11],
            a2_y_target: v[12],
            a2_v_target: v[13],
            rng_seed,
        }
    }

    pub fn validate(&self, ranges: &ScenarioRanges) -> Result<(), SimError> {
        for ((name, value), r) in PARAM_NAMES.iter().zip(self.to_vec()).zip(&ranges.0) {
            if !(r.lo <= value && value <= r.hi) {
                return Err(SimError::OutOfRange { field: name, value, lo: r.lo, hi: r.hi });
            }
        }
        Ok(())
    }

    /// Maneuver start times of agents 1 and 2, drawn from `rng_seed`.
    pub fn maneuver_starts(&self, cfg: &SimConfig) -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        let (lo, hi) = cfg.maneuver_start;
        let mut draw = || if lo < hi { rng.random_range(lo..=hi) } else { lo };
        let t1 = draw();
        let t2 = draw();
        (t1, t2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
}

impl ParamRange {
    pub const fn new(lo: f64, hi: f64) -> Self {
        ParamRange { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// One range per entry of [`PARAM_NAMES`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioRanges(pub [ParamRange; 14]);

impl Default for ScenarioRanges {
    fn default() -> Self {
        let r = ParamRange::new;
        ScenarioRanges([
            r(0.0, 5.0),
            r(-1.5, 4.5),
            r(-FRAC_PI_8, FRAC_PI_8),
            r(10.0, 25.0),
            r(20.0, 40.0),
            r(-3.5, -1.5),
            r(5.0, 15.0),
            r(-5.0, 0.0),
            r(10.0, 30.0),
            r(10.0, 25.0),
            r(1.0, 4.0),
            r(0.0, 30.0),
            r(0.0, 5.0),
            r(4.0, 20.0),
        ])
    }
}

impl ScenarioRanges {
    pub fn validate(&self) -> Result<(), SimError> {
        for (name, r) in PARAM_NAMES.iter().zip(&self.0) {
            if !(r.lo.is_finite() && r.hi.is_finite() && r.lo <= r.hi) {
                return Err(SimError::InvalidScenario(format!("empty range for {name}: [{}, {}]", r.lo, r.hi)));
            }
        }
        Ok(())
    }

    /// Maps a point into `[0,1]^14`; zero-width dimensions map to 0.
    pub fn normalize(&self, v: &[f64; 14]) -> [f64; 14] {
        std::array::from_fn(|k| {
            let r = self.0[k];
            if r.width() > 0.0 {
                (v[k] - r.lo) / r.width()
            } else {
                0.0
            }
        })
    }

    /// Inverse of [`normalize`](Self::normalize), clamped into the box.
    pub fn denormalize(&self, u: &[f64; 14]) -> [f64; 14] {
        std::array::from_fn(|k| {
            let r = self.0[k];
            (r.lo + u[k] * r.width()).clamp(r.lo, r.hi)
        })
    }
}

/// Independent uniform draw per dimension, then a fresh seed for the run's
/// own randomness.
pub fn sample_scenario<R: RngCore>(rng: &mut R, ranges: &ScenarioRanges) -> Result<ScenarioParams, SimError> {
    ranges.validate()?;
    let v: [f64; 14] = std::array::from_fn(|k| {
        let r = ranges.0[k];
        if r.lo < r.hi {
            rng.random_range(r.lo..=r.hi)
        } else {
            r.lo
        }
    });
    let seed = rng.next_u64();
    Ok(ScenarioParams::from_vec(&v, seed))
}
