//! Deterministic kinematic simulation of one ego and two agent vehicles on a
//! straight three-lane highway.
//!
//! The lane frame has `x` along the road and `y` positive to the left, with
//! `y = 0` on the centerline of the middle lane.

mod control;
mod scenario;
mod world;

pub use control::{agent_profile_step, ego_controller_step, AgentPlan, Control, Maneuver};
pub use scenario::{sample_scenario, ParamRange, ScenarioParams, ScenarioRanges, PARAM_NAMES};
pub use world::{VehicleTrack, WorldTrajectory};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("{field} = {value} is outside [{lo}, {hi}]")]
    OutOfRange { field: &'static str, value: f64, lo: f64, hi: f64 },
    #[error("invalid simulator configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VehicleDims {
    pub length: f64,
    pub width: f64,
}

impl Default for VehicleDims {
    fn default() -> Self {
        VehicleDims { length: 4.8, width: 1.8 }
    }
}

/// A straight road aligned with the world `x` axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Road {
    pub lane_width: f64,
    pub num_lanes: usize,
}

impl Default for Road {
    fn default() -> Self {
        Road { lane_width: 3.5, num_lanes: 3 }
    }
}

impl Road {
    pub fn lane_centers(&self) -> Vec<f64> {
        let mid = (self.num_lanes as f64 - 1.0) / 2.0;
        (0..self.num_lanes).map(|k| (k as f64 - mid) * self.lane_width).collect()
    }

    /// Centerline of the lane nearest to `y`.
    pub fn nearest_lane_center(&self, y: f64) -> f64 {
        self.lane_centers()
            .into_iter()
            .min_by(|a, b| (a - y).abs().total_cmp(&(b - y).abs()))
            .unwrap_or(0.0)
    }

    pub fn half_width(&self) -> f64 {
        self.num_lanes as f64 * self.lane_width / 2.0
    }

    pub fn contains(&self, y: f64) -> bool {
        y.abs() <= self.half_width()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub dt: f64,
    pub duration: f64,
    pub road: Road,
    pub vehicle: VehicleDims,
    pub wheelbase: f64,
    pub target_speed: f64,
    /// Pure-pursuit lookahead distance (m).
    pub lookahead: f64,
    /// Proportional speed gain (1/s).
    pub speed_gain: f64,
    /// Desired time headway to the leader (s).
    pub time_headway: f64,
    /// Bumper gap kept to a stopped leader (m).
    pub standstill_gap: f64,
    pub max_decel: f64,
    pub max_accel: f64,
    pub max_steer: f64,
    /// Agents only see their own plan; this caps their speed changes.
    pub agent_accel_limit: f64,
    pub maneuver_duration: f64,
    pub maneuver_start: (f64, f64),
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 0.01,
            duration: 10.0,
            road: Road::default(),
            vehicle: VehicleDims::default(),
            wheelbase: 2.9,
            target_speed: 25.0,
            lookahead: 15.0,
            speed_gain: 1.0,
            time_headway: 3.0,
            standstill_gap: 2.0,
            max_decel: 6.0,
            max_accel: 6.0,
            max_steer: 0.5,
            agent_accel_limit: 10.0,
            maneuver_duration: 2.0,
            maneuver_start: (1.0, 5.0),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let positive = [
            ("dt", self.dt),
            ("duration", self.duration),
            ("road.lane_width", self.road.lane_width),
            ("vehicle.length", self.vehicle.length),
            ("vehicle.width", self.vehicle.width),
            ("wheelbase", self.wheelbase),
            ("lookahead", self.lookahead),
            ("speed_gain", self.speed_gain),
            ("time_headway", self.time_headway),
            ("max_decel", self.max_decel),
            ("max_accel", self.max_accel),
            ("max_steer", self.max_steer),
            ("agent_accel_limit", self.agent_accel_limit),
            ("maneuver_duration", self.maneuver_duration),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(SimError::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.road.num_lanes == 0 {
            return Err(SimError::InvalidConfig("road.num_lanes must be at least 1".into()));
        }
        if !(self.target_speed >= 0.0 && self.standstill_gap >= 0.0) {
            return Err(SimError::InvalidConfig("target_speed and standstill_gap must be non-negative".into()));
        }
        let (a, b) = self.maneuver_start;
        if !(a.is_finite() && b.is_finite() && 0.0 <= a && a <= b) {
            return Err(SimError::InvalidConfig(format!("maneuver_start ({a}, {b}) is not a valid range")));
        }
        let steps = self.duration / self.dt;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return Err(SimError::InvalidConfig(format!(
                "duration {} is not a multiple of dt {}",
                self.duration, self.dt
            )));
        }
        Ok(())
    }

    /// Number of samples, `duration / dt + 1`.
    pub fn samples(&self) -> usize {
        (self.duration / self.dt).round() as usize + 1
    }
}

/// Kinematic-bicycle state, referenced at the rear axle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VehicleState {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub v: f64,
}

impl VehicleState {
    pub fn new(x: f64, y: f64, theta: f64, v: f64) -> Self {
        VehicleState { x, y, theta, v }
    }

    /// One forward-Euler step of the kinematic bicycle model.
    pub fn step(&self, c: Control, wheelbase: f64, dt: f64) -> VehicleState {
        VehicleState {
            x: self.x + self.v * self.theta.cos() * dt,
            y: self.y + self.v * self.theta.sin() * dt,
            theta: self.theta + self.v / wheelbase * c.steer.tan() * dt,
            v: (self.v + c.accel * dt).max(0.0),
        }
    }
}

/// Initial states and maneuvers for a run; `simulate` builds one from
/// [`ScenarioParams`], tests may build arbitrary ones.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub ego: VehicleState,
    pub agents: Vec<(String, AgentPlan)>,
}

impl Scene {
    pub fn from_params(s: &ScenarioParams, cfg: &SimConfig) -> Scene {
        let (t1, t2) = s.maneuver_starts(cfg);
        let agent = |x, y, v, yt, vt, t| AgentPlan {
            init: VehicleState::new(x, y, 0.0, v),
            maneuver: Maneuver { y_target: yt, v_target: vt, start: t, duration: cfg.maneuver_duration },
        };
        Scene {
            ego: VehicleState::new(s.ego_x, s.ego_y, s.ego_theta, s.ego_v),
            agents: vec![
                ("a1".into(), agent(s.a1_x, s.a1_y, s.a1_v, s.a1_y_target, s.a1_v_target, t1)),
                ("a2".into(), agent(s.a2_x, s.a2_y, s.a2_v, s.a2_y_target, s.a2_v_target, t2)),
            ],
        }
    }
}

/// Simulates one scenario; parameters outside the default ranges are rejected.
pub fn simulate(s: &ScenarioParams, cfg: &SimConfig) -> Result<WorldTrajectory, SimError> {
    s.validate(&ScenarioRanges::default())?;
    run_scene(&Scene::from_params(s, cfg), cfg)
}

pub fn run_scene(scene: &Scene, cfg: &SimConfig) -> Result<WorldTrajectory, SimError> {
    cfg.validate()?;
    let n = cfg.samples();
    let lane = cfg.road.nearest_lane_center(scene.ego.y);
    let mut ego = scene.ego;
    let mut agents: Vec<VehicleState> = scene.agents.iter().map(|(_, p)| p.init).collect();
    let mut tracks: Vec<VehicleTrack> = std::iter::once("ego")
        .chain(scene.agents.iter().map(|(name, _)| name.as_str()))
        .map(|name| VehicleTrack::with_capacity(name, n))
        .collect();

    for k in 0..n {
        tracks[0].push(ego);
        for (j, a) in agents.iter().enumerate() {
            tracks[j + 1].push(*a);
        }
        if k + 1 == n {
            break;
        }
        let t = k as f64 * cfg.dt;
        let c = ego_controller_step(&ego, &agents, lane, cfg);
        let next_agents: Vec<VehicleState> = agents
            .iter()
            .zip(&scene.agents)
            .map(|(a, (_, plan))| a.step(agent_profile_step(a, &plan.maneuver, plan.init, t, cfg), cfg.wheelbase, cfg.dt))
            .collect();
        ego = ego.step(c, cfg.wheelbase, cfg.dt);
        agents = next_agents;
    }
    Ok(WorldTrajectory::new(cfg.dt, tracks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lone_ego(y: f64, theta: f64, v: f64) -> Scene {
        let far = |y0: f64| AgentPlan {
            init: VehicleState::new(5000.0, y0, 0.0, 0.0),
            maneuver: Maneuver { y_target: y0, v_target: 0.0, start: 1.0, duration: 2.0 },
        };
        Scene { ego: VehicleState::new(0.0, y, theta, v), agents: vec![("a1".into(), far(-3.5)), ("a2".into(), far(3.5))] }
    }

    #[test]
    fn cruising_ego_covers_250_m() {
        let w = run_scene(&lone_ego(0.0, 0.0, 25.0), &SimConfig::default()).unwrap();
        let ego = w.track("ego").unwrap();
        assert_eq!(ego.len(), 1001);
        assert!((ego.x[1000] - 250.0).abs() <= 1.0, "{}", ego.x[1000]);
        assert!(ego.y.iter().all(|y| y.abs() < 1e-12));
        assert!(ego.v.iter().all(|v| (v - 25.0).abs() < 1e-12));
    }

    #[test]
    fn free_road_speed_converges_by_8_s() {
        let cfg = SimConfig::default();
        for v0 in [10.0, 14.0, 20.0, 25.0] {
            for theta in [-std::f64::consts::FRAC_PI_8, 0.0, std::f64::consts::FRAC_PI_8] {
                let w = run_scene(&lone_ego(3.5, theta, v0), &cfg).unwrap();
                let v = &w.track("ego").unwrap().v;
                assert!(v[800..].iter().all(|v| (v - 25.0).abs() < 0.1), "v0={v0} theta={theta}: {}", v[800]);
            }
        }
    }

    #[test]
    fn ego_settles_on_its_initial_lane() {
        let w = run_scene(&lone_ego(4.5, 0.3, 20.0), &SimConfig::default()).unwrap();
        let y = w.track("ego").unwrap().y[1000];
        assert!((y - 3.5).abs() < 0.05, "{y}");
    }

    #[test]
    fn sample_count_and_shared_time_base() {
        let cfg = SimConfig { duration: 2.0, ..SimConfig::default() };
        let w = run_scene(&lone_ego(0.0, 0.0, 20.0), &cfg).unwrap();
        assert!(w.tracks().iter().all(|t| t.len() == 201));
        assert_eq!(w.len(), 201);
    }

    #[test]
    fn config_rejects_bad_duration() {
        let cfg = SimConfig { duration: 10.005, ..SimConfig::default() };
        assert!(cfg.validate().is_err());
        assert_eq!(SimConfig::default().samples(), 1001);
    }

    #[test]
    fn config_roundtrips_through_toml() {
        let cfg = SimConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        let back: SimConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        let partial: SimConfig = toml::from_str("time_headway = 2.0").unwrap();
        assert_eq!(partial.time_headway, 2.0);
        assert_eq!(partial.dt, 0.01);
    }

    #[test]
    fn lanes_are_centered_on_zero() {
        let r = Road::default();
        assert_eq!(r.lane_centers(), vec![-3.5, 0.0, 3.5]);
        assert_eq!(r.nearest_lane_center(2.0), 3.5);
        assert_eq!(r.nearest_lane_center(-1.5), 0.0);
        assert!(r.contains(5.25) && !r.contains(5.3));
    }
}
