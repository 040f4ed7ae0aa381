use serde::{Deserialize, Serialize};

use super::{SimConfig, VehicleState};

/// Longitudinal acceleration (m/s²) and front-wheel steering angle (rad).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Control {
    pub accel: f64,
    pub steer: f64,
}

/// A single lane-change and speed-change maneuver.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Maneuver {
    pub y_target: f64,
    pub v_target: f64,
    pub start: f64,
    pub duration: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AgentPlan {
    pub init: VehicleState,
    pub maneuver: Maneuver,
}

impl Maneuver {
    fn progress(&self, t: f64) -> f64 {
        ((t - self.start) / self.duration).clamp(0.0, 1.0)
    }

    /// Smoothstep lateral reference.
    pub fn y_ref(&self, y0: f64, t: f64) -> f64 {
        let s = self.progress(t);
        y0 + (self.y_target - y0) * s * s * (3.0 - 2.0 * s)
    }

    /// Linear speed reference (constant acceleration over the window).
    pub fn v_ref(&self, v0: f64, t: f64) -> f64 {
        v0 + (self.v_target - v0) * self.progress(t)
    }
}

/// Ego control: pure pursuit toward the centerline `lane_y`, proportional
/// speed tracking toward the lesser of the target speed and the speed that
/// keeps the configured time headway to the nearest leader in its corridor
/// (lateral bumper gap below one lane width).
pub fn ego_controller_step(ego: &VehicleState, others: &[VehicleState], lane_y: f64, cfg: &SimConfig) -> Control {
    let alpha = (lane_y - ego.y).atan2(cfg.lookahead) - ego.theta;
    let steer = (2.0 * cfg.wheelbase * alpha.sin() / cfg.lookahead).atan().clamp(-cfg.max_steer, cfg.max_steer);

    let mut v_des = cfg.target_speed;
    for o in others {
        let ahead = o.x - ego.x;
        let lateral_gap = (o.y - ego.y).abs() - cfg.vehicle.width;
        if ahead > 0.0 && lateral_gap < cfg.road.lane_width {
            let gap = ahead - cfg.vehicle.length;
            v_des = v_des.min(((gap - cfg.standstill_gap) / cfg.time_headway).max(0.0));
        }
    }
    let accel = (cfg.speed_gain * (v_des - ego.v)).clamp(-cfg.max_decel, cfg.max_accel);
    Control { accel, steer }
}

/// Agent control: dead-beat tracking of the maneuver references. Agents do
/// not react to other vehicles.
pub fn agent_profile_step(a: &VehicleState, m: &Maneuver, init: VehicleState, t: f64, cfg: &SimConfig) -> Control {
    let dt = cfg.dt;
    let lim = cfg.agent_accel_limit;
    let accel = ((m.v_ref(init.v, t + dt) - a.v) / dt).clamp(-lim, lim);

    // y one step ahead is already fixed by the current heading; choose the
    // heading after this step so the step after lands on the reference
    let y1 = a.y + a.v * a.theta.sin() * dt;
    let v1 = (a.v + accel * dt).max(0.0);
    let steer = if a.v > 0.0 && v1 > 0.0 {
        let max_sin = std::f64::consts::FRAC_1_SQRT_2;
        let sin1 = ((m.y_ref(init.y, t + 2.0 * dt) - y1) / (v1 * dt)).clamp(-max_sin, max_sin);
        ((sin1.asin() - a.theta) * cfg.wheelbase / (a.v * dt)).atan()
    } else {
        0.0
    };
    Control { accel, steer }
}
