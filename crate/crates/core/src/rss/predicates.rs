use crate::sim::VehicleDims;
use crate::stl::Trace;

use super::distance::{lat_safe_distance, lon_safe_distance, mu_lateral_velocity, V_EPS};
use super::lane::{LaneTrack, LaneTrajectory};
use super::{RssError, RssParams};

pub const S_LON: &str = "S_lon";
pub const S_LAT: &str = "S_lat";
pub const A_LON_MAX_ACC: &str = "A_lon_maxAcc";
pub const A_LON_MIN_BR: &str = "A_lon_minBr";
pub const A_LAT_MAX_ACC: &str = "A_lat_maxAcc";
pub const A_LAT_MIN_BR: &str = "A_lat_minBr";
pub const V_LAT_STOP: &str = "V_lat_stop";
pub const V_LAT_NEG: &str = "V_lat_neg";

/// The eight RSS margin channels, in trace order.
pub const RSS_CHANNELS: [&str; 8] =
    [S_LON, S_LAT, A_LON_MAX_ACC, A_LON_MIN_BR, A_LAT_MAX_ACC, A_LAT_MIN_BR, V_LAT_STOP, V_LAT_NEG];

/// Longitudinal and lateral bumper gaps between the ego and one agent.
pub fn gap_channel_names(agent: &str) -> (String, String) {
    (format!("dx_{agent}"), format!("dy_{agent}"))
}

/// Backward difference; the first sample copies the second.
pub fn backward_difference(v: &[f64], dt: f64) -> Vec<f64> {
    let mut d: Vec<f64> = (0..v.len()).map(|i| if i == 0 { 0.0 } else { (v[i] - v[i - 1]) / dt }).collect();
    if d.len() > 1 {
        d[0] = d[1];
    }
    d
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Margins of one ego/agent pair at one sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairMargins {
    pub lon: f64,
    pub lat: f64,
    /// +1 when the ego is on the agent's left, -1 otherwise.
    pub side: f64,
}

impl PairMargins {
    /// The pair is safe when either margin is positive; lower is more
    /// dangerous.
    pub fn danger(&self) -> f64 {
        self.lon.max(self.lat)
    }
}

/// Longitudinal margin is the gap minus the safe distance when the agent is
/// ahead, and the bare gap when it is behind (the rear car is responsible).
/// Lateral margin is the gap minus the lateral safe distance, mirrored so the
/// ego is always on the left.
pub fn pair_margins(
    ego: (f64, f64, f64, f64),
    agent: (f64, f64, f64, f64),
    dims: &VehicleDims,
    p: &RssParams,
) -> Result<PairMargins, RssError> {
    let (ex, ey, evx, evmu) = ego;
    let (ax, ay, avx, avmu) = agent;
    let dx = ax - ex;
    let gap_lon = dx.abs() - dims.length;
    let lon = if dx >= 0.0 { gap_lon - lon_safe_distance(evx, avx, p)? } else { gap_lon };
    let side = if ey >= ay { 1.0 } else { -1.0 };
    let gap_lat = (ay - ey).abs() - dims.width;
    let lat = gap_lat - lat_safe_distance(-side * evmu, -side * avmu, p)?;
    Ok(PairMargins { lon, lat, side })
}

/// Builds the margin trace. At each sample the agent with the lowest
/// [`PairMargins::danger`] supplies both distance margins and the side
/// convention. Agent gap channels are appended as `dx_<name>`, `dy_<name>`.
pub fn build_predicate_trace(lane: &LaneTrajectory, dims: &VehicleDims, p: &RssParams) -> Result<Trace, RssError> {
    p.validate()?;
    lane.validate()?;
    if (lane.dt - p.dt).abs() > 1e-9 * p.dt {
        return Err(RssError::Misaligned(format!("trace dt {} differs from parameter dt {}", lane.dt, p.dt)));
    }
    let ego = lane.track("ego").ok_or_else(|| RssError::MissingVehicle("ego".into()))?;
    let agents: Vec<&LaneTrack> = lane.tracks.iter().filter(|t| t.name != "ego").collect();
    if agents.is_empty() {
        return Err(RssError::MissingVehicle("agent".into()));
    }
    let n = lane.len();
    let ego_mu = mu_lateral_velocity(&ego.y, p)?;
    let agent_mu = agents.iter().map(|a| mu_lateral_velocity(&a.y, p)).collect::<Result<Vec<_>, _>>()?;
    let a_lon = backward_difference(&ego.vx, p.dt);
    let a_lat = backward_difference(&ego.vy, p.dt);

    let mut ch: Vec<Vec<f64>> = vec![Vec::with_capacity(n); RSS_CHANNELS.len()];
    for i in 0..n {
        let e = (ego.x[i], ego.y[i], ego.vx[i], ego_mu[i]);
        let mut worst: Option<PairMargins> = None;
        for (a, mu) in agents.iter().zip(&agent_mu) {
            let m = pair_margins(e, (a.x[i], a.y[i], a.vx[i], mu[i]), dims, p)?;
            if worst.is_none_or(|w| m.danger() < w.danger()) {
                worst = Some(m);
            }
        }
        let w = worst.expect("at least one agent");
        let row = [
            w.lon,
            w.lat,
            p.a_lon_max_acc - a_lon[i],
            -a_lon[i] - p.a_lon_min_br,
            p.a_lat_max_acc - a_lat[i].abs(),
            -sign(ego_mu[i]) * a_lat[i] - p.a_lat_min_br,
            V_EPS - ego_mu[i].abs(),
            V_EPS + w.side * ego_mu[i],
        ];
        for (c, v) in ch.iter_mut().zip(row) {
            c.push(v);
        }
    }

    let mut trace = Trace::new(p.dt)?;
    for (name, samples) in RSS_CHANNELS.iter().zip(ch) {
        trace.push_channel(*name, samples)?;
    }
    for a in &agents {
        let (dx, dy) = gap_channel_names(&a.name);
        trace.push_channel(dx, (0..n).map(|i| (a.x[i] - ego.x[i]).abs() - dims.length).collect())?;
        trace.push_channel(dy, (0..n).map(|i| (a.y[i] - ego.y[i]).abs() - dims.width).collect())?;
    }
    Ok(trace)
}
