use std::io::Write;

use super::VehicleState;

/// Pose and speed samples of one vehicle in the world frame.
#[derive(Clone, Debug, PartialEq)]
pub struct VehicleTrack {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub theta: Vec<f64>,
    pub v: Vec<f64>,
}

impl VehicleTrack {
    pub fn with_capacity(name: &str, n: usize) -> Self {
        VehicleTrack {
            name: name.to_string(),
            x: Vec::with_capacity(n),
            y: Vec::with_capacity(n),
            theta: Vec::with_capacity(n),
            v: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, s: VehicleState) {
        self.x.push(s.x);
        self.y.push(s.y);
        self.theta.push(s.theta);
        self.v.push(s.v);
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn state(&self, i: usize) -> VehicleState {
        VehicleState::new(self.x[i], self.y[i], self.theta[i], self.v[i])
    }
}

/// Aligned world-frame tracks; the first is the ego vehicle.
#[derive(Clone, Debug, PartialEq)]
pub struct WorldTrajectory {
    dt: f64,
    tracks: Vec<VehicleTrack>,
}

impl WorldTrajectory {
    pub fn new(dt: f64, tracks: Vec<VehicleTrack>) -> Self {
        WorldTrajectory { dt, tracks }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.tracks.first().map_or(0, VehicleTrack::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tracks(&self) -> &[VehicleTrack] {
        &self.tracks
    }

    pub fn track(&self, name: &str) -> Option<&VehicleTrack> {
        self.tracks.iter().find(|t| t.name == name)
    }

    /// Wide CSV: `t,ego_x,ego_y,ego_theta,ego_v,a1_x,...`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut header = vec!["t".to_string()];
        for t in &self.tracks {
            for f in ["x", "y", "theta", "v"] {
                header.push(format!("{}_{f}", t.name));
            }
        }
        writeln!(w, "{}", header.join(","))?;
        for i in 0..self.len() {
            write!(w, "{}", i as f64 * self.dt)?;
            for t in &self.tracks {
                write!(w, ",{},{},{},{}", t.x[i], t.y[i], t.theta[i], t.v[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
