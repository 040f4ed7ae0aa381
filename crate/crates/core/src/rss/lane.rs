use std::io::Write;

use crate::sim::{Road, WorldTrajectory};

use super::RssError;

/// One vehicle's lane-frame samples: `x` along the road, `y` to the left.
#[derive(Clone, Debug, PartialEq)]
pub struct LaneTrack {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub vx: Vec<f64>,
    pub vy: Vec<f64>,
}

/// A sample at which a vehicle's center was outside the road.
#[derive(Clone, Debug, PartialEq)]
pub struct OffRoad {
    pub vehicle: String,
    pub first_sample: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaneTrajectory {
    pub dt: f64,
    pub tracks: Vec<LaneTrack>,
    pub off_road: Vec<OffRoad>,
}

impl LaneTrajectory {
    pub fn len(&self) -> usize {
        self.tracks.first().map_or(0, |t| t.x.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn track(&self, name: &str) -> Option<&LaneTrack> {
        self.tracks.iter().find(|t| t.name == name)
    }

    pub fn validate(&self) -> Result<(), RssError> {
        let n = self.len();
        for t in &self.tracks {
            for (field, s) in [("x", &t.x), ("y", &t.y), ("vx", &t.vx), ("vy", &t.vy)] {
                if s.len() != n {
                    return Err(RssError::Misaligned(format!("{}.{field} has {} samples, expected {n}", t.name, s.len())));
                }
                if s.iter().any(|v| !v.is_finite()) {
                    return Err(RssError::Misaligned(format!("{}.{field} has a non-finite sample", t.name)));
                }
            }
        }
        Ok(())
    }

    /// Wide CSV: `t,ego_x,ego_y,ego_vx,ego_vy,a1_x,...`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut header = vec!["t".to_string()];
        for t in &self.tracks {
            for f in ["x", "y", "vx", "vy"] {
                header.push(format!("{}_{f}", t.name));
            }
        }
        writeln!(w, "{}", header.join(","))?;
        for i in 0..self.len() {
            write!(w, "{}", i as f64 * self.dt)?;
            for t in &self.tracks {
                write!(w, ",{},{},{},{}", t.x[i], t.y[i], t.vx[i], t.vy[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Resolves world-frame poses into the lane frame. On the straight road this
/// is the identity on positions, with the speed split along and across the
/// road. Vehicles leaving the road are recorded in `off_road`.
pub fn to_lane_coordinates(world: &WorldTrajectory, road: &Road) -> LaneTrajectory {
    let mut off_road = Vec::new();
    let tracks = world
        .tracks()
        .iter()
        .map(|t| {
            if let Some(i) = t.y.iter().position(|y| !road.contains(*y)) {
                off_road.push(OffRoad { vehicle: t.name.clone(), first_sample: i });
            }
            LaneTrack {
                name: t.name.clone(),
                x: t.x.clone(),
                y: t.y.clone(),
                vx: t.v.iter().zip(&t.theta).map(|(v, th)| v * th.cos()).collect(),
                vy: t.v.iter().zip(&t.theta).map(|(v, th)| v * th.sin()).collect(),
            }
        })
        .collect();
    LaneTrajectory { dt: world.dt(), tracks, off_road }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use super::*;
    use crate::sim::{VehicleState, VehicleTrack};

    fn one_pose(s: VehicleState) -> LaneTrajectory {
        let mut t = VehicleTrack::with_capacity("ego", 1);
        t.push(s);
        to_lane_coordinates(&WorldTrajectory::new(0.01, vec![t]), &Road::default())
    }

    #[test]
    fn straight_road_is_identity_on_positions() {
        let l = one_pose(VehicleState::new(5.0, 2.0, 0.0, 10.0));
        let t = &l.tracks[0];
        assert_eq!((t.x[0], t.y[0], t.vx[0], t.vy[0]), (5.0, 2.0, 10.0, 0.0));
        assert!(l.off_road.is_empty());
    }

    #[test]
    fn velocity_resolution() {
        let t = &one_pose(VehicleState::new(0.0, 0.0, FRAC_PI_2, 10.0)).tracks[0];
        assert!(t.vx[0].abs() < 1e-12 && (t.vy[0] - 10.0).abs() < 1e-12);
        let t = &one_pose(VehicleState::new(0.0, 0.0, FRAC_PI_4, 2f64.sqrt())).tracks[0];
        assert!((t.vx[0] - 1.0).abs() < 1e-12 && (t.vy[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn off_road_is_flagged_not_fatal() {
        let l = one_pose(VehicleState::new(0.0, 6.0, 0.0, 10.0));
        assert_eq!(l.off_road, vec![OffRoad { vehicle: "ego".into(), first_sample: 0 }]);
        assert_eq!(l.len(), 1);
    }
}
