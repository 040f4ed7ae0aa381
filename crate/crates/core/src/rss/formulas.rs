use serde::{Deserialize, Serialize};

use crate::stl::{Formula, Interval};

use super::predicates::{
    gap_channel_names, A_LAT_MAX_ACC, A_LAT_MIN_BR, A_LON_MAX_ACC, A_LON_MIN_BR, S_LAT, S_LON, V_LAT_NEG, V_LAT_STOP,
};
use super::{RssError, RssParams};

fn holds(channel: &str) -> Formula {
    Formula::ge(channel, 0.0)
}

/// The named pieces of the RSS response formula.
#[derive(Clone, Debug, PartialEq)]
pub struct RssParts {
    pub phi_lon: Formula,
    pub phi_lat: Formula,
    pub phi_lat_lon: Formula,
    pub phi_init: Formula,
    pub p_lon: Formula,
    pub p_lat: Formula,
    pub p_lat_hesitation: Formula,
    pub p_lat_brake: Formula,
    pub p_lat_stop: Formula,
}

impl RssParts {
    pub fn new(p: &RssParams) -> Result<Self, RssError> {
        p.validate()?;
        let hesitation = Interval::closed_open(0.0, p.rho)?;
        let reaction = Interval::from(p.rho)?;
        let s_lat = holds(S_LAT);
        let s_lon = holds(S_LON);
        let safe = s_lat.clone().or(s_lon.clone());
        let both_unsafe = s_lat.clone().not().and(s_lon.clone().not());
        let becomes_unsafe = both_unsafe.clone().next();

        let p_lon = safe
            .clone()
            .nonstrict_release(hesitation, holds(A_LON_MAX_ACC))
            .and(safe.clone().nonstrict_release(reaction, holds(A_LON_MIN_BR)));
        let p_lat_hesitation = safe.clone().nonstrict_release(hesitation, holds(A_LAT_MAX_ACC));
        let p_lat_brake = safe.clone().or(holds(V_LAT_STOP)).nonstrict_release(reaction, holds(A_LAT_MIN_BR));
        let p_lat_stop = safe.clone().nonstrict_release(
            reaction,
            holds(V_LAT_STOP).implies(safe.clone().nonstrict_release(Interval::unbounded(), holds(V_LAT_NEG))),
        );
        let p_lat = p_lat_hesitation.clone().and(p_lat_brake.clone()).and(p_lat_stop.clone());
        let either = p_lat.clone().or(p_lon.clone());

        let trigger = |lat: Formula, lon: Formula| lat.and(lon).and(becomes_unsafe.clone());
        let phi_lon = trigger(s_lat.clone().not(), s_lon.clone()).implies(p_lon.clone().next()).always(Interval::unbounded());
        let phi_lat = trigger(s_lat.clone(), s_lon.clone().not()).implies(p_lat.clone().next()).always(Interval::unbounded());
        let phi_lat_lon = trigger(s_lat, s_lon).implies(either.clone().next()).always(Interval::unbounded());
        let phi_init = both_unsafe.implies(either.next());

        Ok(RssParts { phi_lon, phi_lat, phi_lat_lon, phi_init, p_lon, p_lat, p_lat_hesitation, p_lat_brake, p_lat_stop })
    }

    pub fn formula(&self) -> Formula {
        self.phi_lon.clone().and(self.phi_lat.clone()).and(self.phi_lat_lon.clone()).and(self.phi_init.clone())
    }

    pub fn named(&self) -> Vec<(&'static str, &Formula)> {
        vec![
            ("phi_lon", &self.phi_lon),
            ("phi_lat", &self.phi_lat),
            ("phi_lat_lon", &self.phi_lat_lon),
            ("phi_init", &self.phi_init),
            ("P_lon", &self.p_lon),
            ("P_lat", &self.p_lat),
            ("P_lat_0_rho", &self.p_lat_hesitation),
            ("P_lat_1_rho_inf", &self.p_lat_brake),
            ("P_lat_2_rho_inf", &self.p_lat_stop),
        ]
    }
}

/// The RSS response formula over the margin channels, evaluated at sample 0.
pub fn rss_formula(p: &RssParams) -> Result<Formula, RssError> {
    Ok(RssParts::new(p)?.formula())
}

/// Proximity-box thresholds for the collision avoidance formula.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CasParams {
    pub delta_x: f64,
    pub delta_y: f64,
    /// Flag each agent separately; `false` requires both agents inside the
    /// box at once.
    pub per_agent: bool,
}

impl Default for CasParams {
    fn default() -> Self {
        CasParams { delta_x: 5.2, delta_y: 2.0, per_agent: true }
    }
}

fn in_box(agent: &str, delta_x: f64, delta_y: f64) -> Formula {
    let (dx, dy) = gap_channel_names(agent);
    Formula::le(dx, delta_x).and(Formula::le(dy, delta_y))
}

fn check_deltas(delta_x: f64, delta_y: f64) -> Result<(), RssError> {
    if !(delta_x.is_finite() && delta_x > 0.0 && delta_y.is_finite() && delta_y > 0.0) {
        return Err(RssError::InvalidParams(format!("CAS thresholds must be positive, got ({delta_x}, {delta_y})")));
    }
    Ok(())
}

/// `G !(dx_a1 <= δx /\ dy_a1 <= δy /\ dx_a2 <= δx /\ dy_a2 <= δy)`: a
/// violation needs both agents inside the box at the same sample.
pub fn cas_formula(delta_x: f64, delta_y: f64) -> Result<Formula, RssError> {
    check_deltas(delta_x, delta_y)?;
    Ok(in_box("a1", delta_x, delta_y).and(in_box("a2", delta_x, delta_y)).not().always(Interval::unbounded()))
}

/// Per-agent variant: `G (!(a1 in box) /\ !(a2 in box))`.
pub fn cas_formula_per_agent(delta_x: f64, delta_y: f64) -> Result<Formula, RssError> {
    check_deltas(delta_x, delta_y)?;
    Ok(in_box("a1", delta_x, delta_y)
        .not()
        .and(in_box("a2", delta_x, delta_y).not())
        .always(Interval::unbounded()))
}

impl CasParams {
    pub fn formula(&self) -> Result<Formula, RssError> {
        if self.per_agent {
            cas_formula_per_agent(self.delta_x, self.delta_y)
        } else {
            cas_formula(self.delta_x, self.delta_y)
        }
    }
}
