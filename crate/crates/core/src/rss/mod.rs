//! Responsibility-sensitive safety: safe distances, margin signals over
//! lane-frame trajectories, and the RSS and collision avoidance formulas.
//!
//! Every RSS atom has the form `CHANNEL >= 0`, so the margin trace and the
//! formula can be inspected separately.

mod distance;
mod formulas;
mod lane;
mod params;
mod predicates;

pub use distance::{lat_safe_distance, lon_safe_distance, mu_lateral_velocity, V_EPS};
pub use formulas::{cas_formula, cas_formula_per_agent, rss_formula, CasParams, RssParts};
pub use lane::{to_lane_coordinates, LaneTrack, LaneTrajectory, OffRoad};
pub use params::RssParams;
pub use predicates::{
    backward_difference, build_predicate_trace, gap_channel_names, pair_margins, PairMargins, A_LAT_MAX_ACC,
    A_LAT_MIN_BR, A_LON_MAX_ACC, A_LON_MIN_BR, RSS_CHANNELS, S_LAT, S_LON, V_LAT_NEG, V_LAT_STOP,
};

use thiserror::Error;

use crate::stl::StlError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RssError {
    #[error("invalid RSS parameters: {0}")]
    InvalidParams(String),
    #[error("non-finite input {0}")]
    NonFinite(f64),
    #[error("need at least 2 samples, got {0}")]
    TooShort(usize),
    #[error("misaligned trajectories: {0}")]
    Misaligned(String),
    #[error("missing vehicle `{0}`")]
    MissingVehicle(String),
    #[error(transparent)]
    Stl(#[from] StlError),
}
