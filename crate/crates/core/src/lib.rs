//! Offline signal temporal logic monitoring and responsibility-sensitive
//! safety (RSS) test generation for highway driving scenarios.
//!
//! * [`stl`]: formula syntax, parser, robust and Boolean semantics, blame.
//! * [`rss`]: safe distances, margin signals and the RSS / collision
//!   avoidance formulas over them.
//! * [`sim`]: a deterministic kinematic simulator for one ego and two agent
//!   vehicles on a straight three-lane highway.
//! * [`falsify`]: uniform batches, hit-and-run simulated annealing and the
//!   classification tables built from them.

pub mod stl;
pub mod rss;
pub mod sim;
pub mod falsify;
