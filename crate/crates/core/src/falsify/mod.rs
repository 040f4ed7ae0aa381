//! Scenario search: uniform batches, hit-and-run simulated annealing, and
//! classification of the resulting records by RSS and CAS verdicts.

mod anneal;
mod batch;
mod classify;
mod hit_and_run;
mod io;

pub use anneal::{anneal, simulated_annealing, AnnealConfig, AnnealOutcome, Evaluated};
pub use batch::{scenario_for_index, uniform_batch};
pub use classify::{classify_batch, is_violation, useful_tests, ClassificationTable, JointCounts, SignCounts};
pub use hit_and_run::hit_and_run_step;
pub use io::{read_results_csv, sha256_hex, write_results_csv, Manifest, results_header};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rss::{build_predicate_trace, to_lane_coordinates, CasParams, RssError, RssParams};
use crate::sim::{simulate, ScenarioParams, ScenarioRanges, SimConfig, SimError};
use crate::stl::{blame, eval_robustness, Formula, RobustValue, StlError, Trace};

#[derive(Debug, Error)]
pub enum FalsifyError {
    #[error("scenario seed {seed}: {source}")]
    Scenario { seed: u64, source: Box<FalsifyError> },
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Rss(#[from] RssError),
    #[error(transparent)]
    Stl(#[from] StlError),
    #[error("invalid search settings: {0}")]
    Invalid(String),
    #[error("results file: {0}")]
    Results(String),
}

/// Which formula drives the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SpecChoice {
    #[default]
    Rss,
    Cas,
}

impl std::str::FromStr for SpecChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "rss" => Ok(SpecChoice::Rss),
            "cas" => Ok(SpecChoice::Cas),
            other => Err(format!("unknown spec `{other}`, expected rss or cas")),
        }
    }
}

/// Search settings: the cost formula and everything needed to turn a
/// scenario into a trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ObjectiveSpec {
    pub spec: SpecChoice,
    pub rss: RssParams,
    pub cas: CasParams,
    pub sim: SimConfig,
}

/// An [`ObjectiveSpec`] with its formulas built.
#[derive(Clone, Debug)]
pub struct Objective {
    pub spec: ObjectiveSpec,
    pub ranges: ScenarioRanges,
    rss_formula: Formula,
    cas_formula: Formula,
}

impl Objective {
    pub fn new(spec: ObjectiveSpec) -> Result<Self, FalsifyError> {
        spec.sim.validate()?;
        if (spec.sim.dt - spec.rss.dt).abs() > 1e-12 {
            return Err(FalsifyError::Invalid(format!(
                "simulator dt {} differs from RSS dt {}",
                spec.sim.dt, spec.rss.dt
            )));
        }
        let rss_formula = crate::rss::rss_formula(&spec.rss)?;
        let cas_formula = spec.cas.formula()?;
        Ok(Objective { spec, ranges: ScenarioRanges::default(), rss_formula, cas_formula })
    }

    pub fn rss_formula(&self) -> &Formula {
        &self.rss_formula
    }

    pub fn cas_formula(&self) -> &Formula {
        &self.cas_formula
    }

    /// Simulates a scenario and returns its margin trace.
    pub fn predicate_trace(&self, s: &ScenarioParams) -> Result<Trace, FalsifyError> {
        let world = simulate(s, &self.spec.sim)?;
        let lane = to_lane_coordinates(&world, &self.spec.sim.road);
        Ok(build_predicate_trace(&lane, &self.spec.sim.vehicle, &self.spec.rss)?)
    }

    /// Scores an already built margin trace.
    pub fn score_trace(&self, trace: &Trace) -> Result<(RobustValue, RobustValue, Option<String>), FalsifyError> {
        let report = blame(&self.rss_formula, trace)?;
        let cas = eval_robustness(&self.cas_formula, trace, 0)?;
        Ok((report.robustness, cas, report.blamed_atom().map(str::to_string)))
    }

    /// Robustness of the formula that drives the search.
    pub fn cost(&self, r: &SearchRecord) -> RobustValue {
        match self.spec.spec {
            SpecChoice::Rss => r.robustness_rss,
            SpecChoice::Cas => r.robustness_cas,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchRecord {
    pub index: usize,
    pub scenario: ScenarioParams,
    pub robustness_rss: RobustValue,
    pub robustness_cas: RobustValue,
    pub blamed_atom: Option<String>,
    pub accepted: bool,
}

/// Simulate, convert to the lane frame, build margins, and evaluate both
/// formulas at sample 0 with blame for RSS.
pub fn evaluate_scenario(s: &ScenarioParams, obj: &Objective) -> Result<SearchRecord, FalsifyError> {
    let annotate = |e: FalsifyError| FalsifyError::Scenario { seed: s.rng_seed, source: Box::new(e) };
    let trace = obj.predicate_trace(s).map_err(annotate)?;
    let (rss, cas, blamed) = obj.score_trace(&trace).map_err(annotate)?;
    Ok(SearchRecord {
        index: 0,
        scenario: s.clone(),
        robustness_rss: rss,
        robustness_cas: cas,
        blamed_atom: blamed,
        accepted: true,
    })
}
