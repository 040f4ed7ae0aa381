use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::sim::{sample_scenario, ScenarioParams, ScenarioRanges};

use super::hit_and_run::hit_and_run_step;
use super::{evaluate_scenario, FalsifyError, Objective, SearchRecord};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnealConfig {
    /// Uniform samples drawn before the chain starts; they set the initial
    /// temperature and the starting point and are not counted as
    /// iterations.
    pub warmup: usize,
    /// Final temperature as a fraction of the initial one.
    pub final_ratio: f64,
    /// Half-length of the proposal chord in normalized coordinates; 1 or
    /// more samples the full chord.
    pub step: f64,
    /// Magnitude at which infinite costs are clamped in the acceptance test.
    pub clamp: f64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig { warmup: 20, final_ratio: 1e-4, step: 0.1, clamp: 1e6 }
    }
}

/// One evaluated point of an annealing run.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluated<T> {
    pub scenario: ScenarioParams,
    pub cost: f64,
    pub payload: T,
    pub iteration: usize,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealOutcome<T> {
    pub warmup: Vec<Evaluated<T>>,
    pub history: Vec<Evaluated<T>>,
    pub best: Evaluated<T>,
    pub t0: f64,
    pub alpha: f64,
}

fn std_dev(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt()
}

/// Simulated annealing over the scenario box with hit-and-run proposals and
/// geometric cooling `T_k = T0 * alpha^k`, `alpha = final_ratio^(1/iters)`.
/// `eval` returns the cost to minimize and a payload kept with the point.
/// The run's own randomness (maneuver seed) stays fixed at the starting
/// point's.
pub fn anneal<T: Clone, E, F>(
    ranges: &ScenarioRanges,
    cfg: &AnnealConfig,
    iters: usize,
    seed: u64,
    mut eval: F,
) -> Result<AnnealOutcome<T>, E>
where
    F: FnMut(&ScenarioParams) -> Result<(f64, T), E>,
    E: From<FalsifyError>,
{
    if iters == 0 || cfg.warmup == 0 {
        return Err(FalsifyError::Invalid("iterations and warm-up size must be at least 1".into()).into());
    }
    if !(cfg.final_ratio > 0.0 && cfg.final_ratio <= 1.0 && cfg.step > 0.0 && cfg.clamp > 0.0) {
        return Err(FalsifyError::Invalid(format!("invalid annealing settings {cfg:?}")).into());
    }
    let clamp = |c: f64| c.clamp(-cfg.clamp, cfg.clamp);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut warmup = Vec::with_capacity(cfg.warmup);
    for k in 0..cfg.warmup {
        let s = sample_scenario(&mut rng, ranges).map_err(FalsifyError::from)?;
        let (cost, payload) = eval(&s)?;
        warmup.push(Evaluated { scenario: s, cost, payload, iteration: k, accepted: true });
    }
    let clamped: Vec<f64> = warmup.iter().map(|e| clamp(e.cost)).collect();
    let spread = std_dev(&clamped);
    let t0 = if spread.is_finite() && spread > 0.0 { spread } else { 1.0 };
    let alpha = cfg.final_ratio.powf(1.0 / iters as f64);

    let start = (1..warmup.len()).fold(0, |b, k| if warmup[k].cost < warmup[b].cost { k } else { b });
    let mut current = warmup[start].clone();
    let mut best = current.clone();
    let lo: Vec<f64> = ranges.0.iter().map(|r| r.lo).collect();
    let hi: Vec<f64> = ranges.0.iter().map(|r| r.hi).collect();

    let mut history = Vec::with_capacity(iters);
    for k in 0..iters {
        let temp = t0 * alpha.powi(k as i32);
        let next = hit_and_run_step(&current.scenario.to_vec(), &lo, &hi, cfg.step, &mut rng);
        let next: [f64; 14] = next.try_into().expect("14 parameters");
        let s = ScenarioParams::from_vec(&next, current.scenario.rng_seed);
        let (cost, payload) = eval(&s)?;
        let (c_new, c_cur) = (clamp(cost), clamp(current.cost));
        let accepted = c_new < c_cur || rng.random::<f64>() < (-(c_new - c_cur) / temp).exp();
        let e = Evaluated { scenario: s, cost, payload, iteration: k, accepted };
        if cost < best.cost {
            best = e.clone();
        }
        if accepted {
            current = e.clone();
        }
        history.push(e);
    }
    Ok(AnnealOutcome { warmup, history, best, t0, alpha })
}

/// Annealing on the robustness of the objective's chosen formula. Records
/// carry their iteration index and acceptance flag.
pub fn simulated_annealing(
    obj: &Objective,
    iters: usize,
    seed: u64,
    cfg: &AnnealConfig,
) -> Result<AnnealOutcome<SearchRecord>, FalsifyError> {
    let mut out = anneal(&obj.ranges, cfg, iters, seed, |s| {
        let r = evaluate_scenario(s, obj)?;
        Ok::<_, FalsifyError>((obj.cost(&r).value(), r))
    })?;
    for e in out.warmup.iter_mut().chain(out.history.iter_mut()).chain(std::iter::once(&mut out.best)) {
        e.payload.index = e.iteration;
        e.payload.accepted = e.accepted;
    }
    Ok(out)
}
