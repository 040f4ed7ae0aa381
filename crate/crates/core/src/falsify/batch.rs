use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::sim::{sample_scenario, ScenarioParams, ScenarioRanges};

use super::{evaluate_scenario, FalsifyError, Objective, SearchRecord};

/// Scenario `index` of the batch seeded with `seed`: stream `index` of a
/// ChaCha generator keyed by `seed`, so draws do not depend on evaluation
/// order.
pub fn scenario_for_index(seed: u64, index: usize, ranges: &ScenarioRanges) -> Result<ScenarioParams, FalsifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    Ok(sample_scenario(&mut rng, ranges)?)
}

/// Evaluates `n` independent uniform scenarios on up to `jobs` worker
/// threads (0 means one per core). Results are in index order and identical
/// for every `jobs`.
pub fn uniform_batch(n: usize, seed: u64, obj: &Objective, jobs: usize) -> Result<Vec<SearchRecord>, FalsifyError> {
    if n == 0 {
        return Err(FalsifyError::Invalid("batch size must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| FalsifyError::Invalid(format!("worker pool: {e}")))?;
    pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|index| {
                let s = scenario_for_index(seed, index, &obj.ranges)?;
                let mut r = evaluate_scenario(&s, obj)?;
                r.index = index;
                Ok(r)
            })
            .collect()
    })
}
