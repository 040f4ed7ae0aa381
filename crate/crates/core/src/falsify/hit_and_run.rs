use rand::Rng;
use rand_distr::StandardNormal;

/// One hit-and-run move inside the box `[lo, hi]`. Works in normalized
/// coordinates: draws a uniform direction over the dimensions with nonzero
/// width, intersects the line through `current` with the box, and samples
/// uniformly on that chord. With `step < 1` the chord is first cut to
/// `[-step, step]` (normalized units) around `current`. Zero-width
/// dimensions are held at `lo`.
pub fn hit_and_run_step<R: Rng + ?Sized>(current: &[f64], lo: &[f64], hi: &[f64], step: f64, rng: &mut R) -> Vec<f64> {
    assert!(current.len() == lo.len() && lo.len() == hi.len(), "dimension mismatch");
    let width: Vec<f64> = lo.iter().zip(hi).map(|(l, h)| h - l).collect();
    let active: Vec<usize> = (0..lo.len()).filter(|&k| width[k] > 0.0).collect();
    if active.is_empty() {
        return lo.to_vec();
    }
    let nudge = 1e-9;
    let u: Vec<f64> = (0..lo.len())
        .map(|k| if width[k] > 0.0 { ((current[k] - lo[k]) / width[k]).clamp(nudge, 1.0 - nudge) } else { 0.0 })
        .collect();

    let mut dir = vec![0.0; lo.len()];
    loop {
        let mut norm2 = 0.0;
        for &k in &active {
            let g: f64 = rng.sample(StandardNormal);
            dir[k] = g;
            norm2 += g * g;
        }
        if norm2 > 0.0 {
            let norm = norm2.sqrt();
            for &k in &active {
                dir[k] /= norm;
            }
            break;
        }
    }

    let (mut t_lo, mut t_hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for &k in &active {
        if dir[k] != 0.0 {
            let a = -u[k] / dir[k];
            let b = (1.0 - u[k]) / dir[k];
            t_lo = t_lo.max(a.min(b));
            t_hi = t_hi.min(a.max(b));
        }
    }
    if step < 1.0 {
        t_lo = t_lo.max(-step);
        t_hi = t_hi.min(step);
    }
    let t = if t_hi > t_lo { rng.random_range(t_lo..t_hi) } else { 0.0 };

    (0..lo.len())
        .map(|k| {
            if width[k] > 0.0 {
                lo[k] + (u[k] + t * dir[k]).clamp(0.0, 1.0) * width[k]
            } else {
                lo[k]
            }
        })
        .collect()
}
