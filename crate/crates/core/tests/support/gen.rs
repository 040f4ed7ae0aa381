//! Seeded generators for random formulas and traces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rss_stl::stl::{Atom, Formula, Interval, Trace};

pub const CHANNELS: [&str; 2] = ["x", "y"];

pub struct Instance {
    pub formula: Formula,
    pub trace: Trace,
    pub index: usize,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sampling periods chosen so that some interval bounds land on samples and
/// some fall strictly between them.
const DTS: [f64; 4] = [0.1, 0.25, 0.5, 1.0];

pub fn trace(rng: &mut impl Rng, max_len: usize) -> Trace {
    let n = rng.random_range(1..=max_len);
    let dt = DTS[rng.random_range(0..DTS.len())];
    let mut t = Trace::new(dt).unwrap();
    for c in CHANNELS {
        // small integers make ties and exact zeros common
        let samples = (0..n)
            .map(|_| {
                if rng.random_bool(0.7) {
                    rng.random_range(-4i32..=4) as f64
                } else {
                    rng.random_range(-4.0..4.0)
                }
            })
            .collect();
        t.push_channel(c, samples).unwrap();
    }
    t
}

pub fn interval(rng: &mut impl Rng) -> Interval {
    loop {
        let lo = rng.random_range(0..8) as f64 * 0.25;
        let shape = rng.random_range(0..6);
        let iv = match shape {
            0 => Ok(Interval::unbounded()),
            1 => Interval::from(lo),
            2 => Interval::new(lo, f64::INFINITY, true, true),
            _ => {
                let hi = lo + rng.random_range(0..10) as f64 * 0.25;
                Interval::new(lo, hi, rng.random_bool(0.3), rng.random_bool(0.3))
            }
        };
        if let Ok(iv) = iv {
            return iv;
        }
    }
}

pub fn atom(rng: &mut impl Rng) -> Atom {
    if rng.random_bool(0.15) {
        let cx = rng.random_range(-2i32..=2) as f64;
        let cy = rng.random_range(1i32..=2) as f64;
        Atom::new(vec![("x".into(), cx), ("y".into(), cy)], rng.random_range(-3i32..=3) as f64).unwrap()
    } else {
        let c = CHANNELS[rng.random_range(0..2)];
        let k = rng.random_range(-3i32..=3) as f64;
        if rng.random_bool(0.5) {
            Atom::ge(c, k)
        } else {
            Atom::le(c, k)
        }
    }
}

pub fn formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth <= 1 || rng.random_bool(0.2) {
        return if rng.random_bool(0.1) { Formula::True } else { Formula::Atom(atom(rng)) };
    }
    let sub = |rng: &mut _| formula(rng, depth - 1);
    match rng.random_range(0..12) {
        0 => sub(rng).not(),
        1 => sub(rng).or(sub(rng)),
        2 => sub(rng).and(sub(rng)),
        3 => sub(rng).implies(sub(rng)),
        4 => {
            let iv = interval(rng);
            sub(rng).next_within(iv)
        }
        5 => {
            let iv = interval(rng);
            sub(rng).until(iv, sub(rng))
        }
        6 => {
            let iv = interval(rng);
            sub(rng).release(iv, sub(rng))
        }
        7 | 8 => {
            let iv = interval(rng);
            sub(rng).nonstrict_release(iv, sub(rng))
        }
        9 => {
            let iv = interval(rng);
            sub(rng).eventually(iv)
        }
        10 => {
            let iv = interval(rng);
            sub(rng).always(iv)
        }
        _ => Formula::Atom(atom(rng)),
    }
}

/// A formula of depth at most `max_depth` that contains at least one
/// non-strict release.
pub fn formula_with_nonstrict_release(rng: &mut impl Rng, max_depth: usize) -> Formula {
    let d = max_depth.max(2);
    let iv = interval(rng);
    let core = formula(rng, d - 1).nonstrict_release(iv, formula(rng, d - 1));
    if d >= 3 && rng.random_bool(0.5) {
        let other = formula(rng, d - 1);
        match rng.random_range(0..4) {
            0 => core.and(other),
            1 => other.or(core),
            2 => core.always(interval(rng)),
            _ => core.not(),
        }
    } else {
        core
    }
}

pub fn instance(rng: &mut impl Rng, max_depth: usize, max_len: usize) -> Instance {
    let formula = formula(rng, max_depth);
    let trace = trace(rng, max_len);
    let index = rng.random_range(0..trace.len());
    Instance { formula, trace, index }
}
