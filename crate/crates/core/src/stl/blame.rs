//! Robustness with provenance: which atom, at which sample, supplied the
//! value that reached the root of the evaluation.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::eval::{check_index, evaluate, BoundAtom, Lattice};
use super::formula::{Atom, Formula};
use super::trace::Trace;
use super::value::RobustValue;
use super::StlError;

/// Where a propagated value came from: `(sample, atom rank)`, the rank being
/// the position of the atom's `(label, predicate)` pair in lexicographic
/// order.
type Source = Option<(usize, usize)>;

#[derive(Clone, Copy, Debug)]
struct Tagged {
    v: RobustValue,
    src: Source,
}

/// Ties are broken toward the earliest sample, then the smallest label;
/// values without an atom source lose every tie.
fn prefer(a: Tagged, b: Tagged) -> Tagged {
    match (a.src, b.src) {
        (Some(x), Some(y)) if y < x => b,
        (None, Some(_)) => b,
        _ => a,
    }
}

impl Lattice for Tagged {
    fn top() -> Self {
        Tagged { v: RobustValue::TOP, src: None }
    }
    fn bottom() -> Self {
        Tagged { v: RobustValue::BOTTOM, src: None }
    }
    fn negate(self) -> Self {
        Tagged { v: -self.v, src: self.src }
    }
    fn join(self, other: Self) -> Self {
        match self.v.partial_cmp(&other.v) {
            Some(Ordering::Greater) => self,
            Some(Ordering::Less) => other,
            _ => prefer(self, other),
        }
    }
    fn meet(self, other: Self) -> Self {
        match self.v.partial_cmp(&other.v) {
            Some(Ordering::Less) => self,
            Some(Ordering::Greater) => other,
            _ => prefer(self, other),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlameSite {
    /// Channel name for single-channel atoms, rendered predicate otherwise.
    pub atom: String,
    pub predicate: String,
    pub sample: usize,
    pub time: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AtomExtreme {
    pub value: f64,
    pub sample: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustnessReport {
    #[serde(serialize_with = "ser_robust")]
    pub robustness: RobustValue,
    pub blamed: Option<BlameSite>,
    /// Smallest margin of each atom over the whole trace.
    pub per_atom_extremes: BTreeMap<String, AtomExtreme>,
}

fn ser_robust<S: serde::Serializer>(v: &RobustValue, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl RobustnessReport {
    pub fn blamed_atom(&self) -> Option<&str> {
        self.blamed.as_ref().map(|b| b.atom.as_str())
    }

    pub fn critical_sample(&self) -> Option<usize> {
        self.blamed.as_ref().map(|b| b.sample)
    }
}

/// Robustness at sample 0 together with the atom that determined it.
pub fn blame(phi: &Formula, trace: &Trace) -> Result<RobustnessReport, StlError> {
    blame_at(phi, trace, 0)
}

pub fn blame_at(phi: &Formula, trace: &Trace, i: usize) -> Result<RobustnessReport, StlError> {
    check_index(trace, i)?;
    let atoms = phi.atoms();
    let key = |a: &Atom| (a.label(), a.to_string());
    let mut keys: Vec<(String, String)> = atoms.iter().map(|a| key(a)).collect();
    keys.sort();
    keys.dedup();
    let rank = |a: &Atom| keys.binary_search(&key(a)).expect("key collected above");

    let mut leaf = |a: &Atom, _: usize, bound: &BoundAtom<'_>, j: usize| Tagged {
        v: bound.distance(j),
        src: Some((j, rank(a))),
    };
    let root = evaluate::<Tagged, _>(phi, trace, &mut leaf)?[i];

    let mut per_atom_extremes: BTreeMap<String, AtomExtreme> = BTreeMap::new();
    for a in &atoms {
        let bound = BoundAtom::bind(a, trace)?;
        let (sample, value) = (0..trace.len())
            .map(|j| (j, bound.distance(j).value()))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        per_atom_extremes
            .entry(a.label())
            .and_modify(|e| {
                if value < e.value || (value == e.value && sample < e.sample) {
                    *e = AtomExtreme { value, sample };
                }
            })
            .or_insert(AtomExtreme { value, sample });
    }

    let blamed = root.src.map(|(sample, r)| {
        let (atom, predicate) = keys[r].clone();
        BlameSite { atom, predicate, sample, time: trace.time(sample) }
    });
    Ok(RobustnessReport { robustness: root.v, blamed, per_atom_extremes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stl::{eval_robustness, parse_formula};

    #[test]
    fn conjunction_blames_smaller_margin() {
        let t = Trace::with_channels(1.0, [("a", vec![5.0]), ("b", vec![-2.0])]).unwrap();
        let f = parse_formula("a >= 0 /\\ b >= 0").unwrap();
        let r = blame(&f, &t).unwrap();
        assert_eq!(r.robustness.value(), -2.0);
        assert_eq!(r.blamed_atom(), Some("b"));
        assert_eq!(r.critical_sample(), Some(0));
    }

    #[test]
    fn always_of_disjunction() {
        // min over samples of max(a, b): sample 0 gives 2, sample 1 gives -1 (b)
        let t = Trace::with_channels(1.0, [("a", vec![1.0, -3.0]), ("b", vec![2.0, -1.0])]).unwrap();
        let f = parse_formula("G (a >= 0 \\/ b >= 0)").unwrap();
        let r = blame(&f, &t).unwrap();
        assert_eq!(r.robustness.value(), -1.0);
        assert_eq!(r.blamed_atom(), Some("b"));
        assert_eq!(r.critical_sample(), Some(1));
        assert_eq!(r.per_atom_extremes["a"], AtomExtreme { value: -3.0, sample: 1 });
    }

    #[test]
    fn ties_prefer_earliest_then_name() {
        let t = Trace::with_channels(1.0, [("b", vec![-1.0, -1.0]), ("a", vec![3.0, -1.0])]).unwrap();
        let f = parse_formula("G (b >= 0 /\\ a >= 0)").unwrap();
        let r = blame(&f, &t).unwrap();
        assert_eq!((r.blamed_atom(), r.critical_sample()), (Some("b"), Some(0)));
        let t2 = Trace::with_channels(1.0, [("b", vec![-1.0]), ("a", vec![-1.0])]).unwrap();
        let r2 = blame(&f, &t2).unwrap();
        assert_eq!(r2.blamed_atom(), Some("a"));
    }

    #[test]
    fn reports_the_deciding_predicate_among_same_channel_atoms() {
        let t = Trace::with_channels(0.1, [("x", vec![1.0, 3.0, 2.0])]).unwrap();
        let r = blame(&parse_formula("G (x >= 0) /\\ F (x >= 2.5)").unwrap(), &t).unwrap();
        assert_eq!(r.robustness.value(), 0.5);
        let site = r.blamed.unwrap();
        assert_eq!((site.atom.as_str(), site.predicate.as_str(), site.sample), ("x", "x >= 2.5", 1));
    }

    #[test]
    fn constant_root_has_no_blame() {
        let t = Trace::with_channels(1.0, [("x", vec![1.0])]).unwrap();
        let r = blame(&parse_formula("true \\/ x >= 0").unwrap(), &t).unwrap();
        assert_eq!(r.robustness, RobustValue::TOP);
        assert!(r.blamed.is_none());
    }

    #[test]
    fn agrees_with_plain_evaluation() {
        let t = Trace::with_channels(0.5, [("x", vec![0.3, -0.2, 1.5, -0.7, 0.0])]).unwrap();
        for src in ["G[0,1] x >= 0", "x >= 0 U[0.5,1.5] x <= 0", "!(x >= 0 RW x >= 1)", "X F x >= 1"] {
            let f = parse_formula(src).unwrap();
            assert_eq!(blame(&f, &t).unwrap().robustness, eval_robustness(&f, &t, 0).unwrap(), "{src}");
        }
    }
}
