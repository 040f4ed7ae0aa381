//! Classical (Boolean) satisfaction by direct recursion on the definitions.
//! Used as the sign oracle for the robust semantics.

use std::collections::HashMap;

use super::eval::{check_index, BoundAtom};
use super::formula::Formula;
use super::trace::Trace;
use super::StlError;

/// Whether `trace` satisfies `phi` at sample `i`. Atoms hold when
/// `a . x + b >= 0`.
pub fn eval_boolean(phi: &Formula, trace: &Trace, i: usize) -> Result<bool, StlError> {
    check_index(trace, i)?;
    for atom in phi.atoms() {
        BoundAtom::bind(atom, trace)?;
    }
    let mut ev = BoolEval { trace, memo: HashMap::new() };
    Ok(ev.sat(phi, i))
}

struct BoolEval<'t> {
    trace: &'t Trace,
    // keyed by node address; the formula outlives the evaluator
    memo: HashMap<(usize, usize), bool>,
}

impl BoolEval<'_> {
    fn sat(&mut self, phi: &Formula, i: usize) -> bool {
        let key = (phi as *const Formula as usize, i);
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let v = self.sat_uncached(phi, i);
        self.memo.insert(key, v);
        v
    }

    fn window(&self, iv: &super::Interval, i: usize) -> Vec<usize> {
        let dt = self.trace.dt();
        (i..self.trace.len()).filter(|j| iv.contains_offset(j - i, dt)).collect()
    }

    fn sat_uncached(&mut self, phi: &Formula, i: usize) -> bool {
        let n = self.trace.len();
        match phi {
            Formula::True => true,
            Formula::Atom(a) => {
                let bound = BoundAtom::bind(a, self.trace).expect("channels checked up front");
                bound.linear(i) >= 0.0
            }
            Formula::Not(a) => !self.sat(a, i),
            Formula::Or(a, b) => self.sat(a, i) || self.sat(b, i),
            Formula::And(a, b) => self.sat(a, i) && self.sat(b, i),
            Formula::Implies(a, b) => !self.sat(a, i) || self.sat(b, i),
            Formula::Next(iv, a) => i + 1 < n && iv.contains_offset(1, self.trace.dt()) && self.sat(a, i + 1),
            Formula::Eventually(iv, a) => self.window(iv, i).into_iter().any(|j| self.sat(a, j)),
            Formula::Always(iv, a) => self.window(iv, i).into_iter().all(|j| self.sat(a, j)),
            Formula::Until(iv, a, b) => self
                .window(iv, i)
                .into_iter()
                .any(|j| self.sat(b, j) && (i..j).all(|k| self.sat(a, k))),
            Formula::Release(iv, a, b) => {
                // dual of until
                self.window(iv, i).into_iter().all(|j| self.sat(b, j) || (i..j).any(|k| self.sat(a, k)))
            }
            Formula::NonStrictRelease(iv, a, b) => self
                .window(iv, i)
                .into_iter()
                .all(|j| self.sat(b, j) || (i..=j).any(|k| self.sat(a, k))),
        }
    }
}
