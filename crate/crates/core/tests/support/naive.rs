//! Direct transcription of the recursive sup/inf robust semantics, used only
//! as a test oracle. Derived operators are evaluated through their
//! abbreviations; nothing here shares code with the dynamic-programming
//! evaluator except interval membership.

use std::collections::HashMap;

use rss_stl::stl::{Formula, RobustValue, Trace};

pub struct Naive<'t> {
    trace: &'t Trace,
    memo: HashMap<(usize, usize), RobustValue>,
}

/// Rewrites derived operators into `true`, atoms, `!`, `\/`, `X`, `U` and
/// the directly defined non-strict release.
pub fn desugar(phi: &Formula) -> Formula {
    let d = |f: &Formula| desugar(f);
    match phi {
        Formula::True | Formula::Atom(_) => phi.clone(),
        Formula::Not(a) => d(a).not(),
        Formula::Or(a, b) => d(a).or(d(b)),
        Formula::And(a, b) => d(a).not().or(d(b).not()).not(),
        Formula::Implies(a, b) => d(a).not().or(d(b)),
        Formula::Next(iv, a) => d(a).next_within(*iv),
        Formula::Until(iv, a, b) => d(a).until(*iv, d(b)),
        Formula::NonStrictRelease(iv, a, b) => d(a).nonstrict_release(*iv, d(b)),
        Formula::Release(iv, a, b) => d(a).not().until(*iv, d(b).not()).not(),
        Formula::Eventually(iv, a) => Formula::True.until(*iv, d(a)),
        Formula::Always(iv, a) => Formula::True.until(*iv, d(a).not()).not(),
    }
}

impl<'t> Naive<'t> {
    pub fn new(trace: &'t Trace) -> Self {
        Naive { trace, memo: HashMap::new() }
    }

    /// `phi` must already be desugared.
    fn rob(&mut self, phi: &Formula, i: usize) -> RobustValue {
        let key = (phi as *const Formula as usize, i);
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let v = self.rob_uncached(phi, i);
        self.memo.insert(key, v);
        v
    }

    fn in_window(&self, iv: &rss_stl::stl::Interval, i: usize) -> Vec<usize> {
        (i..self.trace.len()).filter(|&j| iv.contains_offset(j - i, self.trace.dt())).collect()
    }

    fn rob_uncached(&mut self, phi: &Formula, i: usize) -> RobustValue {
        match phi {
            Formula::True => RobustValue::TOP,
            Formula::Atom(a) => {
                let mut lin = a.offset();
                let mut norm2 = 0.0;
                for (name, c) in a.terms() {
                    lin += self.trace.channel(name).expect("channel")[i] * c;
                    norm2 += c * c;
                }
                RobustValue::new(lin / norm2.sqrt())
            }
            Formula::Not(a) => -self.rob(a, i),
            Formula::Or(a, b) => {
                let x = self.rob(a, i);
                let y = self.rob(b, i);
                if y.value() > x.value() { y } else { x }
            }
            Formula::Next(iv, a) => {
                if i + 1 < self.trace.len() && iv.contains_offset(1, self.trace.dt()) {
                    self.rob(a, i + 1)
                } else {
                    -RobustValue::TOP
                }
            }
            Formula::Until(iv, a, b) => {
                let mut sup = f64::NEG_INFINITY;
                for j in self.in_window(iv, i) {
                    let mut inf = self.rob(b, j).value();
                    for k in i..j {
                        inf = inf.min(self.rob(a, k).value());
                    }
                    sup = sup.max(inf);
                }
                RobustValue::new(sup)
            }
            Formula::NonStrictRelease(iv, a, b) => {
                let mut inf = f64::INFINITY;
                for j in self.in_window(iv, i) {
                    let mut sup = self.rob(b, j).value();
                    for k in i..=j {
                        sup = sup.max(self.rob(a, k).value());
                    }
                    inf = inf.min(sup);
                }
                RobustValue::new(inf)
            }
            other => panic!("naive oracle expects a desugared formula, got {other}"),
        }
    }
}

pub fn naive_robustness(phi: &Formula, trace: &Trace, i: usize) -> RobustValue {
    let core = desugar(phi);
    Naive::new(trace).rob(&core, i)
}
