use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rss::RSS_CHANNELS;
use crate::stl::{RobustValue, Sign};

use super::SearchRecord;

/// Zero robustness counts as a violation.
pub fn is_violation(v: RobustValue) -> bool {
    v.value() <= 0.0
}

/// Records whose RSS robustness is strictly negative.
pub fn useful_tests(records: &[SearchRecord]) -> Vec<&SearchRecord> {
    records.iter().filter(|r| r.robustness_rss.value() < 0.0).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCounts {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl SignCounts {
    fn add(&mut self, v: RobustValue) {
        match v.sign() {
            Sign::Positive => self.pos += 1,
            Sign::Negative => self.neg += 1,
            Sign::Zero => self.zero += 1,
        }
    }

    pub fn violations(&self) -> usize {
        self.neg + self.zero
    }
}

/// Pass/violation cross-tabulation, RSS first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointCounts {
    pub pos_pos: usize,
    pub neg_neg: usize,
    pub neg_rss_pos_cas: usize,
    pub pos_rss_neg_cas: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub records: usize,
    pub rss: SignCounts,
    pub cas: SignCounts,
    pub joint: JointCounts,
    /// Blamed atom over RSS violations.
    pub blamed: BTreeMap<String, usize>,
    pub rss_violation_pct: f64,
    pub cas_violation_pct: f64,
}

fn pct(k: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        100.0 * k as f64 / n as f64
    }
}

pub fn classify_batch(records: &[SearchRecord]) -> ClassificationTable {
    let mut t = ClassificationTable { records: records.len(), ..Default::default() };
    for a in RSS_CHANNELS {
        t.blamed.insert(a.to_string(), 0);
    }
    for r in records {
        t.rss.add(r.robustness_rss);
        t.cas.add(r.robustness_cas);
        let rss_bad = is_violation(r.robustness_rss);
        let cas_bad = is_violation(r.robustness_cas);
        match (rss_bad, cas_bad) {
            (false, false) => t.joint.pos_pos += 1,
            (true, true) => t.joint.neg_neg += 1,
            (true, false) => t.joint.neg_rss_pos_cas += 1,
            (false, true) => t.joint.pos_rss_neg_cas += 1,
        }
        if rss_bad {
            let key = r.blamed_atom.clone().unwrap_or_else(|| "(none)".into());
            *t.blamed.entry(key).or_insert(0) += 1;
        }
    }
    t.rss_violation_pct = pct(t.rss.violations(), t.records);
    t.cas_violation_pct = pct(t.cas.violations(), t.records);
    t
}

impl fmt::Display for ClassificationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records: {}", self.records)?;
        writeln!(f)?;
        writeln!(f, "{:<22}{:>8}   {:<22}{:>8}", "description", "values", "description", "values")?;
        writeln!(f, "{:<22}{:>8}   {:<22}{:>8}", "Total pos (RSS)", self.rss.pos, "Total pos (CAS)", self.cas.pos)?;
        writeln!(f, "{:<22}{:>8}   {:<22}{:>8}", "Total neg (RSS)", self.rss.neg, "Total neg (CAS)", self.cas.neg)?;
        writeln!(f, "{:<22}{:>8}   {:<22}{:>8}", "Total zeros (RSS)", self.rss.zero, "Total zeros (CAS)", self.cas.zero)?;
        writeln!(f, "one-by-one comparison (zero counted as neg)")?;
        writeln!(
            f,
            "{:<22}{:>8}   {:<22}{:>8}",
            "pos (RSS) pos (CAS)", self.joint.pos_pos, "neg (RSS) neg (CAS)", self.joint.neg_neg
        )?;
        writeln!(
            f,
            "{:<22}{:>8}   {:<22}{:>8}",
            "neg (RSS) pos (CAS)", self.joint.neg_rss_pos_cas, "pos (RSS) neg (CAS)", self.joint.pos_rss_neg_cas
        )?;
        writeln!(f)?;
        writeln!(f, "{:<22}{:>8}", "predicate", "# viol.")?;
        for (atom, k) in &self.blamed {
            writeln!(f, "{atom:<22}{k:>8}")?;
        }
        writeln!(f, "{:<22}{:>7.1}%", "RSS violation", self.rss_violation_pct)?;
        write!(f, "{:<22}{:>7.1}%", "CAS violation", self.cas_violation_pct)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::ScenarioParams;

    fn rec(rss: f64, cas: f64, blamed: Option<&str>) -> SearchRecord {
        SearchRecord {
            index: 0,
            scenario: ScenarioParams::from_vec(&[0.0; 14], 0),
            robustness_rss: RobustValue::new(rss),
            robustness_cas: RobustValue::new(cas),
            blamed_atom: blamed.map(str::to_string),
            accepted: true,
        }
    }

    #[test]
    fn hand_count() {
        let rs = [rec(1.0, 1.0, None), rec(2.0, -1.0, None), rec(-1.0, -3.0, Some("A_lon_maxAcc"))];
        let t = classify_batch(&rs);
        assert_eq!(t.joint, JointCounts { pos_pos: 1, pos_rss_neg_cas: 1, neg_neg: 1, neg_rss_pos_cas: 0 });
        assert_eq!(t.rss, SignCounts { pos: 2, neg: 1, zero: 0 });
        assert_eq!(t.blamed["A_lon_maxAcc"], 1);
        assert_eq!(t.blamed.values().sum::<usize>(), 1);
        assert!((t.rss_violation_pct - 100.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_is_a_violation_but_not_a_useful_test() {
        let rs = [rec(0.0, 0.0, Some("S_lon"))];
        let t = classify_batch(&rs);
        assert_eq!(t.rss.zero, 1);
        assert_eq!(t.joint.neg_neg, 1);
        assert!(useful_tests(&rs).is_empty());
    }

    #[test]
    fn report_mentions_every_cell() {
        let text = classify_batch(&[rec(1.0, -1.0, None)]).to_string();
        for s in ["Total pos (RSS)", "pos (RSS) neg (CAS)", "A_lat_minBr", "CAS violation"] {
            assert!(text.contains(s), "{s}");
        }
    }
}
