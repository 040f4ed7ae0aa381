use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::sim::{ScenarioParams, PARAM_NAMES};
use crate::stl::RobustValue;

use super::{FalsifyError, SearchRecord};

/// Column names of the results file.
pub fn results_header() -> Vec<&'static str> {
    let mut h = vec!["index", "seed"];
    h.extend(PARAM_NAMES);
    h.extend(["rob_rss", "rob_cas", "blamed_atom", "accepted"]);
    h
}

/// `index,seed,<14 params>,rob_rss,rob_cas,blamed_atom,accepted`. Floats
/// use the shortest representation that parses back to the same value.
pub fn write_results_csv<W: Write>(records: &[SearchRecord], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{}", results_header().join(","))?;
    for r in records {
        write!(w, "{},{}", r.index, r.scenario.rng_seed)?;
        for v in r.scenario.to_vec() {
            write!(w, ",{v}")?;
        }
        writeln!(
            w,
            ",{},{},{},{}",
            r.robustness_rss.value(),
            r.robustness_cas.value(),
            r.blamed_atom.as_deref().unwrap_or(""),
            r.accepted
        )?;
    }
    Ok(())
}

pub fn read_results_csv<R: Read>(r: R) -> Result<Vec<SearchRecord>, FalsifyError> {
    let bad = |line: usize, msg: String| FalsifyError::Results(format!("row {line}: {msg}"));
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let expected = results_header();
    let got: Vec<String> = rdr.headers().map_err(|e| bad(1, e.to_string()))?.iter().map(str::to_string).collect();
    if got != expected {
        return Err(FalsifyError::Results(format!("unexpected header {got:?}")));
    }
    let mut out = Vec::new();
    for (k, row) in rdr.records().enumerate() {
        let line = k + 2;
        let row = row.map_err(|e| bad(line, e.to_string()))?;
        let num = |i: usize| -> Result<f64, FalsifyError> {
            let v: f64 = row[i].parse().map_err(|_| bad(line, format!("`{}` is not a number", &row[i])))?;
            if v.is_nan() {
                return Err(bad(line, "NaN".into()));
            }
            Ok(v)
        };
        let index: usize = row[0].parse().map_err(|_| bad(line, "bad index".into()))?;
        let seed: u64 = row[1].parse().map_err(|_| bad(line, "bad seed".into()))?;
        let mut v = [0.0; 14];
        for (j, slot) in v.iter_mut().enumerate() {
            *slot = num(2 + j)?;
        }
        let blamed = &row[18];
        out.push(SearchRecord {
            index,
            scenario: ScenarioParams::from_vec(&v, seed),
            robustness_rss: RobustValue::new(num(16)?),
            robustness_cas: RobustValue::new(num(17)?),
            blamed_atom: (!blamed.is_empty()).then(|| blamed.to_string()),
            accepted: row[19].parse().map_err(|_| bad(line, "bad accepted flag".into()))?,
        });
    }
    Ok(out)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Replay information: the command line, the effective configuration and
/// content hashes of inputs and outputs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub config: String,
    pub config_sha256: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(command: &str, args: Vec<String>, seed: Option<u64>, config: String) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            args,
            seed,
            config_sha256: sha256_hex(config.as_bytes()),
            config,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }
}
