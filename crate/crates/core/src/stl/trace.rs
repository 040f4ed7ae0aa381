use std::io::{Read, Write};

use indexmap::IndexMap;

use super::StlError;

/// Relative tolerance for the uniform time column of a trace file.
pub const UNIFORMITY_TOLERANCE: f64 = 1e-9;

/// A uniformly sampled, finite, multi-channel signal. Sample `i` is at time
/// `i * dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    dt: f64,
    len: usize,
    channels: IndexMap<String, Vec<f64>>,
}

impl Trace {
    /// An empty trace with sampling period `dt`; its length is fixed by the
    /// first channel added.
    pub fn new(dt: f64) -> Result<Self, StlError> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(StlError::InvalidTrace(format!("sampling period must be positive, got {dt}")));
        }
        Ok(Trace { dt, len: 0, channels: IndexMap::new() })
    }

    pub fn with_channels<I, S>(dt: f64, channels: I) -> Result<Self, StlError>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut t = Trace::new(dt)?;
        for (name, samples) in channels {
            t.push_channel(name, samples)?;
        }
        Ok(t)
    }

    pub fn push_channel(&mut self, name: impl Into<String>, samples: Vec<f64>) -> Result<(), StlError> {
        let name = name.into();
        if samples.is_empty() {
            return Err(StlError::InvalidTrace(format!("channel `{name}` has no samples")));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(StlError::InvalidTrace(format!("channel `{name}` has a non-finite sample at {i}")));
        }
        if self.channels.is_empty() {
            self.len = samples.len();
        } else if samples.len() != self.len {
            return Err(StlError::InvalidTrace(format!(
                "channel `{name}` has {} samples, expected {}",
                samples.len(),
                self.len
            )));
        }
        if self.channels.insert(name.clone(), samples).is_some() {
            return Err(StlError::InvalidTrace(format!("duplicate channel `{name}`")));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn channel(&self, name: &str) -> Option<&[f64]> {
        self.channels.get(name).map(Vec::as_slice)
    }

    pub fn channel_names(&self) -> impl Iterator<Item = &str> {
        self.channels.keys().map(String::as_str)
    }

    pub fn channels(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.channels.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }

    /// Reads the `t,<chan>,...` CSV layout. The time column must be strictly
    /// increasing and uniform; the sampling period is taken from it.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self, StlError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(csv_err)?.clone();
        if headers.get(0) != Some("t") {
            return Err(StlError::InvalidTrace("first column must be `t`".into()));
        }
        let names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut times = Vec::new();
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            if rec.len() != names.len() + 1 {
                return Err(StlError::InvalidTrace(format!("row {} has {} fields", row + 2, rec.len())));
            }
            for (col, field) in rec.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| {
                    StlError::InvalidTrace(format!("row {} column {}: `{field}` is not a number", row + 2, col + 1))
                })?;
                if col == 0 {
                    times.push(v);
                } else {
                    cols[col - 1].push(v);
                }
            }
        }
        if times.len() < 2 {
            return Err(StlError::InvalidTrace("need at least two rows to infer the sampling period".into()));
        }
        let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
        for (i, w) in times.windows(2).enumerate() {
            let step = w[1] - w[0];
            if !(step > 0.0) || (step - dt).abs() > UNIFORMITY_TOLERANCE * dt.max(w[1].abs()) {
                return Err(StlError::InvalidTrace(format!("time column is not uniform at row {}", i + 3)));
            }
        }
        Trace::with_channels(dt, names.into_iter().zip(cols))
    }

    /// Writes the `t,<chan>,...` CSV layout with shortest round-trip floats.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), StlError> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["t".to_string()];
        header.extend(self.channels.keys().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for i in 0..self.len {
            let mut row = Vec::with_capacity(header.len());
            row.push(format!("{}", self.time(i)));
            row.extend(self.channels.values().map(|c| format!("{}", c[i])));
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush().map_err(|e| StlError::Io(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> StlError {
    StlError::InvalidTrace(e.to_string())
}
