use std::cmp::Ordering;
use std::fmt;

use super::StlError;

/// A non-empty time interval over `[0, inf)`, in seconds.
///
/// Infinite upper bounds are always stored as open.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_open: bool,
    hi_open: bool,
}

/// Relative tolerance used when deciding that a bound is an integer number of
/// sampling periods.
const GRID_TOLERANCE: f64 = 1e-9;

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Result<Self, StlError> {
        if lo.is_nan() || hi.is_nan() || !lo.is_finite() {
            return Err(StlError::InvalidInterval(format!("bad bounds {lo}, {hi}")));
        }
        if lo < 0.0 {
            return Err(StlError::InvalidInterval(format!("negative lower bound {lo}")));
        }
        let hi_open = hi_open || hi.is_infinite();
        if hi == f64::NEG_INFINITY || lo > hi {
            return Err(StlError::InvalidInterval(format!("inverted interval [{lo}, {hi}]")));
        }
        if lo == hi && (lo_open || hi_open) {
            return Err(StlError::InvalidInterval(format!("empty interval at {lo}")));
        }
        Ok(Interval { lo, hi, lo_open, hi_open })
    }

    /// `[0, inf)`.
    pub fn unbounded() -> Self {
        Interval { lo: 0.0, hi: f64::INFINITY, lo_open: false, hi_open: true }
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self, StlError> {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, hi)`.
    pub fn closed_open(lo: f64, hi: f64) -> Result<Self, StlError> {
        Self::new(lo, hi, false, true)
    }

    /// `[lo, inf)`.
    pub fn from(lo: f64) -> Result<Self, StlError> {
        Self::new(lo, f64::INFINITY, false, true)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_infinite()
    }

    pub fn is_default(&self) -> bool {
        *self == Self::unbounded()
    }

    /// Whether a time offset of `k` samples (`k * dt` seconds) lies in the
    /// interval.
    pub fn contains_offset(&self, k: usize, dt: f64) -> bool {
        self.above_lower(k, dt) && self.below_upper(k, dt)
    }

    /// Offsets, in samples, covered by the interval at sampling period `dt`.
    pub fn sample_window(&self, dt: f64) -> SampleWindow {
        const CAP: f64 = (usize::MAX / 4) as f64;
        let lo_steps = (self.lo / dt).floor();
        if lo_steps > CAP {
            return SampleWindow::EMPTY;
        }
        let mut first = (lo_steps as usize).saturating_sub(1);
        while !self.above_lower(first, dt) {
            first += 1;
        }
        if self.is_unbounded() {
            return SampleWindow { first, last: None };
        }
        let hi_steps = (self.hi / dt).floor();
        let mut last = if hi_steps > CAP { usize::MAX / 4 } else { hi_steps as usize + 2 };
        loop {
            if self.below_upper(last, dt) {
                break;
            }
            if last == 0 {
                return SampleWindow::EMPTY;
            }
            last -= 1;
        }
        if last < first {
            SampleWindow::EMPTY
        } else {
            SampleWindow { first, last: Some(last) }
        }
    }

    fn above_lower(&self, k: usize, dt: f64) -> bool {
        match compare_offset(k, dt, self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        }
    }

    fn below_upper(&self, k: usize, dt: f64) -> bool {
        if self.hi.is_infinite() {
            return true;
        }
        match compare_offset(k, dt, self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        }
    }
}

/// Compares `k * dt` against `bound`. When `bound` is (within tolerance) an
/// integer multiple `m` of `dt`, the comparison is done exactly on `k` vs `m`.
fn compare_offset(k: usize, dt: f64, bound: f64) -> Ordering {
    let q = bound / dt;
    let m = q.round();
    if (q - m).abs() <= GRID_TOLERANCE * q.abs().max(1.0) {
        (k as f64).partial_cmp(&m).unwrap_or(Ordering::Less)
    } else {
        (k as f64 * dt).partial_cmp(&bound).unwrap_or(Ordering::Less)
    }
}

impl Default for Interval {
    fn default() -> Self {
        Self::unbounded()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_open { '(' } else { '[' };
        write!(f, "{open}{},", fmt_number(self.lo))?;
        if self.hi.is_infinite() {
            write!(f, "inf)")
        } else {
            let close = if self.hi_open { ')' } else { ']' };
            write!(f, "{}{close}", fmt_number(self.hi))
        }
    }
}

pub(crate) fn fmt_number(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        // Debug formatting is shortest-roundtrip and never uses exponents
        // that the lexer cannot read back.
        format!("{v:?}")
    }
}

/// Inclusive range of sample offsets `first..=last`; `last == None` means
/// unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleWindow {
    pub first: usize,
    pub last: Option<usize>,
}

impl SampleWindow {
    pub const EMPTY: SampleWindow = SampleWindow { first: 1, last: Some(0) };

    pub fn is_empty(&self) -> bool {
        matches!(self.last, Some(last) if last < self.first)
    }
}
