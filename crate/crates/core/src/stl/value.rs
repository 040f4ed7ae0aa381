use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

/// A robustness value on the extended reals.
///
/// `+inf` is the lattice top and `-inf` the bottom. Join is `max`, meet is
/// `min`, negation flips the sign. NaN is never stored and negative zero is
/// canonicalized to `+0.0`, so two values that compare equal also have equal
/// bit patterns.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct RobustValue(f64);

impl RobustValue {
    pub const TOP: RobustValue = RobustValue(f64::INFINITY);
    pub const BOTTOM: RobustValue = RobustValue(f64::NEG_INFINITY);
    pub const ZERO: RobustValue = RobustValue(0.0);

    /// Wraps `v`. Panics on NaN, which has no place in the lattice.
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan(), "robustness value must not be NaN");
        if v == 0.0 {
            RobustValue(0.0)
        } else {
            RobustValue(v)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_top(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_bottom(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn join(self, other: Self) -> Self {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    pub fn meet(self, other: Self) -> Self {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    /// Join over an iterator; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = Self>>(it: I) -> Self {
        it.into_iter().fold(Self::BOTTOM, Self::join)
    }

    /// Meet over an iterator; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = Self>>(it: I) -> Self {
        it.into_iter().fold(Self::TOP, Self::meet)
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }

    /// Sign of the value; zero is reported separately from either side.
    pub fn sign(self) -> Sign {
        if self.0 > 0.0 {
            Sign::Positive
        } else if self.0 < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    /// Finite stand-in used where arithmetic on infinities would misbehave.
    pub fn clamped(self, bound: f64) -> f64 {
        self.0.clamp(-bound, bound)
    }
}

impl Neg for RobustValue {
    type Output = RobustValue;

    fn neg(self) -> RobustValue {
        RobustValue::new(-self.0)
    }
}

impl From<f64> for RobustValue {
    fn from(v: f64) -> Self {
        RobustValue::new(v)
    }
}

impl fmt::Display for RobustValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            write!(f, "inf")
        } else if self.is_bottom() {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}
