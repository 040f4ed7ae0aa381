//! Signal temporal logic: syntax, parsing, and offline evaluation over
//! uniformly sampled traces.

mod blame;
mod boolean;
mod eval;
mod formula;
mod interval;
mod parser;
mod rewrite;
mod trace;
mod value;

pub use blame::{blame, blame_at, AtomExtreme, BlameSite, RobustnessReport};
pub use boolean::eval_boolean;
pub use eval::{eval_robustness, robustness_signal, signed_distance};
pub use formula::{Atom, Formula};
pub use interval::{Interval, SampleWindow};
pub use parser::parse_formula;
pub use rewrite::{expand_abbreviations, rewrite_nonstrict_release};
pub use trace::{Trace, UNIFORMITY_TOLERANCE};
pub use value::{RobustValue, Sign};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StlError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown operator `{found}` at {line}:{col}")]
    UnknownOperator { line: usize, col: usize, found: String },
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("atom coefficients must be finite and not all zero")]
    DegenerateAtom,
    #[error("point has {point} components but the predicate has {coefficients}")]
    DimensionMismatch { point: usize, coefficients: usize },
    #[error("sample index {index} out of range for trace of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("channel `{0}` is not in the trace")]
    MissingChannel(String),
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("i/o error: {0}")]
    Io(String),
}
