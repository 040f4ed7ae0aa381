use std::fmt;

use super::interval::{fmt_number, Interval};
use super::StlError;

/// Affine predicate `sum(coef * channel) + offset >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    terms: Vec<(String, f64)>,
    offset: f64,
}

impl Atom {
    pub fn new(terms: Vec<(String, f64)>, offset: f64) -> Result<Self, StlError> {
        if terms.is_empty() || terms.iter().all(|(_, c)| *c == 0.0) {
            return Err(StlError::DegenerateAtom);
        }
        if !offset.is_finite() || terms.iter().any(|(_, c)| !c.is_finite()) {
            return Err(StlError::DegenerateAtom);
        }
        Ok(Atom { terms, offset })
    }

    /// `channel >= threshold`.
    pub fn ge(channel: impl Into<String>, threshold: f64) -> Self {
        Atom { terms: vec![(channel.into(), 1.0)], offset: -threshold }
    }

    /// `channel <= threshold`.
    pub fn le(channel: impl Into<String>, threshold: f64) -> Self {
        Atom { terms: vec![(channel.into(), -1.0)], offset: threshold }
    }

    pub fn terms(&self) -> &[(String, f64)] {
        &self.terms
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn channels(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(c, _)| c.as_str())
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c * c).sum::<f64>().sqrt()
    }

    /// Name used in blame reports: the channel for single-channel atoms, the
    /// rendered predicate otherwise.
    pub fn label(&self) -> String {
        if self.terms.len() == 1 {
            self.terms[0].0.clone()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [(name, c)] = self.terms.as_slice() {
            if *c == 1.0 {
                return write!(f, "{name} >= {}", fmt_number(-self.offset));
            }
            if *c == -1.0 {
                return write!(f, "{name} <= {}", fmt_number(self.offset));
            }
        }
        for (idx, (name, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = (*c < 0.0, c.abs());
            match (idx, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if mag == 1.0 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{}*{name}", fmt_number(mag))?;
            }
        }
        write!(f, " >= {}", fmt_number(-self.offset))
    }
}

/// Abstract syntax of a discrete-time STL formula.
#[derive(Clone, Debug, PartialEq)]
pub enum Formula {
    True,
    Atom(Atom),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Interval, Box<Formula>),
    Until(Interval, Box<Formula>, Box<Formula>),
    Release(Interval, Box<Formula>, Box<Formula>),
    NonStrictRelease(Interval, Box<Formula>, Box<Formula>),
    Eventually(Interval, Box<Formula>),
    Always(Interval, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    pub fn ge(channel: impl Into<String>, threshold: f64) -> Self {
        Formula::Atom(Atom::ge(channel, threshold))
    }

    pub fn le(channel: impl Into<String>, threshold: f64) -> Self {
        Formula::Atom(Atom::le(channel, threshold))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn next(self) -> Self {
        Formula::Next(Interval::unbounded(), Box::new(self))
    }

    pub fn next_within(self, i: Interval) -> Self {
        Formula::Next(i, Box::new(self))
    }

    pub fn until(self, i: Interval, rhs: Formula) -> Self {
        Formula::Until(i, Box::new(self), Box::new(rhs))
    }

    pub fn release(self, i: Interval, rhs: Formula) -> Self {
        Formula::Release(i, Box::new(self), Box::new(rhs))
    }

    pub fn nonstrict_release(self, i: Interval, rhs: Formula) -> Self {
        Formula::NonStrictRelease(i, Box::new(self), Box::new(rhs))
    }

    pub fn eventually(self, i: Interval) -> Self {
        Formula::Eventually(i, Box::new(self))
    }

    pub fn always(self, i: Interval) -> Self {
        Formula::Always(i, Box::new(self))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction; `None` for an empty list.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | Atom(_) => vec![],
            Not(a) | Next(_, a) | Eventually(_, a) | Always(_, a) => vec![a],
            Or(a, b) | And(a, b) | Implies(a, b) => vec![a, b],
            Until(_, a, b) | Release(_, a, b) | NonStrictRelease(_, a, b) => vec![a, b],
        }
    }

    /// Every atom in the formula, in left-to-right order, with repetitions.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        if let Formula::Atom(a) = self {
            out.push(a);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Formula::depth).max().unwrap_or(0)
    }

    fn is_primary(&self) -> bool {
        matches!(self, Formula::True | Formula::Atom(_))
    }

    fn is_unary(&self) -> bool {
        matches!(
            self,
            Formula::Not(_) | Formula::Next(..) | Formula::Eventually(..) | Formula::Always(..)
        )
    }
}

struct Operand<'a>(&'a Formula, bool);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Operand(inner, allow_unary) = *self;
        if inner.is_primary() || (allow_unary && inner.is_unary()) {
            write!(f, "{inner}")
        } else {
            write!(f, "({inner})")
        }
    }
}

fn write_interval(f: &mut fmt::Formatter<'_>, i: &Interval) -> fmt::Result {
    if i.is_default() {
        Ok(())
    } else {
        write!(f, "{i}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let unary = |f: &mut fmt::Formatter<'_>, op: &str, i: Option<&Interval>, a: &Formula| {
            write!(f, "{op}")?;
            if let Some(i) = i {
                write_interval(f, i)?;
                write!(f, " ")?;
            }
            write!(f, "{}", Operand(a, true))
        };
        let binary = |f: &mut fmt::Formatter<'_>, op: &str, i: Option<&Interval>, a, b| {
            write!(f, "{} {op}", Operand(a, true))?;
            if let Some(i) = i {
                write_interval(f, i)?;
            }
            write!(f, " {}", Operand(b, true))
        };
        match self {
            True => write!(f, "true"),
            Atom(a) => write!(f, "{a}"),
            Not(a) => unary(f, "!", None, a),
            Next(i, a) => unary(f, "X", Some(i), a),
            Eventually(i, a) => unary(f, "F", Some(i), a),
            Always(i, a) => unary(f, "G", Some(i), a),
            Or(a, b) => binary(f, "\\/", None, a, b),
            And(a, b) => binary(f, "/\\", None, a, b),
            Implies(a, b) => binary(f, "->", None, a, b),
            Until(i, a, b) => binary(f, "U", Some(i), a, b),
            Release(i, a, b) => binary(f, "R", Some(i), a, b),
            NonStrictRelease(i, a, b) => binary(f, "RW", Some(i), a, b),
        }
    }
}
