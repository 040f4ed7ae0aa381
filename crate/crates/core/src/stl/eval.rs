//! Dynamic-programming evaluation of the discrete-time robust semantics.
//!
//! Every subformula is evaluated once into a full signal over all samples,
//! bottom-up. Temporal operators with an unbounded window use a backward
//! recursion; bounded windows scan at most `W` samples per index. Since the
//! only operations involved are negation, `max` and `min`, the result is
//! bit-identical to evaluating the sup/inf definitions directly.

use super::formula::{Atom, Formula};
use super::interval::{Interval, SampleWindow};
use super::trace::Trace;
use super::value::RobustValue;
use super::StlError;

/// Values the evaluator can propagate: a lattice with an involutive negation.
pub(crate) trait Lattice: Copy {
    fn top() -> Self;
    fn bottom() -> Self;
    fn negate(self) -> Self;
    fn join(self, other: Self) -> Self;
    fn meet(self, other: Self) -> Self;
}

impl Lattice for RobustValue {
    fn top() -> Self {
        RobustValue::TOP
    }
    fn bottom() -> Self {
        RobustValue::BOTTOM
    }
    fn negate(self) -> Self {
        -self
    }
    fn join(self, other: Self) -> Self {
        RobustValue::join(self, other)
    }
    fn meet(self, other: Self) -> Self {
        RobustValue::meet(self, other)
    }
}

/// Signed Euclidean distance from `point` to the half-space
/// `coefficients . x + offset >= 0`.
pub fn signed_distance(point: &[f64], coefficients: &[f64], offset: f64) -> Result<RobustValue, StlError> {
    if point.len() != coefficients.len() {
        return Err(StlError::DimensionMismatch { point: point.len(), coefficients: coefficients.len() });
    }
    let norm = coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(StlError::DegenerateAtom);
    }
    let lin: f64 = point.iter().zip(coefficients).map(|(x, c)| x * c).sum::<f64>() + offset;
    Ok(RobustValue::new(lin / norm))
}

/// An atom bound to the trace channels it reads.
pub(crate) struct BoundAtom<'a> {
    columns: Vec<(&'a [f64], f64)>,
    offset: f64,
    norm: f64,
}

impl<'a> BoundAtom<'a> {
    pub(crate) fn bind(atom: &Atom, trace: &'a Trace) -> Result<Self, StlError> {
        let mut columns = Vec::with_capacity(atom.terms().len());
        for (name, c) in atom.terms() {
            let col = trace.channel(name).ok_or_else(|| StlError::MissingChannel(name.clone()))?;
            columns.push((col, *c));
        }
        Ok(BoundAtom { columns, offset: atom.offset(), norm: atom.norm() })
    }

    /// `coefficients . x(i) + offset`, before normalization.
    pub(crate) fn linear(&self, i: usize) -> f64 {
        self.columns.iter().map(|(col, c)| col[i] * c).sum::<f64>() + self.offset
    }

    pub(crate) fn distance(&self, i: usize) -> RobustValue {
        RobustValue::new(self.linear(i) / self.norm)
    }
}

pub(crate) fn check_index(trace: &Trace, i: usize) -> Result<(), StlError> {
    if i >= trace.len() {
        Err(StlError::IndexOutOfRange { index: i, len: trace.len() })
    } else {
        Ok(())
    }
}

/// Robustness of `phi` over `trace` at sample `i`.
pub fn eval_robustness(phi: &Formula, trace: &Trace, i: usize) -> Result<RobustValue, StlError> {
    check_index(trace, i)?;
    Ok(robustness_signal(phi, trace)?[i])
}

/// Robustness of `phi` at every sample of `trace`.
pub fn robustness_signal(phi: &Formula, trace: &Trace) -> Result<Vec<RobustValue>, StlError> {
    if trace.is_empty() {
        return Err(StlError::InvalidTrace("trace has no samples".into()));
    }
    let mut leaf = |_: &Atom, _: usize, bound: &BoundAtom<'_>, i: usize| bound.distance(i);
    evaluate(phi, trace, &mut leaf)
}

pub(crate) fn evaluate<V, L>(phi: &Formula, trace: &Trace, leaf: &mut L) -> Result<Vec<V>, StlError>
where
    V: Lattice,
    L: FnMut(&Atom, usize, &BoundAtom<'_>, usize) -> V,
{
    let mut counter = 0usize;
    eval_node(phi, trace, leaf, &mut counter)
}

fn eval_node<V, L>(phi: &Formula, trace: &Trace, leaf: &mut L, atom_counter: &mut usize) -> Result<Vec<V>, StlError>
where
    V: Lattice,
    L: FnMut(&Atom, usize, &BoundAtom<'_>, usize) -> V,
{
    let n = trace.len();
    let dt = trace.dt();
    macro_rules! rec {
        ($f:expr, $c:expr) => {
            eval_node($f, trace, leaf, $c)
        };
    }
    Ok(match phi {
        Formula::True => vec![V::top(); n],
        Formula::Atom(a) => {
            let id = *atom_counter;
            *atom_counter += 1;
            let bound = BoundAtom::bind(a, trace)?;
            (0..n).map(|i| leaf(a, id, &bound, i)).collect()
        }
        Formula::Not(a) => rec!(a, atom_counter)?.into_iter().map(V::negate).collect(),
        Formula::Or(a, b) => zip_with(rec!(a, atom_counter)?, &rec!(b, atom_counter)?, V::join),
        Formula::And(a, b) => zip_with(rec!(a, atom_counter)?, &rec!(b, atom_counter)?, V::meet),
        Formula::Implies(a, b) => {
            let lhs: Vec<V> = rec!(a, atom_counter)?.into_iter().map(V::negate).collect();
            zip_with(lhs, &rec!(b, atom_counter)?, V::join)
        }
        Formula::Next(iv, a) => {
            let child = rec!(a, atom_counter)?;
            let ok = iv.contains_offset(1, dt);
            (0..n).map(|i| if ok && i + 1 < n { child[i + 1] } else { V::bottom() }).collect()
        }
        Formula::Eventually(iv, a) => {
            let child = rec!(a, atom_counter)?;
            window_fold(&child, iv.sample_window(dt), V::join, V::bottom())
        }
        Formula::Always(iv, a) => {
            let child = rec!(a, atom_counter)?;
            window_fold(&child, iv.sample_window(dt), V::meet, V::top())
        }
        Formula::Until(iv, a, b) => {
            let (l, r) = (rec!(a, atom_counter)?, rec!(b, atom_counter)?);
            binary_temporal(Shape::Until, &l, &r, window(iv, dt))
        }
        Formula::Release(iv, a, b) => {
            let (l, r) = (rec!(a, atom_counter)?, rec!(b, atom_counter)?);
            binary_temporal(Shape::Release, &l, &r, window(iv, dt))
        }
        Formula::NonStrictRelease(iv, a, b) => {
            let (l, r) = (rec!(a, atom_counter)?, rec!(b, atom_counter)?);
            binary_temporal(Shape::NonStrictRelease, &l, &r, window(iv, dt))
        }
    })
}

fn window(iv: &Interval, dt: f64) -> SampleWindow {
    iv.sample_window(dt)
}

fn zip_with<V: Copy>(mut a: Vec<V>, b: &[V], f: impl Fn(V, V) -> V) -> Vec<V> {
    for (x, y) in a.iter_mut().zip(b) {
        *x = f(*x, *y);
    }
    a
}

/// `out[i] = fold(child[i + k])` over in-window offsets `k`, `empty` when no
/// offset lands inside the trace.
fn window_fold<V: Lattice>(child: &[V], w: SampleWindow, op: fn(V, V) -> V, empty: V) -> Vec<V> {
    let n = child.len();
    let mut out = vec![empty; n];
    if w.is_empty() {
        return out;
    }
    match w.last {
        None => {
            let mut tail = vec![empty; n + 1];
            for j in (0..n).rev() {
                tail[j] = op(child[j], tail[j + 1]);
            }
            for (i, o) in out.iter_mut().enumerate() {
                if let Some(start) = i.checked_add(w.first).filter(|s| *s < n) {
                    *o = tail[start];
                }
            }
        }
        Some(last) => {
            for (i, o) in out.iter_mut().enumerate() {
                let end = (n - 1 - i).min(last);
                let mut acc = empty;
                let mut k = w.first;
                while k <= end {
                    acc = op(acc, child[i + k]);
                    k += 1;
                }
                *o = acc;
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// join over window of (right meet prefix-meet of left, exclusive)
    Until,
    /// meet over window of (right join prefix-join of left, exclusive)
    Release,
    /// meet over window of (right join prefix-join of left, inclusive)
    NonStrictRelease,
}

fn binary_temporal<V: Lattice>(shape: Shape, left: &[V], right: &[V], w: SampleWindow) -> Vec<V> {
    let n = left.len();
    let (outer, inner, outer_empty, inner_unit): (fn(V, V) -> V, fn(V, V) -> V, V, V) = match shape {
        Shape::Until => (V::join, V::meet, V::bottom(), V::top()),
        Shape::Release | Shape::NonStrictRelease => (V::meet, V::join, V::top(), V::bottom()),
    };
    let inclusive = shape == Shape::NonStrictRelease;
    let mut out = vec![outer_empty; n];
    if w.is_empty() {
        return out;
    }
    match w.last {
        None => {
            // tail[j]: the operator over [0, inf) evaluated at j.
            let mut tail = vec![outer_empty; n + 1];
            for j in (0..n).rev() {
                tail[j] = if inclusive {
                    inner(left[j], outer(right[j], tail[j + 1]))
                } else {
                    outer(right[j], inner(left[j], tail[j + 1]))
                };
            }
            for (i, o) in out.iter_mut().enumerate() {
                let Some(start) = i.checked_add(w.first).filter(|s| *s < n) else {
                    continue;
                };
                let mut prefix = inner_unit;
                for v in &left[i..start] {
                    prefix = inner(prefix, *v);
                }
                *o = inner(prefix, tail[start]);
            }
        }
        Some(last) => {
            for (i, o) in out.iter_mut().enumerate() {
                let end = (n - 1 - i).min(last);
                let mut acc = outer_empty;
                let mut run = inner_unit;
                for k in 0..=end {
                    if inclusive {
                        run = inner(run, left[i + k]);
                    }
                    if k >= w.first {
                        acc = outer(acc, inner(right[i + k], run));
                    }
                    if !inclusive {
                        run = inner(run, left[i + k]);
                    }
                }
                *o = acc;
            }
        }
    }
    out
}
