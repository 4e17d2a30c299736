//! Paths with closed time domains and their graphs.
//!
//! A path is a closed set `I` of times together with left and right values
//! `pi(t-)`, `pi(t+)` at every `t` in `I`, continuous as a function on the
//! split domain. On interval pieces this is a cadlag function; at isolated
//! points the two values are free.
//!
//! Paths are stored as a running value plus knots. The value starts at
//! `initial` and every knot `(t, left, right)` sets `pi(t-) = left`,
//! `pi(t+) = right` and continues with `right`. Between knots the value is
//! either held constant ([`Fill::Step`]) or interpolated
//! ([`Fill::Interpolated`]).

mod distance;
mod graph;
mod interp;
mod modulus;
mod reparam;

pub use distance::{graph_dist, path_dist, PathDistance, Variant};
pub use graph::{check_graph, closed_graph, filled_graph, Graph, GraphOptions, GraphReport, GraphViolation};
pub use interp::{interpolate, interpolation_distortion, restrict, InterpMode};
pub use modulus::{modulus, skorohod_modulus, ModulusValue};
pub use reparam::{reparam_dist, value_chain, ReparamMode};

use alloc::string::String;
use alloc::vec::Vec;

use crate::betweenness::Interpolation;
use crate::{Error, Result};

/// A finite union of closed intervals and points. Interval ends may be
/// infinite; points are finite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Domain {
    /// Disjoint pieces `(a, b)` in increasing order. Points have `a == b`.
    pieces: Vec<(f64, f64)>,
}

impl Domain {
    /// Builds and normalizes a domain: overlapping or touching intervals
    /// are merged, degenerate intervals become points and points covered
    /// by intervals are dropped.
    pub fn new(intervals: &[(f64, f64)], points: &[f64]) -> Result<Self> {
        let mut raw: Vec<(f64, f64)> = Vec::with_capacity(intervals.len() + points.len());
        for &(a, b) in intervals {
            if a.is_nan() || b.is_nan() || !(a <= b) || a == f64::INFINITY || b == f64::NEG_INFINITY {
                return Err(Error::InvalidDomain(alloc::format!("bad interval [{a}, {b}]")));
            }
            raw.push((a, b));
        }
        for &p in points {
            if !p.is_finite() {
                return Err(Error::InvalidDomain(alloc::format!("bad point {p}")));
            }
            raw.push((p, p));
        }
        raw.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        let mut pieces: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            match pieces.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => pieces.push((a, b)),
            }
        }
        Ok(Self { pieces })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The closed interval `[a, b]`.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(&[(a, b)], &[])
    }

    /// A finite set of times.
    pub fn points(times: &[f64]) -> Result<Self> {
        Self::new(&[], times)
    }

    /// Pieces in increasing order; isolated points have equal ends.
    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    /// Pieces of positive length.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        self.pieces.iter().copied().filter(|(a, b)| a < b).collect()
    }

    /// Isolated points.
    pub fn isolated_points(&self) -> Vec<f64> {
        self.pieces.iter().filter(|(a, b)| a == b).map(|p| p.0).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Index of the piece containing `t`.
    pub fn piece_of(&self, t: f64) -> Option<usize> {
        let i = self.pieces.partition_point(|p| p.1 < t);
        (i < self.pieces.len() && self.pieces[i].0 <= t).then_some(i)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.piece_of(t).is_some()
    }

    /// Convex hull `[inf I, sup I]`, or `None` for the empty domain.
    pub fn hull(&self) -> Option<(f64, f64)> {
        Some((self.pieces.first()?.0, self.pieces.last()?.1))
    }

    /// The open gaps between consecutive pieces.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.pieces.windows(2).map(|w| (w[0].1, w[1].0)).collect()
    }

    /// `I` intersected with `(-inf, t]`.
    pub fn up_to(&self, t: f64) -> Self {
        let pieces = self
            .pieces
            .iter()
            .filter(|p| p.0 <= t)
            .map(|&(a, b)| (a, b.min(t)))
            .collect();
        Self { pieces }
    }

    /// Whether `t` lies in an interval piece and is not its left end, so
    /// that `pi(t-)` is a genuine left limit.
    pub fn has_left_neighbourhood(&self, t: f64) -> bool {
        self.piece_of(t).is_some_and(|i| self.pieces[i].0 < t)
    }
}

/// Values at a single time.
#[derive(Debug, Clone, PartialEq)]
pub struct Knot<P> {
    pub t: f64,
    pub left: P,
    pub right: P,
}

impl<P> Knot<P> {
    pub fn new(t: f64, left: P, right: P) -> Self {
        Self { t, left, right }
    }
}

/// How a path behaves between knots.
#[derive(Debug, Clone)]
pub enum Fill<P> {
    /// Constant between knots.
    Step,
    /// Between consecutive knots `k`, `k+1` of the same interval piece the
    /// value is `phi(right_k, left_{k+1}, p)` with `p` the relative
    /// position in time. Elsewhere the value is constant as for `Step`.
    Interpolated(Interpolation<P>),
}

impl<P> Fill<P> {
    pub fn is_step(&self) -> bool {
        matches!(self, Fill::Step)
    }
}

/// A path: a closed time domain with left and right values at every time.
#[derive(Debug, Clone)]
pub struct Path<P> {
    domain: Domain,
    initial: Option<P>,
    knots: Vec<Knot<P>>,
    fill: Fill<P>,
}

impl<P: Clone + PartialEq> Path<P> {
    /// Builds a path and checks it.
    ///
    /// Knots must be strictly increasing and inside the domain. `initial`
    /// is required when some domain time precedes the first knot. Where
    /// `pi(t-)` is a left limit (inside an interval piece), a knot's `left`
    /// must equal the value the path approaches from the left.
    pub fn new(domain: Domain, initial: Option<P>, knots: Vec<Knot<P>>, fill: Fill<P>) -> Result<Self> {
        for w in knots.windows(2) {
            if !(w[0].t < w[1].t) {
                return Err(Error::InvalidPath(alloc::format!(
                    "knot times must increase ({} then {})",
                    w[0].t,
                    w[1].t
                )));
            }
        }
        for k in &knots {
            if !domain.contains(k.t) {
                return Err(Error::OutsideDomain(k.t));
            }
        }
        let needs_initial = match (domain.hull(), knots.first()) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some((lo, _)), Some(k)) => lo < k.t,
        };
        if needs_initial && initial.is_none() {
            return Err(Error::InvalidPath(String::from("an initial value is required")));
        }
        let path = Self { domain, initial, knots, fill };
        for (i, k) in path.knots.iter().enumerate() {
            if !path.domain.has_left_neighbourhood(k.t) {
                continue;
            }
            let interpolated_from_prev = i > 0
                && !path.fill.is_step()
                && path.domain.piece_of(path.knots[i - 1].t) == path.domain.piece_of(k.t);
            if interpolated_from_prev {
                continue;
            }
            let before = if i == 0 { path.initial.as_ref() } else { Some(&path.knots[i - 1].right) };
            if before != Some(&k.left) {
                return Err(Error::InvalidPath(alloc::format!(
                    "left value at t = {} does not match the left limit",
                    k.t
                )));
            }
        }
        Ok(path)
    }

    /// The path with empty domain.
    pub fn trivial() -> Self {
        Self { domain: Domain::empty(), initial: None, knots: Vec::new(), fill: Fill::Step }
    }

    /// A step path from `initial` and the right values after each jump;
    /// left values are filled in from the running value.
    pub fn step(domain: Domain, initial: P, jumps: &[(f64, P)]) -> Result<Self> {
        let mut knots = Vec::with_capacity(jumps.len());
        let mut cur = initial.clone();
        for (t, v) in jumps {
            knots.push(Knot::new(*t, cur.clone(), v.clone()));
            cur = v.clone();
        }
        Self::new(domain, Some(initial), knots, Fill::Step)
    }

    /// A path on a finite set of times with explicit left and right values.
    pub fn on_points(records: Vec<Knot<P>>) -> Result<Self> {
        let times: Vec<f64> = records.iter().map(|k| k.t).collect();
        Self::new(Domain::points(&times)?, None, records, Fill::Step)
    }

    /// A continuous path through `(t_k, x_k)`, interpolated with `phi` in
    /// between. The domain is the given domain; knots must lie in it.
    pub fn continuous(domain: Domain, nodes: &[(f64, P)], phi: Interpolation<P>) -> Result<Self> {
        let knots = nodes.iter().map(|(t, x)| Knot::new(*t, x.clone(), x.clone())).collect();
        let initial = nodes.first().map(|n| n.1.clone());
        Self::new(domain, initial, knots, Fill::Interpolated(phi))
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn initial(&self) -> Option<&P> {
        self.initial.as_ref()
    }

    pub fn knots(&self) -> &[Knot<P>] {
        &self.knots
    }

    pub fn fill(&self) -> &Fill<P> {
        &self.fill
    }

    pub fn is_trivial(&self) -> bool {
        self.domain.is_empty()
    }

    /// Starting time `inf I`, `+inf` for the trivial path.
    pub fn start_time(&self) -> f64 {
        self.domain.hull().map_or(f64::INFINITY, |h| h.0)
    }

    /// Final time `sup I`, `-inf` for the trivial path.
    pub fn final_time(&self) -> f64 {
        self.domain.hull().map_or(f64::NEG_INFINITY, |h| h.1)
    }

    /// First time with `pi(t-) != pi(t+)`, if any.
    pub fn first_jump(&self) -> Option<f64> {
        self.knots.iter().find(|k| k.left != k.right).map(|k| k.t)
    }

    pub fn has_jumps(&self) -> bool {
        self.first_jump().is_some()
    }

    fn knot_index(&self, t: f64) -> core::result::Result<usize, usize> {
        self.knots.binary_search_by(|k| k.t.total_cmp(&t))
    }

    /// `(pi(t-), pi(t+))`.
    pub fn values_at(&self, t: f64) -> Result<(P, P)> {
        if !self.domain.contains(t) {
            return Err(Error::OutsideDomain(t));
        }
        match self.knot_index(t) {
            Ok(i) => Ok((self.knots[i].left.clone(), self.knots[i].right.clone())),
            Err(i) => {
                let v = self.between(i, t);
                Ok((v.clone(), v))
            }
        }
    }

    /// Value at a non-knot time `t` with `i` knots before it.
    fn between(&self, i: usize, t: f64) -> P {
        if let Fill::Interpolated(phi) = &self.fill {
            if i > 0 && i < self.knots.len() {
                let (a, b) = (&self.knots[i - 1], &self.knots[i]);
                let piece = self.domain.piece_of(t);
                if piece == self.domain.piece_of(a.t) && piece == self.domain.piece_of(b.t) {
                    return phi.eval(&a.right, &b.left, (t - a.t) / (b.t - a.t));
                }
            }
        }
        match i {
            0 => self.initial.clone().expect("validated: initial value present"),
            i => self.knots[i - 1].right.clone(),
        }
    }

    /// `pi(t+)`, the cadlag value.
    pub fn right_value(&self, t: f64) -> Result<P> {
        Ok(self.values_at(t)?.1)
    }

    /// Whether the path satisfies `f(t-) = f(t)` at every finite right end
    /// of an interval piece, as required of cadlag functions on a closed
    /// interval.
    pub fn left_continuous_at_right_ends(&self) -> bool {
        self.domain
            .pieces()
            .iter()
            .filter(|(a, b)| a < b && b.is_finite())
            .all(|&(_, b)| self.values_at(b).is_ok_and(|(l, r)| l == r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn domain_normalization() {
        let d = Domain::new(&[(0.0, 1.0), (0.5, 2.0), (3.0, 3.0), (4.0, f64::INFINITY)], &[1.5, 3.5, 3.5])
            .unwrap();
        assert_eq!(d.pieces(), &[(0.0, 2.0), (3.0, 3.0), (3.5, 3.5), (4.0, f64::INFINITY)]);
        assert_eq!(d.isolated_points(), vec![3.0, 3.5]);
        assert_eq!(d.gaps(), vec![(2.0, 3.0), (3.0, 3.5), (3.5, 4.0)]);
        assert!(d.contains(1e9) && !d.contains(2.5) && d.contains(3.0));
        assert_eq!(d.hull(), Some((0.0, f64::INFINITY)));
        assert_eq!(d.up_to(3.2).pieces(), &[(0.0, 2.0), (3.0, 3.0)]);
        assert!(d.has_left_neighbourhood(1.0) && !d.has_left_neighbourhood(0.0) && !d.has_left_neighbourhood(3.0));
        assert!(Domain::interval(1.0, 0.0).is_err());
        assert!(Domain::points(&[f64::INFINITY]).is_err());
        assert!(Domain::new(&[(0.0, 1.0), (1.0, 2.0)], &[]).unwrap().pieces().len() == 1);
    }

    #[test]
    fn step_values() {
        let p = Path::step(Domain::interval(0.0, 2.0).unwrap(), 0.0, &[(1.0, 1.0)]).unwrap();
        assert_eq!(p.values_at(0.5).unwrap(), (0.0, 0.0));
        assert_eq!(p.values_at(1.0).unwrap(), (0.0, 1.0));
        assert_eq!(p.values_at(2.0).unwrap(), (1.0, 1.0));
        assert_eq!(p.values_at(3.0), Err(Error::OutsideDomain(3.0)));
        assert_eq!(p.first_jump(), Some(1.0));
        assert_eq!((p.start_time(), p.final_time()), (0.0, 2.0));
        assert!(p.left_continuous_at_right_ends());
    }

    #[test]
    fn left_limits_are_checked() {
        let d = Domain::interval(0.0, 2.0).unwrap();
        let bad = Path::new(d.clone(), Some(0.0), vec![Knot::new(1.0, 0.5, 1.0)], Fill::Step);
        assert!(matches!(bad, Err(Error::InvalidPath(_))));
        // At the left end of a piece the left value is free.
        assert!(Path::new(d.clone(), None, vec![Knot::new(0.0, 7.0, 1.0)], Fill::Step).is_ok());
        assert!(Path::<f64>::new(d.clone(), None, vec![], Fill::Step).is_err());
        assert!(Path::new(d, Some(0.0), vec![Knot::new(3.0, 0.0, 1.0)], Fill::Step).is_err());
    }

    #[test]
    fn point_paths_and_trivial() {
        let p = Path::on_points(vec![Knot::new(0.0, 1.0, 2.0), Knot::new(1.0, 5.0, 5.0)]).unwrap();
        assert_eq!(p.values_at(0.0).unwrap(), (1.0, 2.0));
        assert_eq!(p.values_at(1.0).unwrap(), (5.0, 5.0));
        let t = Path::<f64>::trivial();
        assert!(t.is_trivial());
        assert_eq!((t.start_time(), t.final_time()), (f64::INFINITY, f64::NEG_INFINITY));
    }

    #[test]
    fn interpolated_values() {
        let lin = Interpolation::new("linear", |x: &f64, z: &f64, p| (1.0 - p) * x + p * z);
        let d = Domain::interval(0.0, 3.0).unwrap();
        let p = Path::continuous(d, &[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)], lin).unwrap();
        assert_eq!(p.values_at(0.25).unwrap(), (0.25, 0.25));
        assert_eq!(p.values_at(1.5).unwrap().0, 0.5);
        assert_eq!(p.values_at(2.5).unwrap().0, 0.0);
        assert!(!p.has_jumps());
    }
}
