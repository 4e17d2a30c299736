//! Closed and filled-in graphs as sampled chains in squeezed space.

use alloc::vec;
use alloc::vec::Vec;

use super::Path;
use crate::betweenness::{Betweenness, BetweennessKind, Trivial};
use crate::metric::{MetricSpace, SqueezeConfig, SqueezedPoint};

/// Largest number of points placed on one jump segment.
const MAX_SEGMENT_POINTS: usize = 1 << 16;

/// Sampling parameters for graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphOptions {
    /// Time mesh on interval pieces and spatial mesh on jump segments.
    pub eta: f64,
    /// Unbounded pieces are cut at `|t| = horizon`.
    pub horizon: f64,
}

impl Default for GraphOptions {
    fn default() -> Self {
        Self { eta: 0.01, horizon: 20.0 }
    }
}

impl GraphOptions {
    pub fn new(eta: f64) -> Self {
        Self { eta, ..Self::default() }
    }
}

/// A finite chain in squeezed space, in increasing order. The chain
/// index of a point is its position.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<P> {
    points: Vec<SqueezedPoint<P>>,
    /// `links[k]` marks `points[k]` and `points[k + 1]` as samples at
    /// neighbouring times of the same interval piece.
    links: Vec<bool>,
    mesh: f64,
    sampled: bool,
    truncation: f64,
}

impl<P: Clone + PartialEq> Graph<P> {
    /// A graph from an explicit chain. Consecutive spatial points whose
    /// times differ by a positive amount at most `mesh` are treated as
    /// neighbouring samples of one interval.
    pub fn from_chain(points: Vec<SqueezedPoint<P>>, mesh: f64) -> Self {
        let links = points
            .windows(2)
            .map(|w| {
                let gap = w[1].time() - w[0].time();
                !w[0].is_star() && !w[1].is_star() && gap > 0.0 && gap <= mesh * (1.0 + 1e-9)
            })
            .collect();
        Self { points, links, mesh, sampled: mesh > 0.0, truncation: 0.0 }
    }

    pub fn points(&self) -> &[SqueezedPoint<P>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn links(&self) -> &[bool] {
        &self.links
    }

    /// Sampling mesh, zero for graphs that are represented exactly.
    pub fn mesh(&self) -> f64 {
        self.mesh
    }

    /// Whether the chain is a sample of an infinite graph.
    pub fn is_sampled(&self) -> bool {
        self.sampled
    }

    /// Hausdorff cost of the horizon cut, zero if nothing was cut.
    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    /// Whether the chain contains `(x, t)`.
    pub fn contains(&self, x: &P, t: f64) -> bool {
        self.points
            .iter()
            .any(|p| matches!(p, SqueezedPoint::At { x: y, t: s } if *s == t && y == x))
    }
}

/// The closed graph `{(x, t) : t in I, x in {pi(t-), pi(t+)}}` plus both
/// star points.
///
/// Interval pieces are sampled at time mesh at most `eta`; all knot times
/// are kept. The sample lies within `eta (1 + sup phi)` of the full graph
/// in Hausdorff distance, plus the truncation cost for unbounded pieces.
pub fn closed_graph<P: Clone + PartialEq>(path: &Path<P>, cfg: &SqueezeConfig, opts: &GraphOptions) -> Graph<P> {
    build(path, &Trivial, None::<&fn(&P, &P) -> f64>, cfg, opts)
}

/// The filled-in graph: the closed graph plus, at every jump, the segment
/// `<pi(t-), pi(t+)>` sampled with `ceil(d / eta) + 1` points in the
/// segment order.
pub fn filled_graph<P, B, M>(path: &Path<P>, b: &B, space: &M, cfg: &SqueezeConfig, opts: &GraphOptions) -> Graph<P>
where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let dist = |x: &P, y: &P| space.dist(x, y);
    build(path, b, Some(&dist), cfg, opts)
}

fn build<P, B, D>(path: &Path<P>, b: &B, dist: Option<&D>, cfg: &SqueezeConfig, opts: &GraphOptions) -> Graph<P>
where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    D: Fn(&P, &P) -> f64,
{
    assert!(opts.eta > 0.0 && opts.horizon > 0.0, "graph options must be positive");
    let h = opts.horizon;
    let mut points = vec![SqueezedPoint::NegStar];
    let mut links = Vec::new();
    let mut sampled = false;
    let mut truncated = false;
    let knot_times: Vec<f64> = path.knots().iter().map(|k| k.t).collect();
    let parametric = matches!(b.kind(), BetweennessKind::Linear | BetweennessKind::Interpolation);

    for &(a, z) in path.domain().pieces() {
        if a < -h || z > h {
            truncated = true;
        }
        let (lo, hi) = (a.max(-h), z.min(h));
        if lo > hi {
            continue;
        }
        let mut times = Vec::new();
        if lo < hi {
            sampled = true;
            let n = libm::ceil((hi - lo) / opts.eta).max(1.0) as usize;
            times.extend((0..=n).map(|k| if k == n { hi } else { lo + (hi - lo) * k as f64 / n as f64 }));
            let from = knot_times.partition_point(|&t| t < lo);
            let to = knot_times.partition_point(|&t| t <= hi);
            times.extend_from_slice(&knot_times[from..to]);
            times.sort_by(f64::total_cmp);
            times.dedup();
        } else {
            times.push(lo);
        }
        for (k, &t) in times.iter().enumerate() {
            let (l, r) = path.values_at(t).expect("sample times lie in the domain");
            links.push(k > 0);
            points.push(SqueezedPoint::at(l.clone(), t));
            if l != r {
                let n = match dist {
                    Some(d) => {
                        let steps = libm::ceil(d(&l, &r) / opts.eta);
                        (steps.min(MAX_SEGMENT_POINTS as f64) as usize + 1).max(2)
                    }
                    None => 2,
                };
                let seg = b.sample(&l, &r, n);
                sampled |= parametric;
                for x in seg.into_iter().skip(1) {
                    if points.last().and_then(|p| p.space()) != Some(&x) {
                        links.push(false);
                        points.push(SqueezedPoint::at(x, t));
                    }
                }
                if points.last().and_then(|p| p.space()) != Some(&r) {
                    links.push(false);
                    points.push(SqueezedPoint::at(r, t));
                }
            }
        }
    }
    links.push(false);
    points.push(SqueezedPoint::PosStar);
    Graph {
        points,
        links,
        mesh: if sampled { opts.eta } else { 0.0 },
        sampled,
        truncation: if truncated { cfg.truncation_bound(h) } else { 0.0 },
    }
}

/// A failed graph condition.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphViolation {
    /// The chain does not start (or end) with its star point.
    MissingStar { start: bool },
    /// A star point in the interior of the chain.
    StarInside(usize),
    /// Time decreases from `points[k]` to `points[k + 1]`.
    TimeOrder(usize),
    /// At one time, the middle point of the chain triple is not between
    /// the outer two.
    Segment { triple: (usize, usize, usize), distance: f64 },
    /// Neighbouring samples of one interval are further apart than the
    /// continuity tolerance.
    Continuity { index: usize, distance: f64 },
}

/// Outcome of [`check_graph`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GraphReport {
    pub violations: Vec<GraphViolation>,
}

impl GraphReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that a chain can be the graph of a path:
///
/// * points at one time: whenever `x1 <= x2 <= x3` in the chain,
///   `x2` lies in `<x1, x3>` (up to `tol`);
/// * time never decreases along the chain and the stars sit at the ends;
/// * with `continuity = Some(c)`, linked neighbours are within `c`, which
///   rules out points off the path such as an isolated value at one time
///   of a constant stretch.
///
/// Groups of at most 40 points at one time are checked on all triples,
/// larger groups on outer and consecutive triples.
pub fn check_graph<P, B, M>(g: &Graph<P>, b: &B, space: &M, tol: f64, continuity: Option<f64>) -> GraphReport
where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let mut violations = Vec::new();
    let pts = &g.points;
    if !matches!(pts.first(), Some(SqueezedPoint::NegStar)) {
        violations.push(GraphViolation::MissingStar { start: true });
    }
    if !matches!(pts.last(), Some(SqueezedPoint::PosStar)) {
        violations.push(GraphViolation::MissingStar { start: false });
    }
    for (k, p) in pts.iter().enumerate() {
        if p.is_star() && k != 0 && k + 1 != pts.len() {
            violations.push(GraphViolation::StarInside(k));
        }
    }
    for k in 0..pts.len().saturating_sub(1) {
        if pts[k + 1].time() < pts[k].time() {
            violations.push(GraphViolation::TimeOrder(k));
        }
    }
    let mut start = 0;
    while start < pts.len() {
        let t = pts[start].time();
        let mut end = start + 1;
        while end < pts.len() && pts[end].time() == t {
            end += 1;
        }
        if t.is_finite() && end - start >= 3 {
            check_group(pts, start, end, b, space, tol, &mut violations);
        }
        start = end;
    }
    if let Some(c) = continuity {
        for (k, &linked) in g.links.iter().enumerate() {
            if !linked {
                continue;
            }
            if let (Some(x), Some(y)) = (pts[k].space(), pts[k + 1].space()) {
                let distance = space.dist(x, y);
                if distance > c {
                    violations.push(GraphViolation::Continuity { index: k, distance });
                }
            }
        }
    }
    GraphReport { violations }
}

fn check_group<P, B, M>(
    pts: &[SqueezedPoint<P>],
    start: usize,
    end: usize,
    b: &B,
    space: &M,
    tol: f64,
    out: &mut Vec<GraphViolation>,
) where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let x = |k: usize| pts[k].space().expect("finite times carry spatial points");
    let mut check = |i: usize, j: usize, k: usize| {
        let (a, y, c) = (x(i), x(j), x(k));
        if y == a || y == c {
            return;
        }
        let distance = b.distance_to_segment(space, y, a, c);
        if distance > tol {
            out.push(GraphViolation::Segment { triple: (i, j, k), distance });
        }
    };
    if end - start <= 40 {
        for i in start..end {
            for j in i + 1..end {
                for k in j + 1..end {
                    check(i, j, k);
                }
            }
        }
    } else {
        for j in start + 1..end - 1 {
            check(start, j, end - 1);
            check(j - 1, j, j + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::{Interpolation, Linear};
    use crate::metric::RealLine;
    use crate::path::{Domain, Knot};

    fn cfg() -> SqueezeConfig {
        SqueezeConfig::default()
    }

    #[test]
    fn trivial_path_has_only_stars() {
        let g = closed_graph(&Path::<f64>::trivial(), &cfg(), &GraphOptions::default());
        assert_eq!(g.points(), &[SqueezedPoint::NegStar, SqueezedPoint::PosStar]);
        assert!(!g.is_sampled());
    }

    #[test]
    fn single_point_domain() {
        let p = Path::on_points(vec![Knot::new(0.0, 2.0, 2.0)]).unwrap();
        let g = closed_graph(&p, &cfg(), &GraphOptions::default());
        assert_eq!(g.points(), &[SqueezedPoint::NegStar, SqueezedPoint::at(2.0, 0.0), SqueezedPoint::PosStar]);
        assert_eq!(g.mesh(), 0.0);
    }

    #[test]
    fn jump_values_both_present() {
        let p = Path::step(Domain::interval(0.0, 2.0).unwrap(), 0.0, &[(1.0, 1.0)]).unwrap();
        let g = closed_graph(&p, &cfg(), &GraphOptions::new(0.1));
        assert!(g.contains(&0.0, 1.0) && g.contains(&1.0, 1.0));
        assert!(g.contains(&0.0, 0.0) && g.contains(&1.0, 2.0));
        assert!(!g.contains(&0.5, 1.0));
        assert_eq!(filled_graph(&p, &Trivial, &RealLine, &cfg(), &GraphOptions::new(0.1)), g);
        let m1 = filled_graph(&p, &Linear, &RealLine, &cfg(), &GraphOptions::new(0.1));
        assert!(m1.contains(&0.5, 1.0));
        assert!(check_graph(&m1, &Linear, &RealLine, 1e-9, Some(0.0)).is_ok());
        assert!(check_graph(&g, &Trivial, &RealLine, 0.0, Some(0.0)).is_ok());
    }

    #[test]
    fn continuous_paths_ignore_betweenness() {
        let lin = Interpolation::new("linear", |x: &f64, z: &f64, p| (1.0 - p) * x + p * z);
        let p = Path::continuous(Domain::interval(0.0, 1.0).unwrap(), &[(0.0, 0.0), (1.0, 3.0)], lin).unwrap();
        let o = GraphOptions::new(0.05);
        let g = closed_graph(&p, &cfg(), &o);
        assert_eq!(filled_graph(&p, &Linear, &RealLine, &cfg(), &o), g);
        assert!(check_graph(&g, &Linear, &RealLine, 1e-9, Some(0.151)).is_ok());
    }

    #[test]
    fn truncation_is_reported() {
        let p = Path::step(Domain::interval(0.0, f64::INFINITY).unwrap(), 1.0, &[]).unwrap();
        let g = closed_graph(&p, &cfg(), &GraphOptions { eta: 0.5, horizon: 3.0 });
        assert_eq!(g.truncation(), cfg().truncation_bound(3.0));
        assert_eq!(g.points()[g.len() - 2].time(), 3.0);
    }

    #[test]
    fn not_a_graph() {
        // {x} x [-1, 1] together with (y, 0), in either order at time 0.
        let (x, y) = (0.0, 1.0);
        for y_first in [true, false] {
            let mut pts = vec![SqueezedPoint::NegStar];
            for k in -10..=10 {
                let t = k as f64 / 10.0;
                if k == 0 && y_first {
                    pts.push(SqueezedPoint::at(y, t));
                }
                pts.push(SqueezedPoint::at(x, t));
                if k == 0 && !y_first {
                    pts.push(SqueezedPoint::at(y, t));
                }
            }
            pts.push(SqueezedPoint::PosStar);
            let g = Graph::from_chain(pts, 0.1);
            for b in [BetweennessKind::Trivial, BetweennessKind::Linear] {
                let report = match b {
                    BetweennessKind::Trivial => check_graph(&g, &Trivial, &RealLine, 1e-9, Some(1e-9)),
                    _ => check_graph(&g, &Linear, &RealLine, 1e-9, Some(1e-9)),
                };
                assert!(report.violations.iter().any(|v| matches!(v, GraphViolation::Continuity { .. })));
            }
        }
    }

    #[test]
    fn decreasing_time_is_flagged() {
        let pts = vec![
            SqueezedPoint::NegStar,
            SqueezedPoint::at(0.0, 1.0),
            SqueezedPoint::at(0.0, 0.5),
            SqueezedPoint::PosStar,
        ];
        let r = check_graph(&Graph::from_chain(pts, 0.0), &Trivial, &RealLine, 0.0, None);
        assert_eq!(r.violations, vec![GraphViolation::TimeOrder(1)]);
    }

    #[test]
    fn segment_condition() {
        let pts = vec![
            SqueezedPoint::NegStar,
            SqueezedPoint::at(0.0, 1.0),
            SqueezedPoint::at(2.0, 1.0),
            SqueezedPoint::at(1.0, 1.0),
            SqueezedPoint::PosStar,
        ];
        let g = Graph::from_chain(pts, 0.0);
        let r = check_graph(&g, &Linear, &RealLine, 1e-9, None);
        assert!(matches!(r.violations[..], [GraphViolation::Segment { triple: (1, 2, 3), .. }]));
        assert!(!check_graph(&g, &Trivial, &RealLine, 1e-9, None).is_ok());
    }
}
