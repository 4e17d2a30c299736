//! Metric spaces and the squeezed space-time.
//!
//! The squeezed space attaches a time to every spatial point and adds two
//! star points at `-inf` and `+inf`. Its metric discounts spatial distances
//! at large times through a weight `phi` and compactifies time through an
//! extended-real metric `dbar`, so graphs of paths on unbounded domains
//! become compact sets.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A metric space over points of type `Point`.
pub trait MetricSpace {
    type Point: Clone;

    /// Distance between two points.
    fn dist(&self, a: &Self::Point, b: &Self::Point) -> f64;

    /// Whether the whole space is known to be compact. Diagnostics use this
    /// to skip the compact-containment check.
    fn is_compact(&self) -> bool {
        false
    }
}

impl<M: MetricSpace + ?Sized> MetricSpace for &M {
    type Point = M::Point;
    fn dist(&self, a: &Self::Point, b: &Self::Point) -> f64 {
        (**self).dist(a, b)
    }
    fn is_compact(&self) -> bool {
        (**self).is_compact()
    }
}

/// The real line with `|x - y|`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RealLine;

impl MetricSpace for RealLine {
    type Point = f64;
    fn dist(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }
}

/// Euclidean space of any finite dimension. Points of different length are
/// compared on their common prefix, so callers should check dimensions at
/// the boundary (the path loaders do).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Euclidean;

impl MetricSpace for Euclidean {
    type Point = Vec<f64>;
    fn dist(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
        libm::sqrt(s)
    }
}

/// A finite metric space given by its distance matrix. Points are indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpace {
    matrix: Vec<Vec<f64>>,
}

impl FiniteSpace {
    /// Builds the space from a square, symmetric, zero-diagonal matrix of
    /// nonnegative entries.
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(row.len(), n));
            }
            for (j, &v) in row.iter().enumerate() {
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(Error::InvalidMetric(alloc::format!(
                        "entry ({i},{j}) is {v}"
                    )));
                }
                if i == j && v != 0.0 {
                    return Err(Error::InvalidMetric(alloc::format!(
                        "diagonal entry {i} is {v}"
                    )));
                }
                if matrix[j].len() == n && matrix[j][i] != v {
                    return Err(Error::InvalidMetric(alloc::format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }
}

impl MetricSpace for FiniteSpace {
    type Point = usize;
    fn dist(&self, a: &usize, b: &usize) -> f64 {
        self.matrix[*a][*b]
    }
    fn is_compact(&self) -> bool {
        true
    }
}

/// A metric given by an arbitrary closure. Nothing is assumed about the
/// closure; run [`validate_metric`] on it.
pub struct FnMetric<P> {
    f: Box<dyn Fn(&P, &P) -> f64 + Send + Sync>,
}

impl<P> FnMetric<P> {
    pub fn new(f: impl Fn(&P, &P) -> f64 + Send + Sync + 'static) -> Self {
        Self { f: Box::new(f) }
    }
}

impl<P> fmt::Debug for FnMetric<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnMetric")
    }
}

impl<P: Clone> MetricSpace for FnMetric<P> {
    type Point = P;
    fn dist(&self, a: &P, b: &P) -> f64 {
        (self.f)(a, b)
    }
}

/// Which metric axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `d(x, y)` is negative or not a number.
    NonNegative,
    /// `d(x, x) != 0`.
    Identity,
    /// `d(x, y) != d(y, x)`.
    Symmetry,
    /// `d(x, z) > d(x, y) + d(y, z)`.
    Triangle,
}

/// One violated axiom with the sample indices that witness it. For the
/// triangle inequality the witness is `(x, y, z)` with `y` the intermediate
/// point; two-point axioms repeat the last index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricViolation {
    pub axiom: Axiom,
    pub witness: (usize, usize, usize),
    /// Size of the violation.
    pub excess: f64,
}

/// Result of [`validate_metric`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
}

impl MetricReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the metric axioms on every pair and triple of `samples`.
///
/// Comparisons allow a relative slack of `1e-12` to absorb rounding; the
/// triangle check is cubic in the number of samples.
pub fn validate_metric<M: MetricSpace>(space: &M, samples: &[M::Point]) -> MetricReport {
    let n = samples.len();
    let mut violations = Vec::new();
    let d: Vec<Vec<f64>> = samples
        .iter()
        .map(|a| samples.iter().map(|b| space.dist(a, b)).collect())
        .collect();
    let slack = |v: f64| 1e-12 * (1.0 + v.abs());
    for i in 0..n {
        if d[i][i].abs() > slack(0.0) || d[i][i].is_nan() {
            violations.push(MetricViolation {
                axiom: Axiom::Identity,
                witness: (i, i, i),
                excess: d[i][i].abs(),
            });
        }
        for j in 0..n {
            if !(d[i][j] >= 0.0) {
                violations.push(MetricViolation {
                    axiom: Axiom::NonNegative,
                    witness: (i, j, j),
                    excess: -d[i][j],
                });
            }
            if j > i && (d[i][j] - d[j][i]).abs() > slack(d[i][j]) {
                violations.push(MetricViolation {
                    axiom: Axiom::Symmetry,
                    witness: (i, j, j),
                    excess: (d[i][j] - d[j][i]).abs(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let excess = d[i][k] - (d[i][j] + d[j][k]);
                if excess > slack(d[i][k]) {
                    violations.push(MetricViolation {
                        axiom: Axiom::Triangle,
                        witness: (i, j, k),
                        excess,
                    });
                }
            }
        }
    }
    MetricReport { violations }
}

/// Time weight `phi` of the squeezed metric. It vanishes at `+-inf` and is
/// positive on finite times.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Phi {
    /// `exp(-|t|)`.
    #[default]
    ExpNegAbs,
    /// `1 / (1 + t^2)`.
    InvOnePlusSq,
}

impl Phi {
    pub fn eval(self, t: f64) -> f64 {
        if t.is_infinite() {
            return 0.0;
        }
        match self {
            Phi::ExpNegAbs => libm::exp(-t.abs()),
            Phi::InvOnePlusSq => 1.0 / (1.0 + t * t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Phi::ExpNegAbs => "exp_neg_abs",
            Phi::InvOnePlusSq => "inv_one_plus_sq",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "exp_neg_abs" => Some(Phi::ExpNegAbs),
            "inv_one_plus_sq" => Some(Phi::InvOnePlusSq),
            _ => None,
        }
    }

    /// Supremum of `phi` over the extended reals.
    pub fn sup(self) -> f64 {
        1.0
    }
}

/// Metric on the extended real line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TimeMetric {
    /// `|tanh s - tanh t|`, with `tanh(+-inf) = +-1`.
    #[default]
    Tanh,
}

impl TimeMetric {
    pub fn eval(self, s: f64, t: f64) -> f64 {
        match self {
            TimeMetric::Tanh => (ext_tanh(s) - ext_tanh(t)).abs(),
        }
    }

    /// Coordinate with `eval(s, t) = |embed(s) - embed(t)|`.
    pub fn embed(self, t: f64) -> f64 {
        match self {
            TimeMetric::Tanh => ext_tanh(t),
        }
    }

    pub fn name(self) -> &'static str {
        "tanh"
    }

    pub fn from_name(s: &str) -> Option<Self> {
        (s == "tanh").then_some(TimeMetric::Tanh)
    }
}

fn ext_tanh(t: f64) -> f64 {
    if t == f64::INFINITY {
        1.0
    } else if t == f64::NEG_INFINITY {
        -1.0
    } else {
        libm::tanh(t)
    }
}

/// The pair `(phi, dbar)` that fixes the squeezed metric. Distances are
/// only comparable across runs that use the same configuration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SqueezeConfig {
    pub phi: Phi,
    pub dbar: TimeMetric,
}

impl SqueezeConfig {
    pub fn phi(&self, t: f64) -> f64 {
        self.phi.eval(t)
    }

    pub fn dbar(&self, s: f64, t: f64) -> f64 {
        self.dbar.eval(s, t)
    }

    pub fn phi_sup(&self) -> f64 {
        self.phi.sup()
    }

    /// Hausdorff cost of cutting a graph at `|t| = horizon`: every point
    /// beyond the horizon lies within this distance of a star point.
    pub fn truncation_bound(&self, horizon: f64) -> f64 {
        self.phi(horizon) + self.dbar(horizon, f64::INFINITY)
    }
}

/// A point of the squeezed space.
#[derive(Debug, Clone, PartialEq)]
pub enum SqueezedPoint<P> {
    /// The star point at `-inf`.
    NegStar,
    /// A spatial point at a finite time.
    At { x: P, t: f64 },
    /// The star point at `+inf`.
    PosStar,
}

impl<P> SqueezedPoint<P> {
    pub fn at(x: P, t: f64) -> Self {
        SqueezedPoint::At { x, t }
    }

    /// Time coordinate, `+-inf` for the star points.
    pub fn time(&self) -> f64 {
        match self {
            SqueezedPoint::NegStar => f64::NEG_INFINITY,
            SqueezedPoint::At { t, .. } => *t,
            SqueezedPoint::PosStar => f64::INFINITY,
        }
    }

    pub fn space(&self) -> Option<&P> {
        match self {
            SqueezedPoint::At { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn is_star(&self) -> bool {
        !matches!(self, SqueezedPoint::At { .. })
    }
}

/// The squeezed metric
///
/// `(phi(s) ^ phi(t)) (d(x, y) ^ 1) + |phi(s) - phi(t)| + dbar(s, t)`,
///
/// where the first term is dropped when either point is a star.
pub fn d_sqz<M: MetricSpace>(
    a: &SqueezedPoint<M::Point>,
    b: &SqueezedPoint<M::Point>,
    base: &M,
    cfg: &SqueezeConfig,
) -> f64 {
    let (s, t) = (a.time(), b.time());
    let (ps, pt) = (cfg.phi(s), cfg.phi(t));
    let spatial = match (a.space(), b.space()) {
        (Some(x), Some(y)) => ps.min(pt) * base.dist(x, y).min(1.0),
        _ => 0.0,
    };
    spatial + (ps - pt).abs() + cfg.dbar(s, t)
}

/// The squeezed space over a base metric space.
#[derive(Debug, Clone, Default)]
pub struct Squeezed<M> {
    pub base: M,
    pub cfg: SqueezeConfig,
}

impl<M> Squeezed<M> {
    pub fn new(base: M, cfg: SqueezeConfig) -> Self {
        Self { base, cfg }
    }
}

impl<M: MetricSpace> MetricSpace for Squeezed<M> {
    type Point = SqueezedPoint<M::Point>;
    fn dist(&self, a: &Self::Point, b: &Self::Point) -> f64 {
        d_sqz(a, b, &self.base, &self.cfg)
    }
    fn is_compact(&self) -> bool {
        self.base.is_compact()
    }
}
