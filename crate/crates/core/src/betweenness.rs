//! Betweennesses: rules that assign to every pair `x, z` a segment
//! `<x, z>` of points lying between them.
//!
//! A betweenness must satisfy four axioms for all `x, y, z`:
//!
//! 1. `<x, z> = <z, x>`,
//! 2. `x` lies in `<x, z>`,
//! 3. if `y` lies in `<x, z>` then `<x, y>` and `<y, z>` meet only in `y`,
//! 4. if `y` lies in `<x, z>` then `<x, y>` and `<y, z>` cover `<x, z>`.
//!
//! From these follow `<x, x> = {x}`, monotonicity of segments, and a total
//! order on each segment: `y <= y'` iff `y` lies in `<x, y'>`.
//! [`check_axioms`] tests all of this on sample triples.
//!
//! The trivial betweenness `{x, z}` yields the J1 topology, the linear one
//! yields M1.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::metric::MetricSpace;
use crate::{Error, Result};

/// Default number of sample points on parametric segments.
pub const N_SEG: usize = 33;

/// Points that live in a real vector space.
pub trait Coordinates: Clone + PartialEq {
    fn coords(&self) -> &[f64];
    fn from_coords(c: &[f64]) -> Self;
}

impl Coordinates for f64 {
    fn coords(&self) -> &[f64] {
        core::slice::from_ref(self)
    }
    fn from_coords(c: &[f64]) -> Self {
        c[0]
    }
}

impl Coordinates for Vec<f64> {
    fn coords(&self) -> &[f64] {
        self
    }
    fn from_coords(c: &[f64]) -> Self {
        c.to_vec()
    }
}

/// Which family a betweenness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetweennessKind {
    Trivial,
    Linear,
    Order,
    Interpolation,
}

/// A finite view of a segment `<start, end>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment<P> {
    pub start: P,
    pub end: P,
    /// Sample points ordered from `start` to `end` by the segment order.
    pub points: Vec<P>,
    /// Whether `points` is the whole segment rather than a sample of it.
    pub exact: bool,
}

/// A betweenness on points of type `P`.
pub trait Betweenness<P: Clone + PartialEq> {
    fn kind(&self) -> BetweennessKind;

    /// Points of `<x, z>` ordered from `x` to `z`, always starting with `x`
    /// and ending with `z`. Parametric kinds return `n` points at evenly
    /// spaced parameters; finite kinds return the whole segment and
    /// ignore `n`.
    fn sample(&self, x: &P, z: &P, n: usize) -> Vec<P>;

    /// Whether [`Betweenness::distance_to_segment`] is exact.
    fn is_exact(&self) -> bool;

    /// `<x, z>` sampled at the default resolution [`N_SEG`].
    fn segment(&self, x: &P, z: &P) -> Segment<P> {
        Segment {
            start: x.clone(),
            end: z.clone(),
            points: self.sample(x, z, N_SEG),
            exact: matches!(self.kind(), BetweennessKind::Trivial | BetweennessKind::Order),
        }
    }

    /// `d(y, <x, z>)`. The default takes the minimum over the sample.
    fn distance_to_segment<M: MetricSpace<Point = P>>(&self, space: &M, y: &P, x: &P, z: &P) -> f64 {
        self.sample(x, z, N_SEG)
            .iter()
            .map(|w| space.dist(y, w))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `y` lies in `<x, z>` up to `tol`.
    fn contains<M: MetricSpace<Point = P>>(&self, space: &M, y: &P, x: &P, z: &P, tol: f64) -> bool {
        self.distance_to_segment(space, y, x, z) <= tol
    }
}

impl<P: Clone + PartialEq, B: Betweenness<P>> Betweenness<P> for &B {
    fn kind(&self) -> BetweennessKind {
        (**self).kind()
    }
    fn sample(&self, x: &P, z: &P, n: usize) -> Vec<P> {
        (**self).sample(x, z, n)
    }
    fn is_exact(&self) -> bool {
        (**self).is_exact()
    }
    fn distance_to_segment<M: MetricSpace<Point = P>>(&self, space: &M, y: &P, x: &P, z: &P) -> f64 {
        (**self).distance_to_segment(space, y, x, z)
    }
}

/// `<x, z> = {x, z}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Trivial;

impl<P: Clone + PartialEq> Betweenness<P> for Trivial {
    fn kind(&self) -> BetweennessKind {
        BetweennessKind::Trivial
    }
    fn sample(&self, x: &P, z: &P, _n: usize) -> Vec<P> {
        if x == z {
            vec![x.clone()]
        } else {
            vec![x.clone(), z.clone()]
        }
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn distance_to_segment<M: MetricSpace<Point = P>>(&self, space: &M, y: &P, x: &P, z: &P) -> f64 {
        space.dist(y, x).min(space.dist(y, z))
    }
}

/// The trivial segment `{x, z}`.
pub fn trivial_segment<P: Clone + PartialEq>(x: &P, z: &P) -> Segment<P> {
    Trivial.segment(x, z)
}

/// `<x, z> = {(1 - p) x + p z : p in [0, 1]}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Linear;

impl Linear {
    /// Closest point of the segment to `y` in the Euclidean norm.
    pub fn project<P: Coordinates>(y: &P, x: &P, z: &P) -> P {
        let (xc, yc, zc) = (x.coords(), y.coords(), z.coords());
        if xc.len() == 1 {
            // Clamping is exact, unlike the general formula.
            let (lo, hi) = if xc[0] <= zc[0] { (xc[0], zc[0]) } else { (zc[0], xc[0]) };
            return P::from_coords(&[yc[0].clamp(lo, hi)]);
        }
        let mut dd = 0.0;
        let mut dy = 0.0;
        for i in 0..xc.len() {
            let d = zc[i] - xc[i];
            dd += d * d;
            dy += (yc[i] - xc[i]) * d;
        }
        if dd == 0.0 {
            return x.clone();
        }
        let p = (dy / dd).clamp(0.0, 1.0);
        if p == 0.0 {
            return x.clone();
        }
        if p == 1.0 {
            return z.clone();
        }
        let c: Vec<f64> = xc.iter().zip(zc).map(|(a, b)| a + p * (b - a)).collect();
        P::from_coords(&c)
    }

    fn blend<P: Coordinates>(x: &P, z: &P, p: f64) -> P {
        let c: Vec<f64> = x
            .coords()
            .iter()
            .zip(z.coords())
            .map(|(a, b)| (1.0 - p) * a + p * b)
            .collect();
        P::from_coords(&c)
    }
}

impl<P: Coordinates> Betweenness<P> for Linear {
    fn kind(&self) -> BetweennessKind {
        BetweennessKind::Linear
    }
    fn sample(&self, x: &P, z: &P, n: usize) -> Vec<P> {
        if x == z {
            return vec![x.clone()];
        }
        let n = n.max(2);
        (0..n)
            .map(|i| match i {
                0 => x.clone(),
                i if i == n - 1 => z.clone(),
                i => Self::blend(x, z, i as f64 / (n - 1) as f64),
            })
            .collect()
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn distance_to_segment<M: MetricSpace<Point = P>>(&self, space: &M, y: &P, x: &P, z: &P) -> f64 {
        space.dist(y, &Self::project(y, x, z))
    }
}

/// The linear segment between two vectors of equal dimension.
pub fn linear_segment<P: Coordinates>(x: &P, z: &P) -> Result<Segment<P>> {
    let (a, b) = (x.coords().len(), z.coords().len());
    if a != b {
        return Err(Error::DimensionMismatch(a, b));
    }
    Ok(Linear.segment(x, z))
}

/// The order betweenness on a finite subset `X` of the real line:
/// `<x, z>` is the set of points of `X` between `x` and `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderBetweenness {
    xs: Vec<f64>,
}

impl OrderBetweenness {
    /// Builds the betweenness on the given points (sorted and deduplicated
    /// here). NaN values are rejected.
    pub fn new(mut xs: Vec<f64>) -> Result<Self> {
        if xs.iter().any(|x| x.is_nan()) {
            return Err(Error::OutOfRange(String::from("NaN in ordered space")));
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        Ok(Self { xs })
    }

    pub fn points(&self) -> &[f64] {
        &self.xs
    }

    pub fn contains_point(&self, x: f64) -> bool {
        self.xs.binary_search_by(|v| v.total_cmp(&x)).is_ok()
    }

    /// The slice `<x, z>`, ordered from `x` to `z`. Points outside `X` are
    /// kept as endpoints so the segment axioms still hold for them.
    fn slice(&self, x: f64, z: f64) -> Vec<f64> {
        let (lo, hi) = if x <= z { (x, z) } else { (z, x) };
        let a = self.xs.partition_point(|&v| v < lo);
        let b = self.xs.partition_point(|&v| v <= hi);
        let mut out = Vec::with_capacity(b - a + 2);
        if self.xs.get(a) != Some(&lo) {
            out.push(lo);
        }
        out.extend_from_slice(&self.xs[a..b]);
        if out.last() != Some(&hi) {
            out.push(hi);
        }
        if x > z {
            out.reverse();
        }
        out
    }

    /// The point of `<x, z>` nearest to `y`, found by bisection.
    fn nearest(&self, y: f64, x: f64, z: f64) -> f64 {
        let (lo, hi) = if x <= z { (x, z) } else { (z, x) };
        if y <= lo {
            return lo;
        }
        if y >= hi {
            return hi;
        }
        let i = self.xs.partition_point(|&v| v < y);
        let above = self.xs.get(i).copied().filter(|&v| v <= hi).unwrap_or(hi);
        let below = i
            .checked_sub(1)
            .and_then(|j| self.xs.get(j).copied())
            .filter(|&v| v >= lo)
            .unwrap_or(lo);
        if y - below <= above - y {
            below
        } else {
            above
        }
    }
}

impl Betweenness<f64> for OrderBetweenness {
    fn kind(&self) -> BetweennessKind {
        BetweennessKind::Order
    }
    fn sample(&self, x: &f64, z: &f64, _n: usize) -> Vec<f64> {
        self.slice(*x, *z)
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn distance_to_segment<M: MetricSpace<Point = f64>>(&self, space: &M, y: &f64, x: &f64, z: &f64) -> f64 {
        space.dist(y, &self.nearest(*y, *x, *z))
    }
}

/// One-dimensional vectors, for use alongside `R^d` paths.
impl Betweenness<Vec<f64>> for OrderBetweenness {
    fn kind(&self) -> BetweennessKind {
        BetweennessKind::Order
    }
    fn sample(&self, x: &Vec<f64>, z: &Vec<f64>, _n: usize) -> Vec<Vec<f64>> {
        debug_assert!(x.len() == 1 && z.len() == 1);
        self.slice(x[0], z[0]).into_iter().map(|v| vec![v]).collect()
    }
    fn is_exact(&self) -> bool {
        true
    }
}

/// The order segment `<x, z>` of `X`, which must contain both endpoints.
pub fn order_segment(x: f64, z: f64, space: &OrderBetweenness) -> Result<Segment<f64>> {
    if !space.contains_point(x) || !space.contains_point(z) {
        return Err(Error::NotInSpace);
    }
    Ok(space.segment(&x, &z))
}

type InterpFn<P> = dyn Fn(&P, &P, f64) -> P + Send + Sync;

/// A betweenness generated by an interpolation function
/// `phi(x, z, p)` with `phi(x, z, 0) = x` and `phi(x, z, 1) = z`:
/// `<x, z> = {phi(x, z, p) : p in [0, 1]}`.
///
/// Distances to segments are computed from a sample refined by a golden
/// section search, so they are approximate.
#[derive(Clone)]
pub struct Interpolation<P> {
    name: String,
    f: Arc<InterpFn<P>>,
}

impl<P> fmt::Debug for Interpolation<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Interpolation").field("name", &self.name).finish()
    }
}

impl<P> Interpolation<P> {
    pub fn new(name: impl Into<String>, f: impl Fn(&P, &P, f64) -> P + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: &P, z: &P, p: f64) -> P {
        (self.f)(x, z, p)
    }
}

impl<P: Clone + PartialEq> Interpolation<P> {
    /// The sampled segment `<x, z>`, after checking that the function
    /// reproduces both endpoints within `tol`.
    pub fn checked_segment<M: MetricSpace<Point = P>>(
        &self,
        space: &M,
        x: &P,
        z: &P,
        n: usize,
        tol: f64,
    ) -> Result<Segment<P>> {
        let e = space.dist(&self.eval(x, z, 0.0), x).max(space.dist(&self.eval(x, z, 1.0), z));
        if !(e <= tol) {
            return Err(Error::EndpointMismatch(e));
        }
        Ok(Segment {
            start: x.clone(),
            end: z.clone(),
            points: self.sample(x, z, n),
            exact: false,
        })
    }
}

impl<P: Clone + PartialEq> Betweenness<P> for Interpolation<P> {
    fn kind(&self) -> BetweennessKind {
        BetweennessKind::Interpolation
    }
    fn sample(&self, x: &P, z: &P, n: usize) -> Vec<P> {
        let n = n.max(2);
        (0..n)
            .map(|i| match i {
                0 => x.clone(),
                i if i == n - 1 => z.clone(),
                i => self.eval(x, z, i as f64 / (n - 1) as f64),
            })
            .collect()
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn distance_to_segment<M: MetricSpace<Point = P>>(&self, space: &M, y: &P, x: &P, z: &P) -> f64 {
        let n = N_SEG;
        let at = |p: f64| space.dist(y, &self.eval(x, z, p));
        let mut best = (f64::INFINITY, 0usize);
        for i in 0..n {
            let p = i as f64 / (n - 1) as f64;
            let d = if i == 0 {
                space.dist(y, x)
            } else if i == n - 1 {
                space.dist(y, z)
            } else {
                at(p)
            };
            if d < best.0 {
                best = (d, i);
            }
        }
        let h = 1.0 / (n - 1) as f64;
        let (mut a, mut b) = (
            (best.1 as f64 - 1.0).max(0.0) * h,
            (best.1 as f64 + 1.0).min((n - 1) as f64) * h,
        );
        let g = 0.5 * (libm::sqrt(5.0) - 1.0);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let (mut fc, mut fd) = (at(c), at(d));
        for _ in 0..80 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = at(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = at(d);
            }
        }
        best.0.min(fc).min(fd)
    }
}

/// Which betweenness property failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    /// `<x, z> = <z, x>`.
    Symmetry,
    /// `x` lies in `<x, z>`.
    ContainsEndpoint,
    /// `<x, y>` and `<y, z>` meet only in `y`.
    Intersection,
    /// `<x, y>` and `<y, z>` cover `<x, z>`.
    Union,
    /// `<x, x> = {x}`.
    Degenerate,
    /// `<x, y>` is contained in `<x, z>`.
    Monotone,
    /// `x` in `<y, z>` and `y` in `<x, z>` force `x = y`.
    Antisymmetry,
    /// `y, y'` in `<x, z>` and `y'` in `<x, y>` give `y` in `<y', z>`.
    Transfer,
    /// The segment order is not total on the sample.
    OrderTotal,
    /// The two defining conditions of the segment order disagree.
    OrderEquivalence,
    /// The segment sample is not listed in segment order.
    SampleOrder,
}

impl AxiomKind {
    /// The axiom number, counting the four axioms first and the derived
    /// properties after them. Order checks have no number.
    pub fn number(self) -> Option<u8> {
        Some(match self {
            AxiomKind::Symmetry => 1,
            AxiomKind::ContainsEndpoint => 2,
            AxiomKind::Intersection => 3,
            AxiomKind::Union => 4,
            AxiomKind::Degenerate => 5,
            AxiomKind::Monotone => 6,
            AxiomKind::Antisymmetry => 7,
            AxiomKind::Transfer => 8,
            _ => return None,
        })
    }
}

/// A failed check together with the points that witness it.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation<P> {
    pub axiom: AxiomKind,
    /// Index of the input triple that produced the witness.
    pub triple: usize,
    pub witness: Vec<P>,
}

/// Result of [`check_axioms`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport<P> {
    pub violations: Vec<AxiomViolation<P>>,
    pub triples_checked: usize,
}

impl<P> AxiomReport<P> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: AxiomKind) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

/// Maximum number of segment sample points used for the pairwise checks.
const PAIR_SAMPLES: usize = 9;

/// Checks the betweenness axioms, the derived properties and the segment
/// order on the given triples `(x, y, z)`.
///
/// Membership means "distance to the segment at most `tol`"; use `tol = 0`
/// for exact kinds. Set equalities are checked on segment samples in both
/// directions. Since random `y` rarely lies on `<x, z>`, every triple is
/// also checked with `y` replaced by an interior sample of `<x, z>`.
pub fn check_axioms<P, B, M>(b: &B, space: &M, triples: &[(P, P, P)], tol: f64) -> AxiomReport<P>
where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let mut out = Vec::new();
    for (idx, (x, y, z)) in triples.iter().enumerate() {
        check_triple(b, space, idx, x, y, z, tol, &mut out);
        let xz = b.sample(x, z, N_SEG);
        if xz.len() > 2 {
            let mid = xz[xz.len() / 2].clone();
            if mid != *y {
                check_triple(b, space, idx, x, &mid, z, tol, &mut out);
            }
        }
    }
    AxiomReport { violations: out, triples_checked: triples.len() }
}

#[allow(clippy::too_many_arguments)]
fn check_triple<P, B, M>(
    b: &B,
    space: &M,
    idx: usize,
    x: &P,
    y: &P,
    z: &P,
    tol: f64,
    out: &mut Vec<AxiomViolation<P>>,
) where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let mem = |w: &P, a: &P, c: &P| b.contains(space, w, a, c, tol);
    let mut flag = |axiom: AxiomKind, witness: Vec<P>| {
        out.push(AxiomViolation { axiom, triple: idx, witness });
    };
    let xz = b.sample(x, z, N_SEG);
    let zx = b.sample(z, x, N_SEG);

    // (i): both samples lie in the other orientation.
    if let Some(w) = xz.iter().find(|w| !mem(w, z, x)).or_else(|| zx.iter().find(|w| !mem(w, x, z))) {
        flag(AxiomKind::Symmetry, vec![x.clone(), z.clone(), w.clone()]);
    }
    // (ii)
    if !mem(x, x, z) {
        flag(AxiomKind::ContainsEndpoint, vec![x.clone(), z.clone()]);
    }
    // (v)
    if let Some(w) = b.sample(x, x, N_SEG).iter().find(|w| space.dist(w, x) > tol) {
        flag(AxiomKind::Degenerate, vec![x.clone(), w.clone()]);
    }

    let y_between = mem(y, x, z);
    if y_between {
        let xy = b.sample(x, y, N_SEG);
        let yz = b.sample(y, z, N_SEG);
        // (iii): y is in both halves, and nothing else is shared.
        let shared = xy
            .iter()
            .find(|w| mem(w, y, z) && space.dist(w, y) > tol)
            .or_else(|| yz.iter().find(|w| mem(w, x, y) && space.dist(w, y) > tol));
        if !mem(y, x, y) || !mem(y, y, z) || shared.is_some() {
            let mut wit = vec![x.clone(), y.clone(), z.clone()];
            wit.extend(shared.cloned());
            flag(AxiomKind::Intersection, wit);
        }
        // (iv): the halves cover the segment.
        if let Some(w) = xz.iter().find(|w| !mem(w, x, y) && !mem(w, y, z)) {
            flag(AxiomKind::Union, vec![x.clone(), y.clone(), z.clone(), w.clone()]);
        }
        // (vi), and the other half of (iv).
        if let Some(w) = xy.iter().find(|w| !mem(w, x, z)) {
            flag(AxiomKind::Monotone, vec![x.clone(), y.clone(), z.clone(), w.clone()]);
        }
        if let Some(w) = yz.iter().find(|w| !mem(w, x, z)) {
            flag(AxiomKind::Union, vec![x.clone(), y.clone(), z.clone(), w.clone()]);
        }
        // (vii)
        if mem(x, y, z) && space.dist(x, y) > tol {
            flag(AxiomKind::Antisymmetry, vec![x.clone(), y.clone(), z.clone()]);
        }
    }

    // Pairwise checks on a thinned sample of <x, z>, plus y if it belongs.
    let step = (xz.len() + PAIR_SAMPLES - 2) / (PAIR_SAMPLES - 1);
    let mut pts: Vec<P> = xz.iter().step_by(step.max(1)).cloned().collect();
    if pts.last() != xz.last() {
        pts.extend(xz.last().cloned());
    }
    if y_between {
        pts.push(y.clone());
    }
    let le = |u: &P, v: &P| mem(u, x, v);
    for (i, u) in pts.iter().enumerate() {
        for v in pts.iter().skip(i + 1) {
            let same = space.dist(u, v) <= tol;
            let (uv, vu) = (le(u, v), le(v, u));
            if !same && uv == vu {
                flag(AxiomKind::OrderTotal, vec![x.clone(), z.clone(), u.clone(), v.clone()]);
            }
            // y <= y' via <x, y'> agrees with y' in <y, z>.
            if uv != mem(v, u, z) || vu != mem(u, v, z) {
                flag(AxiomKind::OrderEquivalence, vec![x.clone(), z.clone(), u.clone(), v.clone()]);
            }
            // (viii) in both orientations.
            if (vu && !mem(u, v, z)) || (uv && !mem(v, u, z)) {
                flag(AxiomKind::Transfer, vec![x.clone(), z.clone(), u.clone(), v.clone()]);
            }
        }
    }
    // The sample itself must be listed in order.
    for w in pts.windows(2).take(pts.len().saturating_sub(if y_between { 2 } else { 1 })) {
        if space.dist(&w[0], &w[1]) > tol && !le(&w[0], &w[1]) {
            flag(AxiomKind::SampleOrder, vec![x.clone(), z.clone(), w[0].clone(), w[1].clone()]);
        }
    }
}
