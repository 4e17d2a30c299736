//! Finite ordered point sets and the ordered Hausdorff metrics.
//!
//! For a finite set `K` with a partial order, `K^<m>` is the set of weakly
//! increasing `m`-tuples of `K`. The metric `d^<m>` is the Hausdorff
//! distance between `K1^<m>` and `K2^<m>` under the coordinatewise maximum
//! of `d`. `d^<1>` is the plain Hausdorff distance and ignores the order,
//! `d_part = d^<2>`, and for total orders `d^<m>` increases to `d_tot`, the
//! smallest worst-case distance over monotone correspondences.
//!
//! Orders are stored explicitly as relations rather than inferred from
//! positions, since interesting examples have orders unrelated to where
//! the points sit.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::metric::{MetricSpace, RealLine};
use crate::{Error, Result};

/// Caps on exhaustive enumerations. Exceeding a cap is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of tuples [`k_m`] may produce per set.
    pub max_tuples: usize,
    /// Largest set size [`d_tot_bruteforce`] accepts on either side.
    pub max_bruteforce: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_tuples: 200_000, max_bruteforce: 6 }
    }
}

/// A finite set of points with a partial order `le`, where `le(i, j)`
/// means point `i` precedes or equals point `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedPointSet<P> {
    points: Vec<P>,
    le: Vec<bool>,
    total: bool,
}

impl<P> OrderedPointSet<P> {
    /// Builds a set from its points and the pairs `(i, j)` with `i <= j`.
    /// Reflexive pairs are added; the result must be transitive and
    /// antisymmetric.
    pub fn new(points: Vec<P>, pairs: &[(usize, usize)]) -> Result<Self> {
        let le = Self::relation(points.len(), pairs)?;
        let n = points.len();
        for i in 0..n {
            for j in 0..n {
                if !le[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if le[j * n + k] && !le[i * n + k] {
                        return Err(Error::InvalidOrder(alloc::format!(
                            "not transitive: {i} <= {j} <= {k} but not {i} <= {k}"
                        )));
                    }
                }
            }
        }
        Self::finish(points, le)
    }

    /// Builds a set from generating pairs, adding the transitive closure.
    pub fn with_closure(points: Vec<P>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut le = Self::relation(points.len(), pairs)?;
        let n = points.len();
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::finish(points, le)
    }

    /// A totally ordered set listed in increasing order.
    pub fn chain(points: Vec<P>) -> Self {
        let n = points.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                le[i * n + j] = true;
            }
        }
        Self { points, le, total: true }
    }

    fn relation(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<bool>> {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidOrder(alloc::format!(
                    "pair ({i}, {j}) refers to a missing point"
                )));
            }
            le[i * n + j] = true;
        }
        Ok(le)
    }

    fn finish(points: Vec<P>, le: Vec<bool>) -> Result<Self> {
        let n = points.len();
        let mut total = true;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (le[i * n + j], le[j * n + i]);
                if a && b {
                    return Err(Error::InvalidOrder(alloc::format!(
                        "not antisymmetric: {i} <= {j} and {j} <= {i}"
                    )));
                }
                total &= a || b;
            }
        }
        Ok(Self { points, le, total })
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.total
    }

    /// Whether point `i` precedes or equals point `j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.points.len() + j]
    }

    /// Whether point `i` strictly precedes point `j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// All pairs `(i, j)` with `i <= j`, including the reflexive ones.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.points.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.le(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Indices of the points in increasing order, for a total order.
    pub fn chain_order(&self) -> Result<Vec<usize>> {
        let n = self.points.len();
        if !self.total {
            for i in 0..n {
                for j in i + 1..n {
                    if !self.le(i, j) && !self.le(j, i) {
                        return Err(Error::NotTotal(i, j));
                    }
                }
            }
        }
        let mut idx: Vec<usize> = (0..n).collect();
        // In a total order the rank of a point is its number of predecessors.
        let rank = |i: usize| (0..n).filter(|&j| self.le(j, i)).count();
        idx.sort_by_key(|&i| rank(i));
        Ok(idx)
    }
}

impl<P: Clone> OrderedPointSet<P> {
    /// The points in increasing order, for a total order.
    pub fn to_chain(&self) -> Result<Vec<P>> {
        Ok(self.chain_order()?.into_iter().map(|i| self.points[i].clone()).collect())
    }
}

/// A relation between two finite sets, as index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pub pairs: Vec<(usize, usize)>,
    /// Whether the relation was built to be monotone.
    pub monotone: bool,
}

impl Correspondence {
    /// Every index of both sets appears in some pair.
    pub fn covers(&self, n1: usize, n2: usize) -> bool {
        let mut a = vec![false; n1];
        let mut b = vec![false; n2];
        for &(i, j) in &self.pairs {
            if i >= n1 || j >= n2 {
                return false;
            }
            a[i] = true;
            b[j] = true;
        }
        a.iter().all(|&x| x) && b.iter().all(|&x| x)
    }

    /// No two pairs `(x1, x2)`, `(y1, y2)` with `x1 < y1` and `y2 < x2`.
    pub fn is_monotone<P, Q>(&self, k1: &OrderedPointSet<P>, k2: &OrderedPointSet<Q>) -> bool {
        self.pairs.iter().all(|&(x1, x2)| {
            self.pairs
                .iter()
                .all(|&(y1, y2)| !(k1.lt(x1, y1) && k2.lt(y2, x2)))
        })
    }

    /// Largest distance between related points.
    pub fn cost<M: MetricSpace>(&self, space: &M, k1: &[M::Point], k2: &[M::Point]) -> f64 {
        self.pairs
            .iter()
            .map(|&(i, j)| space.dist(&k1[i], &k2[j]))
            .fold(0.0, f64::max)
    }
}

fn nonempty(n1: usize, n2: usize) -> Result<()> {
    if n1 == 0 || n2 == 0 {
        Err(Error::EmptySet)
    } else {
        Ok(())
    }
}

/// Hausdorff distance between index sets `0..n1` and `0..n2` under the
/// distance `d(i, j)`.
pub fn hausdorff_by(n1: usize, n2: usize, d: impl Fn(usize, usize) -> f64) -> Result<f64> {
    nonempty(n1, n2)?;
    let mut sup: f64 = 0.0;
    for i in 0..n1 {
        let mut best = f64::INFINITY;
        for j in 0..n2 {
            best = best.min(d(i, j));
            if best <= sup {
                break;
            }
        }
        sup = sup.max(best);
    }
    for j in 0..n2 {
        let mut best = f64::INFINITY;
        for i in 0..n1 {
            best = best.min(d(i, j));
            if best <= sup {
                break;
            }
        }
        sup = sup.max(best);
    }
    Ok(sup)
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff<M: MetricSpace>(space: &M, k1: &[M::Point], k2: &[M::Point]) -> Result<f64> {
    hausdorff_by(k1.len(), k2.len(), |i, j| space.dist(&k1[i], &k2[j]))
}

/// Hausdorff distance together with a correspondence attaining it: every
/// point is related to one of its nearest points in the other set.
pub fn hausdorff_via_correspondence<M: MetricSpace>(
    space: &M,
    k1: &[M::Point],
    k2: &[M::Point],
) -> Result<(f64, Correspondence)> {
    nonempty(k1.len(), k2.len())?;
    let mut pairs = Vec::with_capacity(k1.len() + k2.len());
    let mut value: f64 = 0.0;
    let nearest = |p: &M::Point, set: &[M::Point]| {
        let mut best = (f64::INFINITY, 0);
        for (j, q) in set.iter().enumerate() {
            let d = space.dist(p, q);
            if d < best.0 {
                best = (d, j);
            }
        }
        best
    };
    for (i, p) in k1.iter().enumerate() {
        let (d, j) = nearest(p, k2);
        value = value.max(d);
        pairs.push((i, j));
    }
    for (j, q) in k2.iter().enumerate() {
        let (d, i) = nearest(q, k1);
        value = value.max(d);
        if !pairs.contains(&(i, j)) {
            pairs.push((i, j));
        }
    }
    Ok((value, Correspondence { pairs, monotone: false }))
}

/// All weakly increasing `m`-tuples of `k`, as index tuples.
pub fn k_m<P>(k: &OrderedPointSet<P>, m: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    if m == 0 {
        return Err(Error::OutOfRange(String::from("m must be at least 1")));
    }
    let n = k.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec<P>(
        k: &OrderedPointSet<P>,
        m: usize,
        n: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if cur.len() == m {
            if out.len() == limit {
                return Err(Error::BudgetExceeded { needed: limit + 1, limit });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for i in 0..n {
            if cur.last().map_or(true, |&p| k.le(p, i)) {
                cur.push(i);
                rec(k, m, n, cur, out, limit)?;
                cur.pop();
            }
        }
        Ok(())
    }
    rec(k, m, n, &mut cur, &mut out, budget.max_tuples)?;
    Ok(out)
}

fn cross_matrix<M: MetricSpace>(space: &M, a: &[M::Point], b: &[M::Point]) -> Vec<f64> {
    let mut d = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            d.push(space.dist(p, q));
        }
    }
    d
}

/// `d^<m>`: Hausdorff distance between the sets of increasing `m`-tuples
/// under the coordinatewise maximum of `d`.
pub fn d_m<M: MetricSpace>(
    space: &M,
    k1: &OrderedPointSet<M::Point>,
    k2: &OrderedPointSet<M::Point>,
    m: usize,
    budget: &Budget,
) -> Result<f64> {
    nonempty(k1.len(), k2.len())?;
    let t1 = k_m(k1, m, budget)?;
    let t2 = k_m(k2, m, budget)?;
    let n2 = k2.len();
    let d = cross_matrix(space, k1.points(), k2.points());
    hausdorff_by(t1.len(), t2.len(), |a, b| {
        t1[a]
            .iter()
            .zip(&t2[b])
            .map(|(&i, &j)| d[i * n2 + j])
            .fold(0.0, f64::max)
    })
}

/// `d_part` between two chains given by the distance `d(i, j)` from the
/// `i`-th point of the first chain to the `j`-th point of the second.
///
/// Equals `d^<2>` of the chains. A pair `i <= i'` has a partner pair
/// `j <= j'` within `eps` iff the first column within `eps` of row `i`
/// does not come after the last column within `eps` of row `i'`. This
/// threshold test is linear in the matrix size and monotone in `eps`, so
/// the exact value, one of the matrix entries, is found by bisection on
/// the bit patterns of nonnegative floats.
pub fn d_part_by(n1: usize, n2: usize, d: impl Fn(usize, usize) -> f64) -> Result<f64> {
    nonempty(n1, n2)?;
    let mut mat = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            mat.push(d(i, j));
        }
    }
    let within = |eps: f64| {
        pairs_within(n1, n2, |i, j| mat[i * n2 + j], eps) && pairs_within(n2, n1, |j, i| mat[i * n2 + j], eps)
    };
    let floor = hausdorff_by(n1, n2, |i, j| mat[i * n2 + j])?;
    if within(floor) {
        return Ok(floor);
    }
    let top = mat.iter().copied().fold(floor, f64::max);
    let (mut lo, mut hi) = (floor.to_bits(), top.to_bits());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if within(f64::from_bits(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(f64::from_bits(hi))
}

/// Whether every increasing pair of rows has an increasing pair of
/// columns within `eps`.
fn pairs_within(rows: usize, cols: usize, d: impl Fn(usize, usize) -> f64, eps: f64) -> bool {
    let mut reach = 0;
    for i in 0..rows {
        let Some(first) = (0..cols).find(|&j| d(i, j) <= eps) else {
            return false;
        };
        let last = (first..cols).rev().find(|&j| d(i, j) <= eps).unwrap_or(first);
        reach = reach.max(first);
        if reach > last {
            return false;
        }
    }
    true
}

/// `d_part = d^<2>`. Totally ordered inputs use the chain algorithm of
/// [`d_part_by`]; partial orders go through [`d_m`].
pub fn d_part<M: MetricSpace>(
    space: &M,
    k1: &OrderedPointSet<M::Point>,
    k2: &OrderedPointSet<M::Point>,
    budget: &Budget,
) -> Result<f64> {
    nonempty(k1.len(), k2.len())?;
    if k1.is_total() && k2.is_total() {
        let (o1, o2) = (k1.chain_order()?, k2.chain_order()?);
        let (p1, p2) = (k1.points(), k2.points());
        return d_part_by(o1.len(), o2.len(), |i, j| space.dist(&p1[o1[i]], &p2[o2[j]]));
    }
    d_m(space, k1, k2, 2, budget)
}

const DIAG: u8 = 0;
const UP: u8 = 1;
const LEFT: u8 = 2;

/// `d_tot` between two chains given by the distance `d(i, j)`, with an
/// optimal monotone correspondence in chain indices.
///
/// Dynamic programming over the grid: `c(i, j)` is the best worst-case
/// cost of a monotone path from `(0, 0)` to `(i, j)` that advances `i`,
/// `j` or both at every step. Ties prefer advancing both.
pub fn d_tot_by(n1: usize, n2: usize, d: impl Fn(usize, usize) -> f64) -> Result<(f64, Vec<(usize, usize)>)> {
    nonempty(n1, n2)?;
    let mut choice = vec![DIAG; n1 * n2];
    let mut prev = vec![0.0f64; n2];
    let mut cur = vec![0.0; n2];
    for i in 0..n1 {
        for j in 0..n2 {
            let here = d(i, j);
            let (best, how) = if i == 0 && j == 0 {
                (0.0, DIAG)
            } else if i == 0 {
                (cur[j - 1], LEFT)
            } else if j == 0 {
                (prev[0], UP)
            } else {
                let mut b = (prev[j - 1], DIAG);
                if prev[j] < b.0 {
                    b = (prev[j], UP);
                }
                if cur[j - 1] < b.0 {
                    b = (cur[j - 1], LEFT);
                }
                b
            };
            cur[j] = best.max(here);
            choice[i * n2 + j] = how;
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    let value = prev[n2 - 1];
    let (mut i, mut j) = (n1 - 1, n2 - 1);
    let mut path = vec![(i, j)];
    while i > 0 || j > 0 {
        match choice[i * n2 + j] {
            DIAG => {
                i -= 1;
                j -= 1;
            }
            UP => i -= 1,
            _ => j -= 1,
        }
        path.push((i, j));
    }
    path.reverse();
    Ok((value, path))
}

/// `d_tot`: the smallest worst-case distance over monotone
/// correspondences, with a correspondence attaining it. Both orders must
/// be total.
pub fn d_tot<M: MetricSpace>(
    space: &M,
    k1: &OrderedPointSet<M::Point>,
    k2: &OrderedPointSet<M::Point>,
) -> Result<(f64, Correspondence)> {
    nonempty(k1.len(), k2.len())?;
    let (o1, o2) = (k1.chain_order()?, k2.chain_order()?);
    let (p1, p2) = (k1.points(), k2.points());
    let (value, path) = d_tot_by(o1.len(), o2.len(), |i, j| space.dist(&p1[o1[i]], &p2[o2[j]]))?;
    let pairs = path.into_iter().map(|(i, j)| (o1[i], o2[j])).collect();
    Ok((value, Correspondence { pairs, monotone: true }))
}

/// `d_tot` by exhaustive search over monotone correspondences, as an
/// independent check on [`d_tot`]. Each point of `k1` is related to a
/// nonempty subset of `k2`; subsets are pruned when they break
/// monotonicity or cannot beat the best value found so far.
pub fn d_tot_bruteforce<M: MetricSpace>(
    space: &M,
    k1: &OrderedPointSet<M::Point>,
    k2: &OrderedPointSet<M::Point>,
    budget: &Budget,
) -> Result<f64> {
    let (n1, n2) = (k1.len(), k2.len());
    nonempty(n1, n2)?;
    let cap = budget.max_bruteforce.min(16);
    if n1 > cap || n2 > cap {
        return Err(Error::BudgetExceeded { needed: n1.max(n2), limit: cap });
    }
    k1.chain_order()?;
    k2.chain_order()?;
    let d = cross_matrix(space, k1.points(), k2.points());
    // below[y] / above[y]: bitmasks of the elements of k2 strictly before
    // and strictly after y.
    let mut below = vec![0u32; n2];
    let mut above = vec![0u32; n2];
    for y in 0..n2 {
        for z in 0..n2 {
            if k2.lt(z, y) {
                below[y] |= 1 << z;
            }
            if k2.lt(y, z) {
                above[y] |= 1 << z;
            }
        }
    }
    let mut s = BruteForce {
        k1,
        n2,
        d: &d,
        below,
        above,
        after: vec![0; n1],
        before: vec![0; n1],
        best: f64::INFINITY,
    };
    s.search(0, 0.0, 0);
    Ok(s.best)
}

struct BruteForce<'a, P> {
    k1: &'a OrderedPointSet<P>,
    n2: usize,
    d: &'a [f64],
    below: Vec<u32>,
    above: Vec<u32>,
    /// after[x]: elements a point placed after x must not be related to.
    after: Vec<u32>,
    /// before[x]: elements a point placed before x must not be related to.
    before: Vec<u32>,
    best: f64,
}

impl<P> BruteForce<'_, P> {
    fn spread(set: u32, table: &[u32]) -> u32 {
        table
            .iter()
            .enumerate()
            .filter(|(y, _)| set & (1 << y) != 0)
            .fold(0, |m, (_, &t)| m | t)
    }

    fn search(&mut self, x: usize, cost: f64, covered: u32) {
        let n1 = self.k1.len();
        if x == n1 {
            if covered == (1u32 << self.n2) - 1 {
                self.best = self.best.min(cost);
            }
            return;
        }
        let mut forbidden = 0;
        for x2 in 0..x {
            if self.k1.lt(x2, x) {
                forbidden |= self.after[x2];
            } else if self.k1.lt(x, x2) {
                forbidden |= self.before[x2];
            }
        }
        for set in 1u32..(1 << self.n2) {
            if set & forbidden != 0 {
                continue;
            }
            let mut c = cost;
            for y in 0..self.n2 {
                if set & (1 << y) != 0 {
                    c = c.max(self.d[x * self.n2 + y]);
                }
            }
            if c >= self.best {
                continue;
            }
            self.after[x] = Self::spread(set, &self.below);
            self.before[x] = Self::spread(set, &self.above);
            self.search(x + 1, c, covered | set);
        }
    }
}

/// The mismatch modulus `m_eps(K)`: the largest `d(x1, y1) v d(x2, y2)`
/// over `x1 <= y1` and `y2 <= x2` in `K` with `d(x1, x2) v d(y1, y2) <= eps`.
/// It measures how far apart two order-reversed pairs can be while being
/// `eps`-close to each other. The supremum of nothing is 0.
pub fn mismatch_modulus<M: MetricSpace>(space: &M, k: &OrderedPointSet<M::Point>, eps: f64) -> f64 {
    mismatch_modulus_pair(space, k, k, eps)
}

/// The two-set mismatch modulus `m_eps(K1, K2)`, with `x1 <= y1` in `K1`
/// and `y2 <= x2` in `K2`.
pub fn mismatch_modulus_pair<M: MetricSpace>(
    space: &M,
    k1: &OrderedPointSet<M::Point>,
    k2: &OrderedPointSet<M::Point>,
    eps: f64,
) -> f64 {
    let (p1, p2) = (k1.points(), k2.points());
    let (n1, n2) = (p1.len(), p2.len());
    let cross = cross_matrix(space, p1, p2);
    let in1 = cross_matrix(space, p1, p1);
    let in2 = cross_matrix(space, p2, p2);
    let mut sup: f64 = 0.0;
    for x1 in 0..n1 {
        for y1 in 0..n1 {
            if !k1.le(x1, y1) {
                continue;
            }
            let a = in1[x1 * n1 + y1];
            for y2 in 0..n2 {
                if cross[y1 * n2 + y2] > eps {
                    continue;
                }
                for x2 in 0..n2 {
                    if k2.le(y2, x2) && cross[x1 * n2 + x2] <= eps {
                        sup = sup.max(a.max(in2[x2 * n2 + y2]));
                    }
                }
            }
        }
    }
    sup
}

/// Two chains in `[0, 1]` that are `eps`-close in `d^<m>` but at least
/// `1/2` apart in `d^<m+1>`.
///
/// Both have `m + 1` points that alternate between the ends of `[0, 1]`:
/// the first chain starts near 1, the second near 0. Requires
/// `0 < eps <= 1/4`. For `m = 1` this gives `{1 < 0}` and `{0 < 1}`.
pub fn gen_noop(m: usize, eps: f64) -> Result<(OrderedPointSet<f64>, OrderedPointSet<f64>)> {
    if m == 0 {
        return Err(Error::OutOfRange(String::from("m must be at least 1")));
    }
    if !(eps > 0.0 && eps <= 0.25) {
        return Err(Error::OutOfRange(alloc::format!("eps = {eps} is not in (0, 1/4]")));
    }
    let h = ((m + 2) / 2) as f64;
    let near = |k: usize| eps * (k / 2) as f64 / h;
    let mut a = Vec::with_capacity(m + 1);
    let mut b = Vec::with_capacity(m + 1);
    for k in 0..=m {
        // k counts from zero, so even k are the odd positions.
        if k % 2 == 0 {
            a.push(1.0 - near(k));
            b.push(near(k));
        } else {
            a.push(near(k - 1));
            b.push(1.0 - near(k - 1));
        }
    }
    Ok((OrderedPointSet::chain(a), OrderedPointSet::chain(b)))
}

/// A partially ordered family `K_n` converging to a chain `K` in `d^<m>`
/// but staying at least `1/2` away in `d^<m+1>`.
///
/// `K` has `m + 1` points alternating between `[0, 1/4]` and `[3/4, 1]`.
/// `K_n` has points `x_k^l` for `k != l`, where `x_k^l` sits within
/// `0.1 / n` of `x_k`, and `x_k^l <= x_k'^l'` iff `k <= k'` and `l = l'`.
/// Returns `(K_n, K)`.
pub fn gen_diftop(m: usize, n: usize) -> Result<(OrderedPointSet<f64>, OrderedPointSet<f64>)> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange(String::from("m and n must be at least 1")));
    }
    let q = (m + 2) as f64;
    let spacing = 0.05 * core::f64::consts::SQRT_2 / q;
    let base = |k: usize| {
        if k % 2 == 0 {
            1.0 - spacing * k as f64
        } else {
            spacing * k as f64
        }
    };
    let limit = OrderedPointSet::chain((0..=m).map(base).collect());
    let mut pts = Vec::new();
    let mut tags = Vec::new();
    for k in 0..=m {
        for l in 0..=m {
            if k == l {
                continue;
            }
            let off = 0.1 * (l + 1) as f64 / q / n as f64;
            let x = if k % 2 == 0 { base(k) - off } else { base(k) + off };
            pts.push(x);
            tags.push((k, l));
        }
    }
    let mut pairs = Vec::new();
    for (a, &(k, l)) in tags.iter().enumerate() {
        for (b, &(k2, l2)) in tags.iter().enumerate() {
            if k <= k2 && l == l2 {
                pairs.push((a, b));
            }
        }
    }
    Ok((OrderedPointSet::new(pts, &pairs)?, limit))
}

/// The sets `K_n = {0 < 1 < eps_n}`, a Cauchy sequence for `d_tot` with
/// no limit. `eps` must be strictly decreasing in `(0, 1)`.
pub fn gen_noncompl(eps: &[f64]) -> Result<Vec<OrderedPointSet<f64>>> {
    for w in eps.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::OutOfRange(String::from("eps must be strictly decreasing")));
        }
    }
    eps.iter()
        .map(|&e| {
            if !(e > 0.0 && e < 1.0) {
                return Err(Error::OutOfRange(alloc::format!("eps = {e} is not in (0, 1)")));
            }
            Ok(OrderedPointSet::chain(vec![0.0, 1.0, e]))
        })
        .collect()
}

/// Convenience: `d^<m>` on the real line.
pub fn d_m_real(k1: &OrderedPointSet<f64>, k2: &OrderedPointSet<f64>, m: usize) -> Result<f64> {
    d_m(&RealLine, k1, k2, m, &Budget::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Euclidean;
    use proptest::prelude::*;

    fn chain(v: &[f64]) -> OrderedPointSet<f64> {
        OrderedPointSet::chain(v.to_vec())
    }

    #[test]
    fn order_validation() {
        assert!(OrderedPointSet::new(vec![0.0, 1.0, 2.0], &[(0, 1), (1, 2)]).is_err());
        let k = OrderedPointSet::with_closure(vec![0.0, 1.0, 2.0], &[(0, 1), (1, 2)]).unwrap();
        assert!(k.is_total() && k.le(0, 2));
        assert!(OrderedPointSet::new(vec![0.0, 1.0], &[(0, 1), (1, 0)]).is_err());
        assert!(OrderedPointSet::new(vec![0.0], &[(0, 3)]).is_err());
        let p = OrderedPointSet::new(vec![0.0, 1.0], &[]).unwrap();
        assert!(!p.is_total());
        assert_eq!(p.chain_order(), Err(Error::NotTotal(0, 1)));
        let k = OrderedPointSet::new(vec![5.0, 3.0, 4.0], &[(1, 2), (2, 0), (1, 0)]).unwrap();
        assert_eq!(k.to_chain().unwrap(), vec![3.0, 4.0, 5.0]);
        assert_eq!(k.order_pairs().len(), 6);
    }

    #[test]
    fn hausdorff_examples() {
        assert_eq!(hausdorff(&RealLine, &[0.0], &[1.0]).unwrap(), 1.0);
        assert_eq!(hausdorff(&RealLine, &[0.0, 1.0], &[0.0, 0.4]).unwrap(), 0.6);
        assert_eq!(hausdorff(&RealLine, &[0.3, 2.0], &[2.0, 0.3]).unwrap(), 0.0);
        assert_eq!(hausdorff(&RealLine, &[], &[1.0]), Err(Error::EmptySet));
    }

    #[test]
    fn hausdorff_witness_examples() {
        let (v, r) = hausdorff_via_correspondence(&RealLine, &[0.0], &[1.0]).unwrap();
        assert_eq!((v, r.pairs), (1.0, vec![(0, 0)]));
        let k1 = [0.0, 1.0];
        let k2 = [0.0, 0.4];
        let (v, r) = hausdorff_via_correspondence(&RealLine, &k1, &k2).unwrap();
        assert_eq!(v, 0.6);
        assert!(r.pairs.contains(&(1, 1)));
        assert!(r.covers(2, 2));
        assert_eq!(r.cost(&RealLine, &k1, &k2), v);
        let (v, r) = hausdorff_via_correspondence(&RealLine, &k1, &k1).unwrap();
        assert_eq!((v, r.pairs), (0.0, vec![(0, 0), (1, 1)]));
    }

    #[test]
    fn chain_tuples() {
        let b = Budget::default();
        assert_eq!(k_m(&chain(&[0.0, 1.0]), 2, &b).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        let anti = OrderedPointSet::new(vec![0.0, 1.0], &[]).unwrap();
        assert_eq!(k_m(&anti, 2, &b).unwrap(), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(k_m(&chain(&[3.0, 1.0, 2.0]), 1, &b).unwrap().len(), 3);
        let small = Budget { max_tuples: 5, ..b };
        assert!(matches!(k_m(&chain(&[0.0, 1.0, 2.0]), 2, &small), Err(Error::BudgetExceeded { .. })));
        assert!(k_m(&chain(&[0.0]), 0, &b).is_err());
    }

    #[test]
    fn noop_m1_values() {
        let (k1, k2) = gen_noop(1, 0.25).unwrap();
        assert_eq!(k1.points(), &[1.0, 0.0]);
        assert_eq!(k2.points(), &[0.0, 1.0]);
        assert_eq!(d_m_real(&k1, &k2, 1).unwrap(), 0.0);
        assert_eq!(d_m_real(&k1, &k2, 2).unwrap(), 1.0);
        assert_eq!(d_part(&RealLine, &k1, &k2, &Budget::default()).unwrap(), 1.0);
        assert_eq!(d_tot(&RealLine, &k1, &k2).unwrap().0, 1.0);
        assert_eq!(d_tot_bruteforce(&RealLine, &k1, &k2, &Budget::default()).unwrap(), 1.0);
        assert_eq!(mismatch_modulus_pair(&RealLine, &k1, &k2, 0.0), 1.0);
        assert!(gen_noop(1, 0.5).is_err());
        assert!(gen_noop(1, 0.0).is_err());
    }

    #[test]
    fn identity_and_singletons() {
        let b = Budget::default();
        let k = chain(&[0.2, 0.9, 0.5]);
        for m in 1..=4 {
            assert_eq!(d_m(&RealLine, &k, &k, m, &b).unwrap(), 0.0);
            assert_eq!(d_m_real(&chain(&[1.0]), &chain(&[1.25]), m).unwrap(), 0.25);
        }
        let (v, r) = d_tot(&RealLine, &k, &k).unwrap();
        assert_eq!((v, r.pairs), (0.0, vec![(0, 0), (1, 1), (2, 2)]));
        assert_eq!(d_part(&RealLine, &chain(&[1.0]), &chain(&[1.25]), &b).unwrap(), 0.25);
    }

    #[test]
    fn d_tot_examples() {
        let b = Budget::default();
        let (k1, k2) = (chain(&[0.0, 1.0]), chain(&[0.1, 0.9]));
        let (v, r) = d_tot(&RealLine, &k1, &k2).unwrap();
        assert!((v - 0.1).abs() < 1e-15);
        assert_eq!(r.pairs, vec![(0, 0), (1, 1)]);
        assert_eq!(d_tot_bruteforce(&RealLine, &k1, &k2, &b).unwrap(), v);
        assert_eq!(d_tot_bruteforce(&RealLine, &chain(&[0.0]), &chain(&[5.0]), &b).unwrap(), 5.0);
        let k3 = chain(&[0.0, 0.5, 1.0]);
        assert_eq!(d_tot_bruteforce(&RealLine, &k3, &k3, &b).unwrap(), 0.0);
        let big = chain(&[0.0; 7]);
        assert!(matches!(d_tot_bruteforce(&RealLine, &big, &k3, &b), Err(Error::BudgetExceeded { .. })));
        let p = OrderedPointSet::new(vec![0.0, 1.0], &[]).unwrap();
        assert_eq!(d_tot(&RealLine, &p, &k1).unwrap_err(), Error::NotTotal(0, 1));
    }

    #[test]
    fn large_m_can_stay_below_d_tot() {
        // The tuple (0, .., 0, a, .., a) is matched by the constant tuple at
        // b, and (b, .., b, 0, .., 0) by the constant tuple at 0, so every
        // d^<m> is at most b. A monotone correspondence must still pair a
        // with 0 since pairing a with b forces 0 with 0, a reversal.
        let (a, b) = (1.568, 1.435);
        let k1 = chain(&[0.0, a]);
        let k2 = chain(&[b, 0.0]);
        let t = d_tot(&RealLine, &k1, &k2).unwrap().0;
        assert_eq!(t, a);
        assert_eq!(d_tot_bruteforce(&RealLine, &k1, &k2, &Budget::default()).unwrap(), a);
        for m in 1..=8 {
            assert!(d_m_real(&k1, &k2, m).unwrap() <= b);
        }
        assert_eq!(d_m_real(&k1, &k2, 8).unwrap(), b);
    }

    #[test]
    fn mismatch_examples() {
        let k = chain(&[0.0, 1.0, 0.1]);
        assert_eq!(mismatch_modulus(&RealLine, &k, 0.1), 1.0);
        assert_eq!(mismatch_modulus(&RealLine, &k, 0.0), 0.0);
        assert_eq!(mismatch_modulus(&RealLine, &chain(&[4.0]), 10.0), 0.0);
        assert_eq!(mismatch_modulus_pair(&RealLine, &k, &k, 0.1), mismatch_modulus(&RealLine, &k, 0.1));
        let far = chain(&[10.0, 11.0]);
        assert_eq!(mismatch_modulus_pair(&RealLine, &k, &far, 1.0), 0.0);
    }

    #[test]
    fn diftop_orders_are_valid() {
        for m in 1..=3 {
            let (kn, k) = gen_diftop(m, 10).unwrap();
            assert_eq!(kn.len(), (m + 1) * m);
            assert!(k.is_total());
            let mut v = kn.points().to_vec();
            v.sort_by(f64::total_cmp);
            v.dedup();
            assert_eq!(v.len(), kn.len());
            assert!(v.iter().all(|x| (0.0..=1.0).contains(x)));
        }
        let (kn, k) = gen_diftop(2, 10).unwrap();
        assert!(d_m_real(&kn, &k, 3).unwrap() >= 0.5);
    }

    #[test]
    fn noncompl_sequence() {
        let eps: Vec<f64> = (2..=8).map(|n| 1.0 / n as f64).collect();
        let ks = gen_noncompl(&eps).unwrap();
        let (v, _) = d_tot(&RealLine, &ks[0], &ks[2]).unwrap();
        assert!(v <= 0.25 + 1e-12);
        for (k, e) in ks.iter().zip(&eps) {
            assert!(mismatch_modulus(&RealLine, k, *e) >= 1.0 - e);
        }
        assert!(gen_noncompl(&[0.5, 0.5]).is_err());
        assert!(gen_noncompl(&[1.0]).is_err());
    }

    fn arb_chain(max: usize) -> impl Strategy<Value = OrderedPointSet<f64>> {
        proptest::collection::vec(-2.0f64..2.0, 1..=max).prop_map(OrderedPointSet::chain)
    }

    fn arb_poset(max: usize) -> impl Strategy<Value = OrderedPointSet<f64>> {
        (1..=max)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(-2.0f64..2.0, n),
                    proptest::collection::vec(any::<bool>(), n * n),
                )
            })
            .prop_map(|(pts, bits)| {
                // Orient random edges forward to keep the relation acyclic.
                let n = pts.len();
                let pairs: Vec<_> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| bits[i * n + j])
                    .collect();
                OrderedPointSet::with_closure(pts, &pairs).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn metric_chain(k1 in arb_chain(7), k2 in arb_chain(7)) {
            let b = Budget::default();
            let h = hausdorff(&RealLine, k1.points(), k2.points()).unwrap();
            let p = d_part(&RealLine, &k1, &k2, &b).unwrap();
            let (t, r) = d_tot(&RealLine, &k1, &k2).unwrap();
            prop_assert!(h <= p && p <= t);
            prop_assert_eq!(p, d_m(&RealLine, &k1, &k2, 2, &b).unwrap());
            prop_assert!(r.covers(k1.len(), k2.len()));
            prop_assert!(r.is_monotone(&k1, &k2));
            prop_assert_eq!(r.cost(&RealLine, k1.points(), k2.points()), t);
        }

        #[test]
        fn dp_matches_bruteforce(k1 in arb_chain(5), k2 in arb_chain(5)) {
            let b = Budget::default();
            prop_assert_eq!(d_tot(&RealLine, &k1, &k2).unwrap().0, d_tot_bruteforce(&RealLine, &k1, &k2, &b).unwrap());
        }

        #[test]
        fn d_m_is_monotone(k1 in arb_poset(5), k2 in arb_poset(5)) {
            let b = Budget::default();
            let v: Vec<f64> = (1..=4).map(|m| d_m(&RealLine, &k1, &k2, m, &b).unwrap()).collect();
            prop_assert!(v.windows(2).all(|w| w[0] <= w[1]), "{:?}", v);
        }

        #[test]
        fn d_m_is_symmetric(k1 in arb_poset(4), k2 in arb_poset(4), m in 1usize..4) {
            let b = Budget::default();
            prop_assert_eq!(d_m(&RealLine, &k1, &k2, m, &b).unwrap(), d_m(&RealLine, &k2, &k1, m, &b).unwrap());
        }

        #[test]
        fn d_m_never_exceeds_d_tot(k1 in arb_chain(4), k2 in arb_chain(4)) {
            let b = Budget::default();
            let t = d_tot(&RealLine, &k1, &k2).unwrap().0;
            for m in [1, 2, 3, k1.len() + k2.len()] {
                prop_assert!(d_m(&RealLine, &k1, &k2, m, &b).unwrap() <= t);
            }
        }

        #[test]
        fn mismatch_estimate(k1 in arb_chain(5), k2 in arb_chain(5)) {
            let b = Budget::default();
            let eps = d_m(&RealLine, &k1, &k2, 1, &b).unwrap();
            let bound = mismatch_modulus_pair(&RealLine, &k1, &k2, eps) + eps + 1e-12;
            for m in 1..=4 {
                prop_assert!(d_m(&RealLine, &k1, &k2, m, &b).unwrap() <= bound);
            }
        }

        #[test]
        fn euclidean_chain(pts1 in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
                           pts2 in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6)) {
            let k1 = OrderedPointSet::chain(pts1.into_iter().map(|(a, b)| vec![a, b]).collect());
            let k2 = OrderedPointSet::chain(pts2.into_iter().map(|(a, b)| vec![a, b]).collect());
            let h = hausdorff(&Euclidean, k1.points(), k2.points()).unwrap();
            let p = d_part(&Euclidean, &k1, &k2, &Budget::default()).unwrap();
            let t = d_tot(&Euclidean, &k1, &k2).unwrap().0;
            prop_assert!(h <= p && p <= t);
        }
    }
}
