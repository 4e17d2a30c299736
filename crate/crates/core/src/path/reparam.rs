//! Distances between cadlag parametrisations of ordered sets.
//!
//! A step function `gamma` on `[0, 1]` with distinct values parametrises
//! the chain of its values in order of appearance. The distance
//! `inf over lambda of sup_t d(gamma1(t), gamma2(lambda(t)))` over
//! increasing bijections `lambda` is `d_tot` of the two chains; over all
//! bijections it is their Hausdorff distance.

use alloc::vec::Vec;

use super::Path;
use crate::metric::MetricSpace;
use crate::{Error, Result};

/// Which reparametrisations are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReparamMode {
    /// All bijections of `[0, 1]`.
    Lambda,
    /// Increasing bijections of `[0, 1]`.
    LambdaPlus,
}

fn check_curve<P: Clone + PartialEq>(gamma: &Path<P>) -> Result<()> {
    if gamma.domain().pieces() != [(0.0, 1.0)] {
        return Err(Error::DomainMismatch);
    }
    if !gamma.fill().is_step() {
        return Err(Error::InvalidPath("curves must be step functions".into()));
    }
    Ok(())
}

/// The values of a step curve in order of appearance, with repeats
/// merged.
pub fn value_chain<P: Clone + PartialEq>(gamma: &Path<P>) -> Vec<P> {
    let mut out: Vec<P> = Vec::new();
    let vals = gamma.initial().into_iter().chain(gamma.knots().iter().flat_map(|k| [&k.left, &k.right]));
    for v in vals {
        if out.last() != Some(v) {
            out.push(v.clone());
        }
    }
    out
}

/// `inf over lambda of sup_t d(gamma1(t), gamma2(lambda(t)))` for step
/// curves on `[0, 1]`, with both curves read at the grid `k / grid`.
///
/// In the increasing mode, the smallest `eps` is found for which a
/// monotone staircase through the grid cells with distance at most `eps`
/// connects `(0, 0)` to `(grid, grid)`; feasibility is a reachability
/// sweep and `eps` is bisected over the sorted cell distances. Without
/// monotonicity the grid values may be matched freely and the value is
/// the Hausdorff distance of the sampled values. The result is exact once
/// every step of both curves contains a grid point.
pub fn reparam_dist<P, M>(gamma1: &Path<P>, gamma2: &Path<P>, space: &M, mode: ReparamMode, grid: usize) -> Result<f64>
where
    P: Clone + PartialEq,
    M: MetricSpace<Point = P>,
{
    check_curve(gamma1)?;
    check_curve(gamma2)?;
    if grid == 0 {
        return Err(Error::OutOfRange("grid must be positive".into()));
    }
    let read = |g: &Path<P>| -> Vec<P> {
        (0..=grid)
            .map(|k| g.right_value(k as f64 / grid as f64).expect("grid lies in [0, 1]"))
            .collect()
    };
    let (a, b) = (read(gamma1), read(gamma2));
    let n = a.len();
    let mut cells = Vec::with_capacity(n * n);
    for x in &a {
        for y in &b {
            cells.push(space.dist(x, y));
        }
    }
    match mode {
        ReparamMode::Lambda => {
            let row = (0..n).map(|i| (0..n).map(|j| cells[i * n + j]).fold(f64::INFINITY, f64::min));
            let col = (0..n).map(|j| (0..n).map(|i| cells[i * n + j]).fold(f64::INFINITY, f64::min));
            Ok(row.chain(col).fold(0.0, f64::max))
        }
        ReparamMode::LambdaPlus => {
            let mut levels = cells.clone();
            levels.sort_by(f64::total_cmp);
            levels.dedup();
            let (mut lo, mut hi) = (0, levels.len() - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if staircase_exists(&cells, n, levels[mid]) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Ok(levels[lo])
        }
    }
}

/// Whether cells with value at most `eps` contain a path from the first
/// to the last cell that moves right, down or diagonally.
fn staircase_exists(cells: &[f64], n: usize, eps: f64) -> bool {
    let mut prev = alloc::vec![false; n];
    let mut cur = alloc::vec![false; n];
    for i in 0..n {
        for j in 0..n {
            let open = cells[i * n + j] <= eps;
            cur[j] = open
                && ((i == 0 && j == 0)
                    || (i > 0 && prev[j])
                    || (j > 0 && cur[j - 1])
                    || (i > 0 && j > 0 && prev[j - 1]));
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::RealLine;
    use crate::ordered::{d_tot, hausdorff, OrderedPointSet};
    use crate::path::Domain;
    use alloc::vec;
    use proptest::prelude::*;

    fn curve(initial: f64, jumps: &[(f64, f64)]) -> Path<f64> {
        Path::step(Domain::interval(0.0, 1.0).unwrap(), initial, jumps).unwrap()
    }

    #[test]
    fn identical_curves() {
        let g = curve(0.0, &[(0.3, 2.0), (0.6, -1.0)]);
        for mode in [ReparamMode::Lambda, ReparamMode::LambdaPlus] {
            assert_eq!(reparam_dist(&g, &g, &RealLine, mode, 64).unwrap(), 0.0);
        }
    }

    #[test]
    fn warping_a_jump_is_free() {
        let g1 = curve(0.0, &[(0.5, 1.0)]);
        let g2 = curve(0.0, &[(0.625, 1.0)]);
        assert_eq!(reparam_dist(&g1, &g2, &RealLine, ReparamMode::LambdaPlus, 256).unwrap(), 0.0);
        assert_eq!(value_chain(&g1), vec![0.0, 1.0]);
    }

    #[test]
    fn order_matters_only_for_lambda_plus() {
        let g1 = curve(0.0, &[(0.5, 1.0)]);
        let g2 = curve(1.0, &[(0.5, 0.0)]);
        assert_eq!(reparam_dist(&g1, &g2, &RealLine, ReparamMode::Lambda, 16).unwrap(), 0.0);
        assert_eq!(reparam_dist(&g1, &g2, &RealLine, ReparamMode::LambdaPlus, 16).unwrap(), 1.0);
    }

    #[test]
    fn rejects_other_domains() {
        let g = Path::step(Domain::interval(0.0, 2.0).unwrap(), 0.0, &[]).unwrap();
        assert_eq!(reparam_dist(&g, &g, &RealLine, ReparamMode::Lambda, 4), Err(Error::DomainMismatch));
    }

    fn arb_curve() -> impl Strategy<Value = Path<f64>> {
        (
            proptest::collection::btree_set(1u32..16, 0..5),
            proptest::collection::vec(-3.0f64..3.0, 6),
        )
            .prop_map(|(ts, vs)| {
                let jumps: Vec<(f64, f64)> = ts.iter().zip(&vs[1..]).map(|(&t, &v)| (t as f64 / 16.0, v)).collect();
                curve(vs[0], &jumps)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_set_distances(g1 in arb_curve(), g2 in arb_curve()) {
            let plus = reparam_dist(&g1, &g2, &RealLine, ReparamMode::LambdaPlus, 64).unwrap();
            let all = reparam_dist(&g1, &g2, &RealLine, ReparamMode::Lambda, 64).unwrap();
            prop_assert!(all <= plus);
            let (c1, c2) = (value_chain(&g1), value_chain(&g2));
            let (tot, _) = d_tot(&RealLine, &OrderedPointSet::chain(c1.clone()), &OrderedPointSet::chain(c2.clone())).unwrap();
            prop_assert_eq!(plus, tot);
            prop_assert_eq!(all, hausdorff(&RealLine, &c1, &c2).unwrap());
        }
    }
}
