//! Moduli of continuity of single paths.

use alloc::vec::Vec;

use super::{Fill, Path};
use crate::betweenness::Betweenness;
use crate::metric::MetricSpace;
use crate::{Error, Result};

/// Grid points per `delta` used where a path is interpolated between
/// knots.
const GRID_PER_DELTA: f64 = 16.0;
/// Cap on grid points per interval piece.
const GRID_CAP: usize = 4096;

/// A modulus value with the real times that attain it.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusValue {
    pub value: f64,
    /// Times of the maximizing pair (`[t1, t2, t2]`) or triple.
    pub witness: Option<[f64; 3]>,
}

/// A maximal stretch of consecutive split times with one value.
struct Run<P> {
    first: f64,
    last: f64,
    value: P,
}

fn in_window(gap: f64, delta: f64) -> bool {
    gap <= delta * (1.0 + 1e-12)
}

/// Extra sample times on `[lo, hi]` for interpolated fills.
fn grid(lo: f64, hi: f64, delta: f64) -> impl Iterator<Item = f64> {
    let n = if hi > lo {
        (libm::ceil((hi - lo) * GRID_PER_DELTA / delta) as usize).clamp(1, GRID_CAP)
    } else {
        0
    };
    (1..n).map(move |k| lo + (hi - lo) * k as f64 / n as f64)
}

/// The split domain on `[-T, T]` as runs of equal values, in order.
fn runs<P: Clone + PartialEq>(path: &Path<P>, horizon: f64, delta: f64) -> Vec<Run<P>> {
    let mut out: Vec<Run<P>> = Vec::new();
    let mut push = |t: f64, v: P| match out.last_mut() {
        Some(r) if r.value == v => r.last = t,
        _ => out.push(Run { first: t, last: t, value: v }),
    };
    let knot_times: Vec<f64> = path.knots().iter().map(|k| k.t).collect();
    for &(a, b) in path.domain().pieces() {
        let (lo, hi) = (a.max(-horizon), b.min(horizon));
        if lo > hi {
            continue;
        }
        let mut times = Vec::from([lo, hi]);
        let from = knot_times.partition_point(|&t| t < lo);
        let to = knot_times.partition_point(|&t| t <= hi);
        times.extend_from_slice(&knot_times[from..to]);
        if !path.fill().is_step() {
            times.extend(grid(lo, hi, delta));
        }
        times.sort_by(f64::total_cmp);
        times.dedup();
        for t in times {
            let (l, r) = path.values_at(t).expect("times lie in the domain");
            push(t, l);
            push(t, r);
        }
    }
    out
}

/// Skorohod modulus on `[-T, T]`: the largest `d(pi(t2), <pi(t1), pi(t3)>)`
/// over split times `t1 <= t2 <= t3` of the domain whose real parts lie in
/// `[-T, T]` and satisfy `t3 - t1 <= delta`.
///
/// Exact for step paths: the value is constant on runs, so it suffices to
/// scan triples of runs, with `t1` the last time of the first run and `t3`
/// the first time of the last. Interpolated stretches are sampled with
/// mesh `delta / 16`, which makes the value a lower estimate there.
pub fn skorohod_modulus<P, B, M>(path: &Path<P>, b: &B, space: &M, horizon: f64, delta: f64) -> ModulusValue
where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let mut best = ModulusValue { value: 0.0, witness: None };
    if !(delta >= 0.0) || path.is_trivial() {
        return best;
    }
    let rs = runs(path, horizon, delta.max(f64::MIN_POSITIVE));
    for i in 0..rs.len() {
        let mut k = i + 2;
        while k < rs.len() && in_window(rs[k].first - rs[i].last, delta) {
            for j in i + 1..k {
                let d = b.distance_to_segment(space, &rs[j].value, &rs[i].value, &rs[k].value);
                if d > best.value {
                    best = ModulusValue { value: d, witness: Some([rs[i].last, rs[j].first, rs[k].first]) };
                }
            }
            k += 1;
        }
    }
    best
}

/// Classic modulus on `[-T, T]`: the largest `d(pi(t1), pi(t2))` over domain
/// times in `[-T, T]` with `0 < t2 - t1 <= delta`. The path must not jump.
///
/// The supremum is taken over candidate times: piece ends, knots and
/// their shifts by `+-delta`. For step fills and linear interpolation in
/// a normed space this is exact, since the distance is then maximized at
/// a vertex of the region cut out by those lines. Other interpolations
/// additionally use a grid of mesh `delta / 16`.
pub fn modulus<P, M>(path: &Path<P>, space: &M, horizon: f64, delta: f64) -> Result<ModulusValue>
where
    P: Clone + PartialEq,
    M: MetricSpace<Point = P>,
{
    if let Some(t) = path.first_jump() {
        return Err(Error::HasJumps(t));
    }
    let mut best = ModulusValue { value: 0.0, witness: None };
    if !(delta > 0.0) || path.is_trivial() {
        return Ok(best);
    }
    let domain = path.domain();
    let admissible = |t: f64| t.abs() <= horizon && domain.contains(t);
    let mut base: Vec<f64> = Vec::new();
    for &(a, b) in domain.pieces() {
        let (lo, hi) = (a.max(-horizon), b.min(horizon));
        if lo <= hi {
            base.push(lo);
            base.push(hi);
            if matches!(path.fill(), Fill::Interpolated(_)) {
                base.extend(grid(lo, hi, delta));
            }
        }
    }
    base.extend(path.knots().iter().map(|k| k.t).filter(|&t| admissible(t)));
    let mut times = base.clone();
    for &c in &base {
        times.extend([c - delta, c + delta].into_iter().filter(|&t| admissible(t)));
    }
    times.sort_by(f64::total_cmp);
    times.dedup();
    let values: Vec<P> = times.iter().map(|&t| path.right_value(t).expect("admissible time")).collect();
    for i in 0..times.len() {
        for j in i + 1..times.len() {
            if !in_window(times[j] - times[i], delta) {
                break;
            }
            let d = space.dist(&values[i], &values[j]);
            if d > best.value {
                best = ModulusValue { value: d, witness: Some([times[i], times[j], times[j]]) };
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::{Interpolation, Linear, Trivial};
    use crate::metric::RealLine;
    use crate::path::{Domain, Knot};
    use alloc::vec;
    use proptest::prelude::*;

    fn lin() -> Interpolation<f64> {
        Interpolation::new("linear", |x: &f64, z: &f64, p| (1.0 - p) * x + p * z)
    }

    fn staircase(second: f64) -> Path<f64> {
        Path::step(Domain::interval(0.0, 2.0).unwrap(), 0.0, &[(1.0, 0.5), (second, 1.0)]).unwrap()
    }

    #[test]
    fn classic_examples() {
        let c = Path::step(Domain::interval(0.0, 5.0).unwrap(), 3.0, &[]).unwrap();
        assert_eq!(modulus(&c, &RealLine, 5.0, 1.0).unwrap().value, 0.0);
        let x = Path::continuous(Domain::interval(0.0, 1.0).unwrap(), &[(0.0, 0.0), (1.0, 1.0)], lin()).unwrap();
        assert_eq!(modulus(&x, &RealLine, 1.0, 0.25).unwrap().value, 0.25);
        let two = Path::on_points(vec![Knot::new(0.0, 0.0, 0.0), Knot::new(1.0, 1.0, 1.0)]).unwrap();
        assert_eq!(modulus(&two, &RealLine, 1.0, 0.5).unwrap().value, 0.0);
        assert_eq!(modulus(&two, &RealLine, 1.0, 1.0).unwrap().value, 1.0);
        assert_eq!(modulus(&staircase(1.5), &RealLine, 2.0, 0.1), Err(Error::HasJumps(1.0)));
    }

    #[test]
    fn classic_modulus_of_a_tent() {
        let tent = Path::continuous(
            Domain::interval(-1.0, 1.0).unwrap(),
            &[(-1.0, 0.0), (0.0, 1.0), (1.0, 0.0)],
            lin(),
        )
        .unwrap();
        let m = modulus(&tent, &RealLine, 1.0, 0.3).unwrap();
        assert!((m.value - 0.3).abs() < 1e-12);
        // The horizon cuts the domain.
        assert!((modulus(&tent, &RealLine, 0.1, 1.0).unwrap().value - 0.1).abs() < 1e-12);
    }

    #[test]
    fn skorohod_staircase() {
        let g = staircase(1.5);
        assert_eq!(skorohod_modulus(&g, &Trivial, &RealLine, 2.0, 0.4).value, 0.0);
        let m = skorohod_modulus(&g, &Trivial, &RealLine, 2.0, 0.6);
        assert_eq!(m.value, 0.5);
        assert_eq!(m.witness, Some([1.0, 1.0, 1.5]));
        for delta in [0.1, 0.5, 1.0, 2.0] {
            assert_eq!(skorohod_modulus(&g, &Linear, &RealLine, 2.0, delta).value, 0.0);
        }
    }

    #[test]
    fn skorohod_on_points_uses_left_and_right_values() {
        // One time with left 0 and right 1 next to a time with value 5.
        let p = Path::on_points(vec![Knot::new(0.0, 0.0, 1.0), Knot::new(0.5, 0.0, 0.0)]).unwrap();
        assert_eq!(skorohod_modulus(&p, &Linear, &RealLine, 1.0, 0.5).value, 1.0);
        assert_eq!(skorohod_modulus(&p, &Linear, &RealLine, 1.0, 0.4).value, 0.0);
    }

    /// Every split-time triple, by brute force over the knot split times.
    fn skorohod_brute(p: &Path<f64>, delta: f64, linear: bool) -> f64 {
        let mut pts = vec![];
        for &(a, b) in p.domain().pieces() {
            pts.push((a, p.values_at(a).unwrap().0));
            pts.push((a, p.values_at(a).unwrap().1));
            for k in p.knots() {
                if k.t > a && k.t <= b {
                    pts.push((k.t, k.left));
                    pts.push((k.t, k.right));
                }
            }
            pts.push((b, p.values_at(b).unwrap().1));
        }
        let mut best: f64 = 0.0;
        for i in 0..pts.len() {
            for j in i..pts.len() {
                for k in j..pts.len() {
                    if pts[k].0 - pts[i].0 > delta {
                        continue;
                    }
                    let (x, y, z) = (pts[i].1, pts[j].1, pts[k].1);
                    let d = if linear {
                        if y < x.min(z) { x.min(z) - y } else if y > x.max(z) { y - x.max(z) } else { 0.0 }
                    } else {
                        (y - x).abs().min((y - z).abs())
                    };
                    best = best.max(d);
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn skorohod_matches_brute_force(
            js in proptest::collection::vec((1u32..20, -3i32..3), 0..5),
            delta in 0.0f64..1.2,
        ) {
            let mut js = js;
            js.sort_by_key(|j| j.0);
            js.dedup_by_key(|j| j.0);
            let jumps: Vec<(f64, f64)> = js.iter().map(|&(k, v)| (if k >= 11 { k + 1 } else { k } as f64 / 10.0, v as f64)).collect();
            let p = Path::step(Domain::new(&[(0.0, 1.0), (1.2, 2.0)], &[]).unwrap(), 0.0, &jumps).unwrap();
            let t = skorohod_modulus(&p, &Trivial, &RealLine, 5.0, delta).value;
            let l = skorohod_modulus(&p, &Linear, &RealLine, 5.0, delta).value;
            prop_assert_eq!(t, skorohod_brute(&p, delta, false));
            prop_assert_eq!(l, skorohod_brute(&p, delta, true));
            prop_assert!(l <= t);
        }

        #[test]
        fn moduli_grow_with_delta(ys in proptest::collection::vec(-2.0f64..2.0, 2..6), d in 0.01f64..1.0) {
            let nodes: Vec<(f64, f64)> = ys.iter().enumerate().map(|(k, &y)| (k as f64 * 0.4, y)).collect();
            let end = nodes.last().unwrap().0;
            let p = Path::continuous(Domain::interval(0.0, end).unwrap(), &nodes, lin()).unwrap();
            let a = modulus(&p, &RealLine, 5.0, d).unwrap().value;
            let b = modulus(&p, &RealLine, 5.0, 2.0 * d).unwrap().value;
            prop_assert!(a <= b);
            // A dense scan never beats the candidate set.
            let n = 400;
            for i in 0..=n {
                let s = end * i as f64 / n as f64;
                let u = (s + d).min(end);
                let diff = (p.right_value(s).unwrap() - p.right_value(u).unwrap()).abs();
                prop_assert!(diff <= a + 1e-12);
            }
        }
    }
}
