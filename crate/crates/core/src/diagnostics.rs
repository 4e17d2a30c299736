//! Compactness diagnostics for finite families of paths.
//!
//! A family is precompact iff it satisfies compact containment and its
//! moduli vanish uniformly as `delta -> 0`. Every finite family does, so
//! the verdicts read a family as a sample of a sequence and look at
//! trends: a modulus floor that persists while different members witness
//! it at finer and finer `delta` points to a failure in the limit.

use alloc::vec;
use alloc::vec::Vec;

use crate::betweenness::{Betweenness, Coordinates};
use crate::metric::MetricSpace;
use crate::path::{modulus, skorohod_modulus, Fill, Path};
use crate::{Error, Result};

/// Values at most this are treated as zero.
const ZERO_TOL: f64 = 1e-12;
/// A curve whose finest nonzero value keeps this fraction of its coarsest
/// value has not decayed.
const FLAT_RATIO: f64 = 0.5;
/// Distinct floor scales needed before a floor counts as persistent.
const MIN_SCALES: usize = 3;
/// Radius doublings along the family needed to call it unbounded.
const MIN_DOUBLINGS: usize = 3;
/// Grid points per piece used to bound interpolated stretches.
const BOX_GRID: usize = 256;

/// `{1/2, 1/4, ..., 1/256}`.
pub fn default_deltas() -> Vec<f64> {
    (1..=8).map(|k| libm::ldexp(1.0, -k)).collect()
}

/// `{1, 2, 5, horizon}`, without duplicates.
pub fn default_horizons(horizon: f64) -> Vec<f64> {
    let mut out = vec![1.0, 2.0, 5.0];
    if !out.contains(&horizon) {
        out.push(horizon);
    }
    out
}

/// Which modulus an equicontinuity curve uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusKind {
    /// `sup d(pi(t1), pi(t2))` over `|t1 - t2| <= delta`; jump-free families.
    Classic,
    /// The Skorohod modulus under the given betweenness.
    Skorohod,
}

/// The verdict of a diagnosis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Nothing at the tested resolutions contradicts precompactness. This
    /// is not a certificate: the `delta -> 0` limit is extrapolated.
    ConsistentWithPrecompact,
    /// A concrete witness shows a condition failing along the family.
    NotPrecompact,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ConsistentWithPrecompact => "consistent-with-precompact",
            Verdict::NotPrecompact => "not-precompact",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    fn worst(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (NotPrecompact, _) | (_, NotPrecompact) => NotPrecompact,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => ConsistentWithPrecompact,
        }
    }
}

/// Coordinatewise bounds of the values on `[-T, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundingBox {
    pub horizon: f64,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// Largest norm of a value, per path.
    pub radii: Vec<f64>,
    /// Paths where the running maximum of the radius doubled.
    pub doublings: Vec<usize>,
}

/// Outcome of [`compact_containment`].
#[derive(Debug, Clone, PartialEq)]
pub struct Containment {
    pub passed: bool,
    pub boxes: Vec<BoundingBox>,
}

/// A modulus curve `delta -> sup over the family`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub horizon: f64,
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
    /// Family index attaining each value, if the family is nonempty.
    pub argmax: Vec<Option<usize>>,
    /// `per_path[n][i]`: modulus of path `n` at `deltas[i]`.
    pub per_path: Vec<Vec<f64>>,
}

/// Evidence behind a verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Radii of these paths keep doubling on `[-T, T]`.
    Unbounded { horizon: f64, paths: Vec<usize> },
    /// The curve stays at `floor` while the listed `(delta, path)` pairs
    /// reach it at successively finer `delta`.
    Floor { horizon: f64, floor: f64, scales: Vec<(f64, usize)> },
    /// As `Floor`, for the oscillation at the ends of the domain.
    Boundary { floor: f64, scales: Vec<(f64, usize)> },
}

/// Result of a family diagnosis.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub containment: Containment,
    pub curves: Vec<Curve>,
    /// Oscillation at the ends of a common domain, for fixed-domain runs.
    pub boundary: Option<Curve>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

/// Values of a path at domain times in `[-T, T]`, enough to bound them.
fn values_in_window<P: Clone + PartialEq>(path: &Path<P>, horizon: f64) -> Vec<P> {
    let mut out = Vec::new();
    for &(a, b) in path.domain().pieces() {
        let (lo, hi) = (a.max(-horizon), b.min(horizon));
        if lo > hi {
            continue;
        }
        let mut times = vec![lo, hi];
        times.extend(path.knots().iter().map(|k| k.t).filter(|&t| lo <= t && t <= hi));
        if matches!(path.fill(), Fill::Interpolated(_)) && lo < hi {
            times.extend((1..BOX_GRID).map(|k| lo + (hi - lo) * k as f64 / BOX_GRID as f64));
        }
        for t in times {
            let (l, r) = path.values_at(t).expect("times lie in the domain");
            out.push(l);
            out.push(r);
        }
    }
    out
}

/// Compact containment per horizon: the bounding box of all values on
/// `[-T, T]`.
///
/// A finite family is always bounded, so the test reads the family as a
/// sequence: it fails when the running maximum of the value norms doubles
/// at least three times. In a compact space the condition always holds.
pub fn compact_containment<P: Coordinates>(family: &[Path<P>], horizons: &[f64], compact: bool) -> Containment {
    let mut boxes = Vec::with_capacity(horizons.len());
    let mut passed = true;
    for &h in horizons {
        let mut lo: Vec<f64> = Vec::new();
        let mut hi: Vec<f64> = Vec::new();
        let mut radii = Vec::with_capacity(family.len());
        for path in family {
            let mut r: f64 = 0.0;
            for v in values_in_window(path, h) {
                let c = v.coords();
                if lo.is_empty() {
                    lo = c.to_vec();
                    hi = c.to_vec();
                }
                for (k, &x) in c.iter().enumerate().take(lo.len()) {
                    lo[k] = lo[k].min(x);
                    hi[k] = hi[k].max(x);
                }
                r = r.max(libm::sqrt(c.iter().map(|x| x * x).sum()));
            }
            radii.push(r);
        }
        let mut doublings = Vec::new();
        let mut level = 0.0;
        for (n, &r) in radii.iter().enumerate() {
            if r > 0.0 && r >= 2.0 * level {
                if level > 0.0 {
                    doublings.push(n);
                }
                level = r;
            }
        }
        if !compact && doublings.len() >= MIN_DOUBLINGS {
            passed = false;
        }
        boxes.push(BoundingBox { horizon: h, lo, hi, radii, doublings });
    }
    Containment { passed, boxes }
}

fn assemble(horizon: f64, deltas: &[f64], per_path: Vec<Vec<f64>>) -> Curve {
    let mut values = vec![0.0; deltas.len()];
    let mut argmax = vec![None; deltas.len()];
    for (n, row) in per_path.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            if argmax[i].is_none() || v > values[i] {
                values[i] = v;
                argmax[i] = Some(n);
            }
        }
    }
    Curve { horizon, deltas: deltas.to_vec(), values, argmax, per_path }
}

/// `delta -> sup over the family` of the classic or Skorohod modulus on
/// `[-T, T]`.
pub fn equicontinuity_curve<P, B, M>(
    family: &[Path<P>],
    b: &B,
    space: &M,
    horizon: f64,
    deltas: &[f64],
    kind: ModulusKind,
) -> Result<Curve>
where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let mut per_path = Vec::with_capacity(family.len());
    for path in family {
        let row = deltas
            .iter()
            .map(|&d| match kind {
                ModulusKind::Classic => modulus(path, space, horizon, d).map(|m| m.value),
                ModulusKind::Skorohod => Ok(skorohod_modulus(path, b, space, horizon, d).value),
            })
            .collect::<Result<Vec<f64>>>()?;
        per_path.push(row);
    }
    Ok(assemble(horizon, deltas, per_path))
}

/// Reads a curve: the floor is its value at the finest `delta` where it is
/// still positive. A floor that has not decayed and that is first reached
/// by members at three or more distinct `delta` is persistent.
fn judge(curve: &Curve) -> (Verdict, Option<(f64, Vec<(f64, usize)>)>) {
    let mut order: Vec<usize> = (0..curve.deltas.len()).collect();
    order.sort_by(|&i, &j| curve.deltas[j].total_cmp(&curve.deltas[i]));
    let Some(&coarse) = order.first() else {
        return (Verdict::ConsistentWithPrecompact, None);
    };
    let Some(&fine) = order.iter().rev().find(|&&i| curve.values[i] > ZERO_TOL) else {
        return (Verdict::ConsistentWithPrecompact, None);
    };
    let floor = curve.values[fine];
    if floor < FLAT_RATIO * curve.values[coarse] {
        return (Verdict::ConsistentWithPrecompact, None);
    }
    let mut scales: Vec<(f64, usize)> = Vec::new();
    for (n, row) in curve.per_path.iter().enumerate() {
        let reached = order.iter().rev().find(|&&i| row[i] >= floor - ZERO_TOL);
        if let Some(&i) = reached {
            let d = curve.deltas[i];
            if !scales.iter().any(|s| s.0 == d) {
                scales.push((d, n));
            }
        }
    }
    scales.sort_by(|a, b| b.0.total_cmp(&a.0));
    let verdict = match scales.len() {
        k if k >= MIN_SCALES => Verdict::NotPrecompact,
        2 => Verdict::Inconclusive,
        _ => Verdict::ConsistentWithPrecompact,
    };
    (verdict, Some((floor, scales)))
}

/// Combines compact containment and equicontinuity at each horizon.
pub fn diagnose<P, B, M>(
    family: &[Path<P>],
    b: &B,
    space: &M,
    horizons: &[f64],
    deltas: &[f64],
    kind: ModulusKind,
) -> Result<FamilyReport>
where
    P: Coordinates,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let containment = compact_containment(family, horizons, space.is_compact());
    let mut verdict = Verdict::ConsistentWithPrecompact;
    let mut witnesses = Vec::new();
    if !containment.passed {
        verdict = Verdict::NotPrecompact;
        for bx in containment.boxes.iter().filter(|bx| bx.doublings.len() >= MIN_DOUBLINGS) {
            witnesses.push(Witness::Unbounded { horizon: bx.horizon, paths: bx.doublings.clone() });
        }
    }
    let mut curves = Vec::with_capacity(horizons.len());
    for &h in horizons {
        let curve = equicontinuity_curve(family, b, space, h, deltas, kind)?;
        let (v, floor) = judge(&curve);
        if v == Verdict::NotPrecompact {
            let (floor, scales) = floor.expect("a persistent floor has scales");
            witnesses.push(Witness::Floor { horizon: h, floor, scales });
        }
        verdict = verdict.worst(v);
        curves.push(curve);
    }
    Ok(FamilyReport { containment, curves, boundary: None, verdict, witnesses })
}

/// `sup { d(f(s), f(t)) : s in I, |s - t| <= delta }` at the finite ends `t`
/// of the common interval `I`.
fn boundary_oscillation<P, M>(path: &Path<P>, space: &M, ends: &[f64], delta: f64) -> f64
where
    P: Clone + PartialEq,
    M: MetricSpace<Point = P>,
{
    let domain = path.domain();
    let mut best: f64 = 0.0;
    for &t in ends {
        let ft = path.right_value(t).expect("ends lie in the domain");
        let (lo, hi) = (t - delta, t + delta);
        let mut times: Vec<f64> = path.knots().iter().map(|k| k.t).filter(|&s| lo <= s && s <= hi).collect();
        times.extend([lo, hi]);
        if matches!(path.fill(), Fill::Interpolated(_)) {
            times.extend((1..BOX_GRID).map(|k| lo + (hi - lo) * k as f64 / BOX_GRID as f64));
        }
        for s in times.into_iter().filter(|&s| domain.contains(s)) {
            let fs = path.right_value(s).expect("time lies in the domain");
            best = best.max(space.dist(&fs, &ft));
        }
    }
    best
}

/// Diagnosis on a common closed interval `I`: the Skorohod conditions plus
/// vanishing oscillation at the ends of `I`. All paths must live on the
/// same interval.
pub fn diagnose_fixed_domain<P, B, M>(family: &[Path<P>], b: &B, space: &M, deltas: &[f64]) -> Result<FamilyReport>
where
    P: Coordinates,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let Some(first) = family.first() else {
        return diagnose(family, b, space, &[1.0], deltas, ModulusKind::Skorohod);
    };
    let domain = first.domain().clone();
    if domain.pieces().len() != 1 || family.iter().any(|p| p.domain() != &domain) {
        return Err(Error::DomainMismatch);
    }
    let (a, z) = domain.pieces()[0];
    let horizon = a.abs().max(z.abs());
    let horizon = if horizon.is_finite() { horizon } else { 20.0 };
    let mut report = diagnose(family, b, space, &[horizon], deltas, ModulusKind::Skorohod)?;
    let ends: Vec<f64> = [a, z].into_iter().filter(|t| t.is_finite()).collect();
    let per_path = family
        .iter()
        .map(|p| deltas.iter().map(|&d| boundary_oscillation(p, space, &ends, d)).collect())
        .collect();
    let curve = assemble(horizon, deltas, per_path);
    let (v, floor) = judge(&curve);
    if v == Verdict::NotPrecompact {
        let (floor, scales) = floor.expect("a persistent floor has scales");
        report.witnesses.push(Witness::Boundary { floor, scales });
    }
    report.verdict = report.verdict.worst(v);
    report.boundary = Some(curve);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::{Interpolation, Linear, Trivial};
    use crate::metric::RealLine;
    use crate::path::Domain;

    fn on(a: f64, b: f64) -> Domain {
        Domain::interval(a, b).unwrap()
    }

    fn staircases() -> Vec<Path<f64>> {
        (2..=64)
            .map(|n| Path::step(on(0.0, 2.0), 0.0, &[(1.0, 0.5), (1.0 + 1.0 / n as f64, 1.0)]).unwrap())
            .collect()
    }

    #[test]
    fn separating_family() {
        let fam = staircases();
        let ds = default_deltas();
        let j1 = equicontinuity_curve(&fam, &Trivial, &RealLine, 2.0, &ds, ModulusKind::Skorohod).unwrap();
        for (d, v) in j1.deltas.iter().zip(&j1.values) {
            assert_eq!(*v, if *d >= 1.0 / 64.0 { 0.5 } else { 0.0 });
        }
        let m1 = equicontinuity_curve(&fam, &Linear, &RealLine, 2.0, &ds, ModulusKind::Skorohod).unwrap();
        assert!(m1.values.iter().all(|&v| v == 0.0));
        let r = diagnose(&fam, &Trivial, &RealLine, &[2.0], &ds, ModulusKind::Skorohod).unwrap();
        assert_eq!(r.verdict, Verdict::NotPrecompact);
        assert!(matches!(&r.witnesses[..], [Witness::Floor { floor, scales, .. }] if *floor == 0.5 && scales.len() == 6));
        let r = diagnose(&fam, &Linear, &RealLine, &[2.0], &ds, ModulusKind::Skorohod).unwrap();
        assert_eq!(r.verdict, Verdict::ConsistentWithPrecompact);
        assert!(matches!(
            equicontinuity_curve(&fam, &Trivial, &RealLine, 2.0, &ds, ModulusKind::Classic),
            Err(Error::HasJumps(_))
        ));
    }

    #[test]
    fn single_paths_are_never_rejected() {
        let fam = staircases();
        for p in fam.iter().step_by(7) {
            let r = diagnose(core::slice::from_ref(p), &Trivial, &RealLine, &[2.0], &default_deltas(), ModulusKind::Skorohod)
                .unwrap();
            assert_ne!(r.verdict, Verdict::NotPrecompact);
            let c = &r.curves[0];
            assert!(c.values.last() <= c.values.first());
        }
        let c = Path::step(on(0.0, 1.0), 4.0, &[]).unwrap();
        let curve = equicontinuity_curve(&[c], &Trivial, &RealLine, 1.0, &default_deltas(), ModulusKind::Classic).unwrap();
        assert!(curve.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn containment_examples() {
        let ind: Vec<Path<f64>> =
            (1..10).map(|n| Path::step(on(0.0, 2.0), 0.0, &[(1.0 / n as f64, 1.0)]).unwrap()).collect();
        let c = compact_containment(&ind, &[1.0, 2.0], false);
        assert!(c.passed);
        assert_eq!((c.boxes[1].lo.clone(), c.boxes[1].hi.clone()), (vec![0.0], vec![1.0]));
        let grow: Vec<Path<f64>> = (1..=16).map(|n| Path::step(on(0.0, 1.0), n as f64, &[]).unwrap()).collect();
        let c = compact_containment(&grow, &[1.0], false);
        assert!(!c.passed);
        assert_eq!(c.boxes[0].doublings, vec![1, 3, 7, 15]);
        assert!(compact_containment(&grow, &[1.0], true).passed);
        assert!(compact_containment::<f64>(&[], &[1.0], false).passed);
        let r = diagnose(&grow, &Trivial, &RealLine, &[1.0], &default_deltas(), ModulusKind::Classic).unwrap();
        assert_eq!(r.verdict, Verdict::NotPrecompact);
        assert!(matches!(r.witnesses[0], Witness::Unbounded { .. }));
    }

    #[test]
    fn fixed_domain_boundary() {
        let ds = default_deltas();
        let inner: Vec<Path<f64>> =
            (2..=64).map(|n| Path::step(on(0.0, 2.0), 0.0, &[(1.0 - 1.0 / n as f64, 1.0)]).unwrap()).collect();
        let r = diagnose_fixed_domain(&inner, &Trivial, &RealLine, &ds).unwrap();
        assert_eq!(r.verdict, Verdict::ConsistentWithPrecompact);
        let edge: Vec<Path<f64>> =
            (2..=64).map(|n| Path::step(on(0.0, 2.0), 0.0, &[(1.0 / n as f64, 1.0)]).unwrap()).collect();
        let r = diagnose_fixed_domain(&edge, &Trivial, &RealLine, &ds).unwrap();
        assert_eq!(r.verdict, Verdict::NotPrecompact);
        let b = r.boundary.as_ref().unwrap();
        for (d, v) in b.deltas.iter().zip(&b.values) {
            assert_eq!(*v, if *d >= 1.0 / 64.0 { 1.0 } else { 0.0 });
        }
        assert!(matches!(r.witnesses[..], [Witness::Boundary { .. }]));
        let consts: Vec<Path<f64>> = (0..5).map(|k| Path::step(on(0.0, 2.0), k as f64 * 0.1, &[]).unwrap()).collect();
        assert_eq!(diagnose_fixed_domain(&consts, &Trivial, &RealLine, &ds).unwrap().verdict, Verdict::ConsistentWithPrecompact);
        let mixed = vec![consts[0].clone(), Path::step(on(0.0, 3.0), 0.0, &[]).unwrap()];
        assert_eq!(diagnose_fixed_domain(&mixed, &Trivial, &RealLine, &ds).unwrap_err(), Error::DomainMismatch);
    }

    #[test]
    fn continuous_family_decays() {
        let lin = Interpolation::new("linear", |x: &f64, z: &f64, p| (1.0 - p) * x + p * z);
        let fam: Vec<Path<f64>> = (1..=8)
            .map(|n| Path::continuous(on(0.0, 1.0), &[(0.0, 0.0), (1.0, 1.0 + 1.0 / n as f64)], lin.clone()).unwrap())
            .collect();
        let r = diagnose(&fam, &Trivial, &RealLine, &[1.0], &default_deltas(), ModulusKind::Classic).unwrap();
        assert_eq!(r.verdict, Verdict::ConsistentWithPrecompact);
        let c = &r.curves[0];
        assert!(c.values.windows(2).all(|w| w[1] <= w[0]));
    }
}
