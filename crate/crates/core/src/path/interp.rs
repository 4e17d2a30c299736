//! Interpolation across gaps of the domain, and restriction.

use alloc::vec::Vec;

use super::{Domain, Fill, Knot, Path};
use crate::betweenness::Interpolation;
use crate::metric::SqueezeConfig;
use crate::{Error, Result};

/// Mesh used for the distortion supremum inside a gap.
const GAP_MESH: usize = 1024;

/// How gaps of the domain are filled.
#[derive(Debug, Clone)]
pub enum InterpMode<P> {
    /// Hold the value of the last time before the gap (cadlag).
    Left,
    /// Take the value of the first time after the gap (caglad).
    Right,
    /// Move from one end to the other with `phi`, proportionally in time.
    Continuous(Interpolation<P>),
}

/// Extends a continuous path to the convex hull of its domain.
///
/// For a gap `(t_l, t_r)`, the left mode uses `pi(t_l)` on the gap and so
/// jumps at `t_r`; the right mode uses `pi(t_r)` and jumps at `t_l`; the
/// continuous mode uses `phi(pi(t_l), pi(t_r), (t - t_l) / (t_r - t_l))`.
pub fn interpolate<P: Clone + PartialEq>(path: &Path<P>, mode: &InterpMode<P>) -> Result<Path<P>> {
    if let Some(t) = path.first_jump() {
        return Err(Error::HasJumps(t));
    }
    let gaps = path.domain().gaps();
    if gaps.is_empty() {
        return Ok(path.clone());
    }
    let fill = match (mode, path.fill()) {
        (InterpMode::Continuous(phi), Fill::Interpolated(own)) if own.name() != phi.name() => {
            return Err(Error::InvalidPath(alloc::format!(
                "path is interpolated with {}, not {}",
                own.name(),
                phi.name()
            )))
        }
        (InterpMode::Continuous(phi), _) => Fill::Interpolated(phi.clone()),
        (_, fill) => fill.clone(),
    };
    let mut added = Vec::with_capacity(2 * gaps.len());
    for (tl, tr) in gaps {
        let vl = path.right_value(tl)?;
        let vr = path.right_value(tr)?;
        let (at_l, at_r) = match mode {
            InterpMode::Left => (Knot::new(tl, vl.clone(), vl.clone()), Knot::new(tr, vl, vr)),
            InterpMode::Right => (Knot::new(tl, vl, vr.clone()), Knot::new(tr, vr.clone(), vr)),
            InterpMode::Continuous(_) => (Knot::new(tl, vl.clone(), vl), Knot::new(tr, vr.clone(), vr)),
        };
        added.push(at_l);
        added.push(at_r);
    }
    // Gap knots replace existing knots at the same time.
    let mut knots: Vec<Knot<P>> = added;
    knots.extend(path.knots().iter().cloned());
    knots.sort_by(|a, b| a.t.total_cmp(&b.t));
    knots.dedup_by(|later, earlier| later.t == earlier.t);
    let (lo, hi) = path.domain().hull().expect("a domain with gaps is nonempty");
    Path::new(Domain::interval(lo, hi)?, path.initial().cloned(), knots, fill)
}

/// `(eps_l, eps_r)`: the largest time distortion caused by moving a gap
/// time to the left or right end of its gap,
///
/// `eps_l = sup over gap times t of dbar(t, t_l) + |phi(t) - phi(t_l)|`,
///
/// and symmetrically for `eps_r`. Each gap is evaluated at its far end, at
/// `0` when `0` lies inside and on a mesh of 1024 points.
pub fn interpolation_distortion<P: Clone + PartialEq>(path: &Path<P>, cfg: &SqueezeConfig) -> (f64, f64) {
    let cost = |t: f64, anchor: f64| cfg.dbar(t, anchor) + (cfg.phi(t) - cfg.phi(anchor)).abs();
    let (mut el, mut er): (f64, f64) = (0.0, 0.0);
    for (tl, tr) in path.domain().gaps() {
        let mut probe = |t: f64| {
            el = el.max(cost(t, tl));
            er = er.max(cost(t, tr));
        };
        probe(tl);
        probe(tr);
        if tl < 0.0 && 0.0 < tr {
            probe(0.0);
        }
        for k in 1..GAP_MESH {
            probe(tl + (tr - tl) * k as f64 / GAP_MESH as f64);
        }
    }
    (el, er)
}

/// `pi` restricted to `I ∩ (-inf, t]`. The values at `t` are kept.
pub fn restrict<P: Clone + PartialEq>(path: &Path<P>, t: f64) -> Result<Path<P>> {
    if !path.domain().contains(t) {
        return Err(Error::OutsideDomain(t));
    }
    let knots = path.knots().iter().filter(|k| k.t <= t).cloned().collect();
    Path::new(path.domain().up_to(t), path.initial().cloned(), knots, path.fill().clone())
}
