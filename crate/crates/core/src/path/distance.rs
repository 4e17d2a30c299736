//! Distances between paths through their filled-in graphs.

use alloc::vec::Vec;

use super::{filled_graph, Graph, GraphOptions, Path};
use crate::betweenness::Betweenness;
use crate::metric::{MetricSpace, SqueezeConfig};
use crate::ordered::{d_part_by, d_tot_by, hausdorff_by};

/// Which distance between graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// `d_part` of the ordered graphs.
    Part,
    /// `d_tot` of the ordered graphs.
    #[default]
    Tot,
    /// Plain Hausdorff distance, ignoring the order.
    Hausdorff,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Part => "part",
            Variant::Tot => "tot",
            Variant::Hausdorff => "hausdorff",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "part" => Some(Variant::Part),
            "tot" => Some(Variant::Tot),
            "hausdorff" => Some(Variant::Hausdorff),
            _ => None,
        }
    }
}

/// A distance between sampled graphs with its error sources.
#[derive(Debug, Clone, PartialEq)]
pub struct PathDistance {
    pub value: f64,
    /// Bound on the sampling error, `2 eta (1 + sup phi)` when either
    /// graph is sampled.
    pub error_bar: f64,
    /// Bound on the error from cutting unbounded domains.
    pub truncation: f64,
    /// An optimal monotone correspondence in chain indices, for [`Variant::Tot`].
    pub correspondence: Option<Vec<(usize, usize)>>,
}

/// A spatial point with its time weights precomputed.
struct Node<'a, P> {
    x: Option<&'a P>,
    phi: f64,
    tau: f64,
}

fn nodes<'a, P: Clone + PartialEq>(g: &'a Graph<P>, cfg: &SqueezeConfig) -> Vec<Node<'a, P>> {
    g.points()
        .iter()
        .map(|p| Node { x: p.space(), phi: cfg.phi(p.time()), tau: cfg.dbar.embed(p.time()) })
        .collect()
}

/// Distance between two graphs in squeezed space.
pub fn graph_dist<P, M>(g1: &Graph<P>, g2: &Graph<P>, space: &M, cfg: &SqueezeConfig, variant: Variant) -> PathDistance
where
    P: Clone + PartialEq,
    M: MetricSpace<Point = P>,
{
    let (a, b) = (nodes(g1, cfg), nodes(g2, cfg));
    let d = |i: usize, j: usize| {
        let (u, v) = (&a[i], &b[j]);
        let spatial = match (u.x, v.x) {
            (Some(x), Some(y)) => u.phi.min(v.phi) * space.dist(x, y).min(1.0),
            _ => 0.0,
        };
        spatial + (u.phi - v.phi).abs() + (u.tau - v.tau).abs()
    };
    let (n1, n2) = (a.len(), b.len());
    let (value, correspondence) = match variant {
        Variant::Hausdorff => (hausdorff_by(n1, n2, d).expect("graphs contain the star points"), None),
        Variant::Part => (d_part_by(n1, n2, d).expect("graphs contain the star points"), None),
        Variant::Tot => {
            let (v, path) = d_tot_by(n1, n2, d).expect("graphs contain the star points");
            (v, Some(path))
        }
    };
    let eta = g1.mesh().max(g2.mesh());
    let sampled = g1.is_sampled() || g2.is_sampled();
    PathDistance {
        value,
        error_bar: if sampled { 2.0 * eta * (1.0 + cfg.phi_sup()) } else { 0.0 },
        truncation: g1.truncation() + g2.truncation(),
        correspondence,
    }
}

/// Distance between two paths: `d_part`, `d_tot` or the Hausdorff
/// distance between their filled-in graphs under the betweenness `b`.
/// With the trivial betweenness these are the J1-type distances, with
/// the linear betweenness the M1-type ones; the Hausdorff variants are
/// the J2 and M2 distances.
pub fn path_dist<P, B, M>(
    p1: &Path<P>,
    p2: &Path<P>,
    b: &B,
    space: &M,
    cfg: &SqueezeConfig,
    opts: &GraphOptions,
    variant: Variant,
) -> PathDistance
where
    P: Clone + PartialEq,
    B: Betweenness<P>,
    M: MetricSpace<Point = P>,
{
    let g1 = filled_graph(p1, b, space, cfg, opts);
    let g2 = filled_graph(p2, b, space, cfg, opts);
    graph_dist(&g1, &g2, space, cfg, variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::{Linear, Trivial};
    use crate::metric::{d_sqz, RealLine, Squeezed, SqueezedPoint};
    use crate::ordered::{d_tot_bruteforce, Budget, OrderedPointSet};
    use crate::path::{Domain, Knot};
    use alloc::vec;
    use proptest::prelude::*;

    fn cfg() -> SqueezeConfig {
        SqueezeConfig::default()
    }

    fn point(x: f64) -> Path<f64> {
        Path::on_points(vec![Knot::new(0.0, x, x)]).unwrap()
    }

    #[test]
    fn single_points_pair_directly() {
        let o = GraphOptions::default();
        let r = path_dist(&point(0.0), &point(0.3), &Trivial, &RealLine, &cfg(), &o, Variant::Tot);
        assert!((r.value - 0.3).abs() < 1e-15);
        assert_eq!(r.error_bar, 0.0);
        // Brute force over the three-point chains.
        let chain = |x: f64| {
            OrderedPointSet::chain(vec![SqueezedPoint::NegStar, SqueezedPoint::at(x, 0.0), SqueezedPoint::PosStar])
        };
        let sq = Squeezed::new(RealLine, cfg());
        let bf = d_tot_bruteforce(&sq, &chain(0.0), &chain(0.3), &Budget::default()).unwrap();
        assert_eq!(bf, r.value);
        // Pairing a star with the spatial point costs at least 2.
        assert!(d_sqz(&SqueezedPoint::NegStar, &SqueezedPoint::at(0.0, 0.0), &RealLine, &cfg()) >= 2.0);
    }

    fn step(jumps: &[(f64, f64)]) -> Path<f64> {
        Path::step(Domain::interval(0.0, 2.0).unwrap(), 0.0, jumps).unwrap()
    }

    #[test]
    fn self_distance_is_zero() {
        let p = step(&[(1.0, 1.0), (1.5, -1.0)]);
        let o = GraphOptions::new(0.02);
        for v in [Variant::Part, Variant::Tot, Variant::Hausdorff] {
            assert_eq!(path_dist(&p, &p, &Trivial, &RealLine, &cfg(), &o, v).value, 0.0);
            assert_eq!(path_dist(&p, &p, &Linear, &RealLine, &cfg(), &o, v).value, 0.0);
        }
    }

    #[test]
    fn m1_below_j1_on_staircase() {
        let f = step(&[(1.0, 1.0)]);
        let o = GraphOptions::new(0.01);
        let dists = |g: &Path<f64>| {
            let j1 = path_dist(&f, g, &Trivial, &RealLine, &cfg(), &o, Variant::Tot).value;
            let m1 = path_dist(&f, g, &Linear, &RealLine, &cfg(), &o, Variant::Tot).value;
            (j1, m1)
        };
        // With the middle step half a time unit long, both distances are
        // set by f(1+) = 1 against g(1+) = 1/2, which costs phi(1) / 2.
        let (j1, m1) = dists(&step(&[(1.0, 0.5), (1.5, 1.0)]));
        assert!(m1 <= j1);
        assert!((j1 - 0.5 * libm::exp(-1.0)).abs() < 1e-12);
        // Once the steps merge the segment pays off.
        let (j1, m1) = dists(&step(&[(1.0, 0.5), (1.0 + 1.0 / 64.0, 1.0)]));
        assert!(m1 < 0.5 * j1, "m1 {m1} j1 {j1}");
    }

    #[test]
    fn sampled_error_bar() {
        let f = step(&[(1.0, 1.0)]);
        let r = path_dist(&f, &f, &Trivial, &RealLine, &cfg(), &GraphOptions::new(0.01), Variant::Hausdorff);
        assert!((r.error_bar - 0.04).abs() < 1e-15);
        assert_eq!(r.truncation, 0.0);
    }

    fn arb_step() -> impl Strategy<Value = Path<f64>> {
        proptest::collection::vec((1u32..40, -2.0f64..2.0), 0..4).prop_map(|mut js| {
            js.sort_by_key(|j| j.0);
            js.dedup_by_key(|j| j.0);
            let jumps: Vec<(f64, f64)> = js.into_iter().map(|(k, v)| (k as f64 / 20.0, v)).collect();
            step(&jumps)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn path_metric_chain(p in arb_step(), q in arb_step()) {
            let o = GraphOptions::new(0.05);
            for lin in [false, true] {
                let run = |v| if lin {
                    path_dist(&p, &q, &Linear, &RealLine, &cfg(), &o, v).value
                } else {
                    path_dist(&p, &q, &Trivial, &RealLine, &cfg(), &o, v).value
                };
                let (h, part, tot) = (run(Variant::Hausdorff), run(Variant::Part), run(Variant::Tot));
                prop_assert!(h <= part && part <= tot, "{} {} {}", h, part, tot);
            }
        }

        #[test]
        fn halving_eta_is_stable(p in arb_step(), q in arb_step()) {
            let coarse = GraphOptions::new(0.04);
            let fine = GraphOptions::new(0.02);
            let a = path_dist(&p, &q, &Linear, &RealLine, &cfg(), &coarse, Variant::Tot);
            let b = path_dist(&p, &q, &Linear, &RealLine, &cfg(), &fine, Variant::Tot);
            prop_assert!((a.value - b.value).abs() <= a.error_bar);
        }
    }
}
