//! Pairwise distance matrices, computed in parallel.

use rayon::prelude::*;
use skorodist_core::betweenness::Betweenness;
use skorodist_core::metric::{MetricSpace, SqueezeConfig};
use skorodist_core::path::{filled_graph, graph_dist, GraphOptions, Path, Variant};

/// A symmetric matrix of path distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub n: usize,
    /// Row-major values.
    pub values: Vec<f64>,
    /// Largest sampling error bar over all entries.
    pub error_bar: f64,
}

impl DistanceMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }
}

/// All pairwise distances. Each graph is built once; the pairs are
/// independent and run on the rayon pool.
pub fn distance_matrix<P, B, M>(
    paths: &[Path<P>],
    b: &B,
    space: &M,
    cfg: &SqueezeConfig,
    opts: &GraphOptions,
    variant: Variant,
) -> DistanceMatrix
where
    P: Clone + PartialEq + Send + Sync,
    B: Betweenness<P> + Sync,
    M: MetricSpace<Point = P> + Sync,
{
    let n = paths.len();
    let graphs: Vec<_> = paths.par_iter().map(|p| filled_graph(p, b, space, cfg, opts)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let entries: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| graph_dist(&graphs[i], &graphs[j], space, cfg, variant))
        .collect();
    let mut values = vec![0.0; n * n];
    let mut error_bar: f64 = 0.0;
    for (&(i, j), d) in pairs.iter().zip(&entries) {
        values[i * n + j] = d.value;
        values[j * n + i] = d.value;
        error_bar = error_bar.max(d.error_bar);
    }
    DistanceMatrix { n, values, error_bar }
}
