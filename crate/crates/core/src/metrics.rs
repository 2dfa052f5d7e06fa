//! Topology metrics on (line) graphs and power-law fitting.
//!
//! All graph metrics ignore edge weights. Per-node and per-source work runs
//! in parallel, but partial results are reduced in node order so reports do
//! not depend on the thread count.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{degree_histogram, Side};
use crate::histogram::Histogram;
use crate::linegraph::LineGraph;
use crate::Hypergraph;

/// Mean of local clustering coefficients. Nodes of degree below 2
/// contribute 0.
pub fn clustering_coefficient(g: &LineGraph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let local: Vec<f64> = (0..n).into_par_iter().map(|v| local_clustering(g, v)).collect();
    local.iter().sum::<f64>() / n as f64
}

pub fn local_clustering(g: &LineGraph, v: usize) -> f64 {
    let nv = g.neighbors(v);
    let d = nv.len();
    if d < 2 {
        return 0.0;
    }
    // Each triangle through v is seen from both of its other corners.
    let twice: usize = nv.iter().map(|&u| common_count(nv, g.neighbors(u as usize))).sum();
    let triangles = twice / 2;
    triangles as f64 / (d * (d - 1) / 2) as f64
}

fn common_count(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Pearson correlation of the degrees at either end of each edge.
///
/// `None` when there are no edges or the endpoint degrees have zero
/// variance (e.g. regular graphs). The sums are accumulated as exact
/// integers, so the star graph gives exactly `-1`.
pub fn assortativity(g: &LineGraph) -> Option<f64> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return None;
    }
    let (mut prod, mut sum, mut sq) = (0i128, 0i128, 0i128);
    for &(a, b, _) in g.edges() {
        let (j, k) = (g.degree(a as usize) as i128, g.degree(b as usize) as i128);
        prod += j * k;
        sum += j + k;
        sq += j * j + k * k;
    }
    // r = (Σjk/m − (Σ(j+k)/2m)²) / (Σ(j²+k²)/2m − (Σ(j+k)/2m)²), scaled by 4m².
    let num = 4 * m * prod - sum * sum;
    let den = 2 * m * sq - sum * sum;
    if den == 0 {
        return None;
    }
    Some(num as f64 / den as f64)
}

/// How shortest-path sources are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMode {
    /// One BFS from every node of the largest component.
    Exact,
    /// BFS from `count` distinct sources drawn uniformly from the largest
    /// component.
    Sample { count: usize, rng_seed: u64 },
}

impl FromStr for PathMode {
    type Err = String;

    /// `exact` or `sample:COUNT:SEED`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "exact" {
            return Ok(Self::Exact);
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["sample", count, seed] => {
                let count = count.parse().map_err(|e| format!("sample count {count:?}: {e}"))?;
                let rng_seed = seed.parse().map_err(|e| format!("sample seed {seed:?}: {e}"))?;
                if count == 0 {
                    return Err("sample count must be positive".into());
                }
                Ok(Self::Sample { count, rng_seed })
            }
            _ => Err(format!("expected `exact` or `sample:COUNT:SEED`, got {s:?}")),
        }
    }
}

impl fmt::Display for PathMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => write!(f, "exact"),
            Self::Sample { count, rng_seed } => write!(f, "sample:{count}:{rng_seed}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum PathSampling {
    Exact,
    Sampled { sources: usize },
}

/// Average shortest-path length within the largest connected component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    pub mean: f64,
    pub component_size: usize,
    /// Share of all nodes that lie in the largest component.
    pub coverage: f64,
    pub sampling: PathSampling,
}

/// Node ids of the largest connected component (ties go to the component
/// containing the smallest id), in ascending order.
pub fn largest_component(g: &LineGraph) -> Vec<u32> {
    let n = g.node_count();
    let mut label = vec![u32::MAX; n];
    let mut best: Vec<u32> = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != u32::MAX {
            continue;
        }
        let mut members = vec![s as u32];
        label[s] = s as u32;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if label[u as usize] == u32::MAX {
                    label[u as usize] = s as u32;
                    members.push(u);
                    queue.push_back(u as usize);
                }
            }
        }
        if members.len() > best.len() {
            best = members;
        }
    }
    best.sort_unstable();
    best
}

fn bfs_distance_sum(g: &LineGraph, source: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) -> u64 {
    dist.fill(u32::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    let mut total = 0u64;
    while let Some(v) = queue.pop_front() {
        let dv = dist[v];
        total += dv as u64;
        for &u in g.neighbors(v) {
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = dv + 1;
                queue.push_back(u as usize);
            }
        }
    }
    total
}

pub fn average_path_length(g: &LineGraph, mode: PathMode) -> Result<PathStats> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidGraph("average path length of an empty graph".into()));
    }
    let component = largest_component(g);
    let size = component.len();
    let (sources, sampling): (Vec<u32>, PathSampling) = match mode {
        PathMode::Sample { count, rng_seed } if count < size => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            let mut picked: Vec<u32> = rand::seq::index::sample(&mut rng, size, count)
                .into_iter()
                .map(|i| component[i])
                .collect();
            picked.sort_unstable();
            (picked, PathSampling::Sampled { sources: count })
        }
        PathMode::Sample { .. } => (component.clone(), PathSampling::Sampled { sources: size }),
        PathMode::Exact => (component.clone(), PathSampling::Exact),
    };
    let sums: Vec<u64> = sources
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], VecDeque::new()),
            |(dist, queue), &s| bfs_distance_sum(g, s as usize, dist, queue),
        )
        .collect();
    let total: u64 = sums.iter().sum();
    let pairs = sources.len() as f64 * (size as f64 - 1.0);
    Ok(PathStats {
        mean: if size > 1 { total as f64 / pairs } else { 0.0 },
        component_size: size,
        coverage: size as f64 / n as f64,
        sampling,
    })
}

/// Straight-line fit `Pr(k) ≈ β·k^α` in log-log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub beta: f64,
    /// Number of `(k, Pr(k))` points used.
    pub points: usize,
}

/// Least-squares fit of `ln Pr(k) = ln β + α ln k` over points with
/// `k > 0` and positive mass. Masses are normalized to probabilities by
/// their total before fitting.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    let total: f64 = points.iter().map(|p| p.1).filter(|&c| c > 0.0).sum();
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(k, c)| k > 0.0 && c > 0.0)
        .map(|&(k, c)| (k.ln(), (c / total).ln()))
        .collect();
    if logs.len() < 3 {
        return Err(Error::InsufficientSupport(logs.len()));
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let alpha = sxy / sxx;
    Ok(PowerLawFit {
        alpha,
        beta: (my - alpha * mx).exp(),
        points: logs.len(),
    })
}

pub fn fit_histogram(h: &Histogram) -> Result<PowerLawFit> {
    let points: Vec<(f64, f64)> = h.iter().map(|(k, c)| (k as f64, c as f64)).collect();
    fit_power_law(&points)
}

/// Histogram of line-graph node degrees (distinct neighbors).
pub fn graph_degree_histogram(g: &LineGraph) -> Histogram {
    Histogram::from_values(g.degrees().into_iter().map(|d| d as u64))
}

/// Summary of a graph's topology.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n_nodes: usize,
    pub n_edges: usize,
    /// Power-law exponent of the degree distribution; `None` when the
    /// distribution has fewer than 3 positive support points.
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub clustering: f64,
    /// Clustering of an Erdős–Rényi graph with the same size and density.
    pub er_baseline: f64,
    pub assortativity: Option<f64>,
    pub avg_path_length: f64,
    pub path_sampling: PathSampling,
    pub largest_component: usize,
    pub component_coverage: f64,
    /// Exponent of the community-size distribution, when a hypergraph is
    /// supplied.
    pub community_size_alpha: Option<f64>,
    pub community_size_beta: Option<f64>,
}

impl MetricsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Link density `2m / (n(n-1))`; 0 for graphs with fewer than two nodes.
pub fn er_baseline(n_nodes: usize, n_edges: usize) -> f64 {
    if n_nodes < 2 {
        return 0.0;
    }
    2.0 * n_edges as f64 / (n_nodes as f64 * (n_nodes as f64 - 1.0))
}

pub fn full_report(g: &LineGraph, h: Option<&Hypergraph>, paths: PathMode) -> Result<MetricsReport> {
    let degree_fit = match fit_histogram(&graph_degree_histogram(g)) {
        Ok(fit) => Some(fit),
        Err(Error::InsufficientSupport(_)) => None,
        Err(e) => return Err(e),
    };
    let community_fit = match h {
        Some(h) => match fit_histogram(&degree_histogram(h, Side::Node)) {
            Ok(fit) => Some(fit),
            Err(Error::InsufficientSupport(_)) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    let path = average_path_length(g, paths)?;
    Ok(MetricsReport {
        n_nodes: g.node_count(),
        n_edges: g.edge_count(),
        alpha: degree_fit.map(|f| f.alpha),
        beta: degree_fit.map(|f| f.beta),
        clustering: clustering_coefficient(g),
        er_baseline: er_baseline(g.node_count(), g.edge_count()),
        assortativity: assortativity(g),
        avg_path_length: path.mean,
        path_sampling: path.sampling,
        largest_component: path.component_size,
        component_coverage: path.coverage,
        community_size_alpha: community_fit.map(|f| f.alpha),
        community_size_beta: community_fit.map(|f| f.beta),
    })
}
