//! Line graphs of hypergraphs.
//!
//! The line graph has one node per hyperlink (individual). Two nodes are
//! joined when their hyperlinks share communities, with weight equal to
//! the number of shared communities. It is built two independent ways:
//! combinatorially by sparse accumulation ([`line_graph`]), and
//! algebraically from the Gram matrix of the incidence matrix
//! ([`adjacency_via_gram`]). The algebraic route is dense and is meant for
//! verification.

use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;
use crate::Hypergraph;

/// Default largest `L` for which [`adjacency_via_gram`] materializes a
/// dense matrix.
pub const GRAM_DENSE_LIMIT: usize = 4096;

/// Undirected graph with positive integer edge weights, no self-loops and
/// no parallel edges. Edges are stored once with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraph {
    node_count: usize,
    edges: Vec<(u32, u32, u32)>,
    weighted: bool,
    offsets: Vec<usize>,
    adjacency: Vec<u32>,
}

impl LineGraph {
    /// Builds a graph from an arbitrary edge list. Edges may be given in
    /// either orientation and in any order; self-loops, repeated pairs and
    /// zero weights are rejected.
    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (a, b, t) in edges {
            if a >= node_count || b >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {node_count} nodes"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at node {a}")));
            }
            if t == 0 {
                return Err(Error::InvalidGraph(format!("zero weight on edge ({a}, {b})")));
            }
            canon.push((a.min(b) as u32, a.max(b) as u32, t));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        Ok(Self::from_canonical(node_count, canon))
    }

    fn from_canonical(node_count: usize, edges: Vec<(u32, u32, u32)>) -> Self {
        let mut deg = vec![0usize; node_count];
        for &(a, b, _) in &edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..node_count].to_vec();
        let mut adjacency = vec![0u32; 2 * edges.len()];
        for &(a, b, _) in &edges {
            adjacency[fill[a as usize]] = b;
            fill[a as usize] += 1;
            adjacency[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for v in 0..node_count {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let weighted = edges.iter().any(|e| e.2 > 1);
        Self {
            node_count,
            edges,
            weighted,
            offsets,
            adjacency,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(i, j, weight)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    /// True when some edge has weight above 1.
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn max_weight(&self) -> u32 {
        self.edges.iter().map(|e| e.2).max().unwrap_or(0)
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Number of distinct neighbors of `v` (weights ignored).
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    pub fn weight(&self, a: usize, b: usize) -> u32 {
        let key = (a.min(b) as u32, a.max(b) as u32);
        self.edges
            .binary_search_by(|e| (e.0, e.1).cmp(&key))
            .map(|i| self.edges[i].2)
            .unwrap_or(0)
    }

    /// Dense weighted adjacency matrix.
    pub fn to_dense(&self) -> DMatrix<i64> {
        let mut m = DMatrix::zeros(self.node_count, self.node_count);
        for &(a, b, t) in &self.edges {
            m[(a as usize, b as usize)] = t as i64;
            m[(b as usize, a as usize)] = t as i64;
        }
        m
    }

    /// Writes the edge list: a `# nodes N` header, then one `i j t` line per
    /// edge (`i j` when the graph is unweighted), ordered by `(i, j)`.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# nodes {}", self.node_count)?;
        for &(a, b, t) in &self.edges {
            if self.weighted {
                writeln!(out, "{a} {b} {t}")?;
            } else {
                writeln!(out, "{a} {b}")?;
            }
        }
        out.flush()?;
        Ok(())
    }

    /// Reads the format produced by [`LineGraph::write_edge_list`]. Without
    /// a `# nodes` header the node count is one past the largest id.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(n) = rest.trim().strip_prefix("nodes") {
                    declared = Some(n.trim().parse::<usize>().map_err(|e| Error::Parse {
                        line: idx + 1,
                        msg: format!("bad node count: {e}"),
                    })?);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: idx + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(parse_err(format!("expected `i j [t]`, got {line:?}")));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|e| parse_err(format!("{s:?}: {e}")));
            let a = num(fields[0])? as usize;
            let b = num(fields[1])? as usize;
            let t = match fields.get(2) {
                Some(s) => num(s)? as u32,
                None => 1,
            };
            edges.push((a, b, t));
        }
        let inferred = edges.iter().map(|&(a, b, _)| a.max(b) + 1).max().unwrap_or(0);
        Self::from_edges(declared.unwrap_or(inferred), edges)
    }
}

/// Combinatorial line graph of `h`.
///
/// Each hyperlink walks the communities it belongs to and accumulates
/// shared-community counts with every later hyperlink in those
/// communities; all-pairs comparison over `L` is never performed.
pub fn line_graph(h: &Hypergraph) -> LineGraph {
    let l = h.link_count();
    let rows: Vec<Vec<(u32, u32, u32)>> = (0..l)
        .into_par_iter()
        .map_init(
            || (vec![0u32; l], Vec::new()),
            |(counts, touched), i| {
                for &j in h.link(i) {
                    for &other in h.node_links(j as usize) {
                        if other as usize > i {
                            if counts[other as usize] == 0 {
                                touched.push(other);
                            }
                            counts[other as usize] += 1;
                        }
                    }
                }
                touched.sort_unstable();
                let row = touched
                    .iter()
                    .map(|&o| (i as u32, o, counts[o as usize]))
                    .collect();
                for &o in touched.iter() {
                    counts[o as usize] = 0;
                }
                touched.clear();
                row
            },
        )
        .collect();
    LineGraph::from_canonical(l, rows.into_iter().flatten().collect())
}

/// Diagonal correction `C` with `c_jj = k_max - depth(j)`, making every
/// diagonal entry of `RᵀR + C` equal to `k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionDiagonal {
    k_max: usize,
    entries: Vec<usize>,
}

impl CorrectionDiagonal {
    pub fn new(r: &IncidenceMatrix, k_max: usize) -> Result<Self> {
        let depths = r.column_sums();
        let actual = depths.iter().copied().max().unwrap_or(0);
        if actual != k_max {
            return Err(Error::InconsistentKmax { given: k_max, actual });
        }
        Ok(Self {
            k_max,
            entries: depths.into_iter().map(|d| k_max - d).collect(),
        })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }
}

/// Algebraic line-graph adjacency `A = RᵀR + C − k_max·I`.
pub fn adjacency_via_gram(r: &IncidenceMatrix, k_max: usize) -> Result<DMatrix<i64>> {
    adjacency_via_gram_with_limit(r, k_max, GRAM_DENSE_LIMIT)
}

/// As [`adjacency_via_gram`], refusing inputs with more than `limit` columns.
pub fn adjacency_via_gram_with_limit(r: &IncidenceMatrix, k_max: usize, limit: usize) -> Result<DMatrix<i64>> {
    if r.cols() > limit {
        return Err(Error::TooLarge { dim: r.cols(), limit });
    }
    let c = CorrectionDiagonal::new(r, k_max)?;
    let dense = r.to_dense();
    let mut a = dense.transpose() * &dense;
    for (i, &cii) in c.entries().iter().enumerate() {
        a[(i, i)] += cii as i64 - k_max as i64;
    }
    Ok(a)
}

/// One clique per community: the line-graph nodes of its members.
pub fn community_cliques(h: &Hypergraph) -> Vec<Vec<u32>> {
    (0..h.node_count()).map(|j| h.node_links(j).to_vec()).collect()
}
