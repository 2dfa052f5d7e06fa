//! Growth of linear hypergraphs by preferential attachment.
//!
//! Starting from a seed hypergraph, every step adds a growing element: a
//! fixed number of new nodes and a set of new hyperlinks, each of which
//! also contains exactly one existing node. The existing attachment points
//! are distinct and drawn with probability proportional to current node
//! degree, `Π(i) = S_i / Σ S`. Distinct attachment points keep the
//! hypergraph linear.
//!
//! Randomness comes from ChaCha8 seeded with `rng_seed`, and degree-weighted
//! draws use exact integer arithmetic, so runs are reproducible across
//! platforms.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::hypergraph::sorted_intersection_len;
use crate::Hypergraph;

/// Default resampling cap for the linearity check.
pub const DEFAULT_MAX_RETRIES: usize = 100;

/// Default seed: 7 nodes, hyperlinks `{0,1} {1,2} {2,3} {3,4} {4,5,6} {0,3,6}`.
pub fn default_seed_links() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5, 6], vec![0, 3, 6]]
}

/// Wiring of the element added at every step.
///
/// `links[i]` lists the new-node indices (in `0..new_nodes`) of the i-th new
/// hyperlink; each hyperlink is completed by one distinct existing node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowingElement {
    pub new_nodes: usize,
    pub links: Vec<Vec<usize>>,
}

impl Default for GrowingElement {
    /// New nodes `a, b, c`; hyperlinks `{a,x1}`, `{b,x2}`, `{a,b,x3}`,
    /// `{b,c,x4}`.
    fn default() -> Self {
        Self {
            new_nodes: 3,
            links: vec![vec![0], vec![1], vec![0, 1], vec![1, 2]],
        }
    }
}

impl GrowingElement {
    /// Number of existing nodes each step attaches to.
    pub fn attachments(&self) -> usize {
        self.links.len()
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.new_nodes == 0 {
            return bad("growing element needs at least one new node".into());
        }
        if self.links.is_empty() {
            return bad("growing element needs at least one hyperlink".into());
        }
        let mut covered = vec![false; self.new_nodes];
        for (i, link) in self.links.iter().enumerate() {
            let mut l = link.clone();
            l.sort_unstable();
            l.dedup();
            if l.len() != link.len() || l.is_empty() {
                return bad(format!("element hyperlink {i} must list distinct new nodes"));
            }
            if let Some(&x) = l.iter().find(|&&x| x >= self.new_nodes) {
                return bad(format!("element hyperlink {i} uses new node {x} of {}", self.new_nodes));
            }
            l.iter().for_each(|&x| covered[x] = true);
        }
        if let Some(x) = covered.iter().position(|c| !c) {
            return bad(format!("new node {x} is not in any element hyperlink"));
        }
        Ok(())
    }
}

/// Parameters of a growth run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthConfig {
    pub seed_links: Vec<Vec<usize>>,
    #[serde(default)]
    pub element: GrowingElement,
    pub steps: usize,
    pub rng_seed: u64,
    #[serde(default = "default_retries")]
    pub max_retries: usize,
}

fn default_retries() -> usize {
    DEFAULT_MAX_RETRIES
}

impl Default for GrowthConfig {
    fn default() -> Self {
        Self {
            seed_links: default_seed_links(),
            element: GrowingElement::default(),
            steps: 0,
            rng_seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

impl GrowthConfig {
    pub fn new(steps: usize, rng_seed: u64) -> Self {
        Self {
            steps,
            rng_seed,
            ..Self::default()
        }
    }

    /// Parses a config from JSON or from `key = value` lines.
    ///
    /// Keys: `steps`, `rng_seed`, `max_retries`, `seed_links`,
    /// `element_new_nodes`, `element_links`. Link lists are written as
    /// space-separated node ids with `;` between hyperlinks, e.g.
    /// `seed_links = 0 1; 1 2; 2 3 4`. Missing keys take their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return Ok(serde_json::from_str(text)?);
        }
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: idx + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let int = |v: &str| v.parse::<u64>().map_err(|e| err(format!("{key}: {e}")));
            match key {
                "steps" => cfg.steps = int(value)? as usize,
                "rng_seed" => cfg.rng_seed = int(value)?,
                "max_retries" => cfg.max_retries = int(value)? as usize,
                "element_new_nodes" => cfg.element.new_nodes = int(value)? as usize,
                "seed_links" => cfg.seed_links = parse_link_list(value).map_err(err)?,
                "element_links" => cfg.element.links = parse_link_list(value).map_err(err)?,
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// The seed as a hypergraph; node count is one past the largest id.
    pub fn seed_hypergraph(&self) -> Result<Hypergraph> {
        let n = self.seed_links.iter().flatten().max().map_or(0, |&m| m + 1);
        Hypergraph::from_links(n, self.seed_links.iter().cloned())
    }

    /// Checks the seed and element. The seed must be linear with depths in
    /// {2, 3}, cover every node, and have at least as many nodes as the
    /// element has attachments.
    pub fn validate(&self) -> Result<Hypergraph> {
        self.element.validate()?;
        let seed = self.seed_hypergraph()?;
        let needed = self.element.attachments();
        if seed.node_count() < needed {
            return Err(Error::SeedTooSmall {
                nodes: seed.node_count(),
                needed,
            });
        }
        if seed.links().iter().any(|l| !(2..=3).contains(&l.len())) {
            return Err(Error::InvalidConfig("seed hyperlinks must have depth 2 or 3".into()));
        }
        if !seed.is_linear() {
            return Err(Error::InvalidConfig("seed hypergraph must be linear".into()));
        }
        if let Some(j) = (0..seed.node_count()).find(|&j| seed.node_degree(j) == 0) {
            return Err(Error::InvalidConfig(format!("seed node {j} has degree 0")));
        }
        Ok(seed)
    }
}

fn parse_link_list(value: &str) -> std::result::Result<Vec<Vec<usize>>, String> {
    value
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|group| {
            group
                .split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
                .collect()
        })
        .collect()
}

/// Fenwick tree over integer node degrees for exact weighted sampling.
struct DegreeTree {
    tree: Vec<u64>,
    weights: Vec<u64>,
    total: u64,
}

impl DegreeTree {
    fn with_capacity(cap: usize) -> Self {
        Self {
            tree: vec![0; cap + 1],
            weights: Vec::with_capacity(cap),
            total: 0,
        }
    }

    fn push(&mut self, weight: u64) {
        let idx = self.weights.len();
        self.weights.push(0);
        self.add(idx, weight as i64);
    }

    fn add(&mut self, idx: usize, delta: i64) {
        self.weights[idx] = (self.weights[idx] as i64 + delta) as u64;
        self.total = (self.total as i64 + delta) as u64;
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] = (self.tree[i] as i64 + delta) as u64;
            i += i & i.wrapping_neg();
        }
    }

    /// Index whose cumulative weight range contains `target < total`.
    fn find(&self, mut target: u64) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                target -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        pos
    }

    /// Draws `k` distinct indices, each by weight among those not yet drawn.
    fn sample_distinct<R: Rng>(&mut self, k: usize, rng: &mut R) -> Vec<usize> {
        let mut picked = Vec::with_capacity(k);
        for _ in 0..k {
            let idx = self.find(rng.random_range(0..self.total));
            picked.push((idx, self.weights[idx]));
            self.add(idx, -(self.weights[idx] as i64));
        }
        for &(idx, w) in &picked {
            self.add(idx, w as i64);
        }
        picked.into_iter().map(|p| p.0).collect()
    }
}

/// Grows a hypergraph according to `config`.
///
/// After `t` steps the result has `N0 + new_nodes·t` nodes and
/// `L0 + attachments·t` hyperlinks; the seed's links come first, followed by
/// each step's links in element order.
pub fn grow(config: &GrowthConfig) -> Result<Hypergraph> {
    let seed = config.validate()?;
    let per_step_nodes = config.element.new_nodes;
    let attachments = config.element.attachments();
    let final_nodes = seed.node_count() + per_step_nodes * config.steps;

    let mut links: Vec<Vec<u32>> = seed.links().to_vec();
    let mut node_links: Vec<Vec<u32>> = (0..seed.node_count()).map(|j| seed.node_links(j).to_vec()).collect();
    let mut degrees = DegreeTree::with_capacity(final_nodes);
    for j in 0..seed.node_count() {
        degrees.push(seed.node_degree(j) as u64);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);

    for step in 0..config.steps {
        let first_new = node_links.len() as u32;
        let mut accepted = None;
        for _ in 0..=config.max_retries {
            let targets = degrees.sample_distinct(attachments, &mut rng);
            let proposal: Vec<Vec<u32>> = config
                .element
                .links
                .iter()
                .zip(&targets)
                .map(|(local, &x)| {
                    let mut l: Vec<u32> = local.iter().map(|&v| first_new + v as u32).collect();
                    l.push(x as u32);
                    l.sort_unstable();
                    l
                })
                .collect();
            if keeps_linear(&proposal, &links, &node_links) {
                accepted = Some(proposal);
                break;
            }
        }
        let proposal = accepted.ok_or(Error::RetriesExceeded {
            step: step + 1,
            retries: config.max_retries,
        })?;

        for _ in 0..per_step_nodes {
            node_links.push(Vec::new());
            degrees.push(0);
        }
        for link in proposal {
            let id = links.len() as u32;
            for &j in &link {
                node_links[j as usize].push(id);
                degrees.add(j as usize, 1);
            }
            links.push(link);
        }
    }
    Ok(Hypergraph::from_sorted_links(node_links.len(), links))
}

fn keeps_linear(proposal: &[Vec<u32>], links: &[Vec<u32>], node_links: &[Vec<u32>]) -> bool {
    for (a, p) in proposal.iter().enumerate() {
        if proposal[a + 1..].iter().any(|q| sorted_intersection_len(p, q) > 1) {
            return false;
        }
        for &j in p.iter().filter(|&&j| (j as usize) < node_links.len()) {
            if node_links[j as usize]
                .iter()
                .any(|&e| sorted_intersection_len(p, &links[e as usize]) > 1)
            {
                return false;
            }
        }
    }
    true
}

/// Which side of the hypergraph a degree histogram counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Node degrees `D_H`: community sizes.
    Node,
    /// Hyperlink sizes: overlapping depths.
    Link,
}

pub fn degree_histogram(h: &Hypergraph, side: Side) -> Histogram {
    match side {
        Side::Node => Histogram::from_values((0..h.node_count()).map(|j| h.node_degree(j) as u64)),
        Side::Link => Histogram::from_values(h.links().iter().map(|l| l.len() as u64)),
    }
}

/// Per-step depth multisets of a grown hypergraph, keyed by depth.
pub fn step_depths(h: &Hypergraph, seed_links: usize, per_step: usize) -> Vec<BTreeMap<usize, usize>> {
    h.links()[seed_links..]
        .chunks(per_step)
        .map(|chunk| {
            let mut m = BTreeMap::new();
            for l in chunk {
                *m.entry(l.len()).or_insert(0) += 1;
            }
            m
        })
        .collect()
}
