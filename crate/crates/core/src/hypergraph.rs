//! Hypergraph model of overlapping communities.
//!
//! Nodes are communities and hyperlinks are individuals: hyperlink `i`
//! contains node `j` when individual `i` is a member of community `j`.
//! The structure keeps both directions of the membership relation
//! (`links` and `node_links`) so that either side can be walked without
//! a search.

use std::collections::BTreeSet;
use std::io::Write;

use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;

/// Immutable hypergraph with a dual incidence index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    node_count: usize,
    links: Vec<Vec<u32>>,
    node_links: Vec<Vec<u32>>,
    node_labels: Option<Vec<String>>,
    link_labels: Option<Vec<String>>,
}

impl Hypergraph {
    /// Builds a hypergraph from explicit hyperlink node lists.
    ///
    /// Each list is sorted and deduplicated. Nodes that no hyperlink
    /// touches are kept as isolated nodes.
    pub fn from_links<I, L>(node_count: usize, links: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = usize>,
    {
        let mut canon = Vec::new();
        for (i, link) in links.into_iter().enumerate() {
            let mut nodes: Vec<u32> = Vec::new();
            for node in link {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange {
                        link: i,
                        node,
                        node_count,
                    });
                }
                nodes.push(node as u32);
            }
            nodes.sort_unstable();
            nodes.dedup();
            if nodes.is_empty() {
                return Err(Error::EmptyLink(i));
            }
            canon.push(nodes);
        }
        Ok(Self::from_sorted_links(node_count, canon))
    }

    /// `links` must already be sorted, deduplicated, non-empty and in range.
    pub(crate) fn from_sorted_links(node_count: usize, links: Vec<Vec<u32>>) -> Self {
        let mut node_links = vec![Vec::new(); node_count];
        for (i, link) in links.iter().enumerate() {
            for &j in link {
                node_links[j as usize].push(i as u32);
            }
        }
        Self {
            node_count,
            links,
            node_links,
            node_labels: None,
            link_labels: None,
        }
    }

    /// Attaches display labels. Lengths must match the node and link counts.
    pub fn with_labels(mut self, node_labels: Vec<String>, link_labels: Vec<String>) -> Result<Self> {
        if node_labels.len() != self.node_count || link_labels.len() != self.links.len() {
            return Err(Error::InvalidGraph(format!(
                "label counts ({}, {}) do not match hypergraph ({}, {})",
                node_labels.len(),
                link_labels.len(),
                self.node_count,
                self.links.len()
            )));
        }
        self.node_labels = Some(node_labels);
        self.link_labels = Some(link_labels);
        Ok(self)
    }

    /// Number of nodes (communities), `N`.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of hyperlinks (individuals), `L`.
    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Sorted node ids of hyperlink `i`.
    pub fn link(&self, i: usize) -> &[u32] {
        &self.links[i]
    }

    pub fn links(&self) -> &[Vec<u32>] {
        &self.links
    }

    /// Sorted hyperlink ids incident to node `j`.
    pub fn node_links(&self, j: usize) -> &[u32] {
        &self.node_links[j]
    }

    /// Number of hyperlinks incident to node `j` (the community size).
    pub fn node_degree(&self, j: usize) -> usize {
        self.node_links[j].len()
    }

    /// Total number of memberships, `Σ_i |links[i]|`.
    pub fn incidence_count(&self) -> usize {
        self.links.iter().map(Vec::len).sum()
    }

    pub fn node_label(&self, j: usize) -> String {
        match &self.node_labels {
            Some(labels) => labels[j].clone(),
            None => j.to_string(),
        }
    }

    pub fn link_label(&self, i: usize) -> String {
        match &self.link_labels {
            Some(labels) => labels[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn node_labels(&self) -> Option<&[String]> {
        self.node_labels.as_deref()
    }

    pub fn link_labels(&self) -> Option<&[String]> {
        self.link_labels.as_deref()
    }

    /// Looks up a node by label (or by decimal index when unlabeled).
    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        match &self.node_labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&j| j < self.node_count),
        }
    }

    /// Looks up a hyperlink by label (or by decimal index when unlabeled).
    pub fn link_by_label(&self, label: &str) -> Option<usize> {
        match &self.link_labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&i| i < self.links.len()),
        }
    }

    /// Overlapping depth of an individual: the number of communities it
    /// belongs to.
    pub fn overlapping_depth(&self, link: usize) -> Result<usize> {
        self.links
            .get(link)
            .map(Vec::len)
            .ok_or(Error::IdOutOfRange {
                kind: "link",
                id: link,
                count: self.links.len(),
            })
    }

    /// Overlapping width of two communities: the number of individuals they
    /// share.
    pub fn overlapping_width(&self, a: usize, b: usize) -> Result<usize> {
        for id in [a, b] {
            if id >= self.node_count {
                return Err(Error::IdOutOfRange {
                    kind: "node",
                    id,
                    count: self.node_count,
                });
            }
        }
        if a == b {
            return Err(Error::IdenticalCommunities);
        }
        Ok(sorted_intersection_len(&self.node_links[a], &self.node_links[b]))
    }

    /// True when every pair of hyperlinks shares at most one node.
    pub fn is_linear(&self) -> bool {
        // For each hyperlink, count shared nodes with every later hyperlink
        // reachable through its own nodes. A count of 2 is a violation.
        let mut hits = vec![0u32; self.links.len()];
        let mut stamp = vec![u32::MAX; self.links.len()];
        for (i, link) in self.links.iter().enumerate() {
            for &j in link {
                for &other in &self.node_links[j as usize] {
                    let o = other as usize;
                    if o <= i {
                        continue;
                    }
                    if stamp[o] != i as u32 {
                        stamp[o] = i as u32;
                        hits[o] = 0;
                    }
                    hits[o] += 1;
                    if hits[o] > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `Some(k)` when every hyperlink has depth `k`.
    pub fn uniform_depth(&self) -> Option<usize> {
        let first = self.links.first()?.len();
        self.links.iter().all(|l| l.len() == first).then_some(first)
    }

    /// Maximum overlapping depth over all individuals.
    pub fn k_max(&self) -> Result<usize> {
        self.links
            .iter()
            .map(Vec::len)
            .max()
            .ok_or(Error::EmptyHypergraph)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        IncidenceMatrix::from_columns(self.node_count, self.links.iter().map(|l| l.as_slice()))
            .expect("hypergraph links are valid incidence columns")
    }

    /// Writes the membership pairs as HGM-CSV (`individual_id,community_id`),
    /// one line per pair, ordered by hyperlink and then by node id.
    pub fn write_hgm_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# individual_id,community_id")?;
        for (i, link) in self.links.iter().enumerate() {
            let li = self.link_label(i);
            for &j in link {
                writeln!(out, "{},{}", li, self.node_label(j as usize))?;
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_hgm_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_hgm_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("labels are UTF-8")
    }
}

/// Builds a hypergraph from `(link_id, node_id)` membership pairs.
///
/// Duplicate pairs are collapsed. External ids are compacted to dense
/// 0-based ranges in ascending id order, so the result does not depend
/// on the order of the input; the original ids are kept as labels.
pub fn build_hypergraph(pairs: &[(u64, u64)]) -> Result<Hypergraph> {
    if pairs.is_empty() {
        return Err(Error::EmptyHypergraph);
    }
    let link_ids: Vec<u64> = pairs.iter().map(|p| p.0).collect::<BTreeSet<_>>().into_iter().collect();
    let node_ids: Vec<u64> = pairs.iter().map(|p| p.1).collect::<BTreeSet<_>>().into_iter().collect();

    let mut links = vec![Vec::new(); link_ids.len()];
    for &(l, n) in pairs {
        let li = link_ids.binary_search(&l).expect("collected above");
        let ni = node_ids.binary_search(&n).expect("collected above");
        links[li].push(ni as u32);
    }
    for link in &mut links {
        link.sort_unstable();
        link.dedup();
    }
    Hypergraph::from_sorted_links(node_ids.len(), links).with_labels(
        node_ids.iter().map(u64::to_string).collect(),
        link_ids.iter().map(u64::to_string).collect(),
    )
}

pub(crate) fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut x, mut y, mut n) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                x += 1;
                y += 1;
            }
        }
    }
    n
}
