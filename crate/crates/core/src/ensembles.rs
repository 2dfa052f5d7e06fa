//! Random hypergraph ensembles for exercising the spectral theorems.
//!
//! Every generator is driven by a caller-supplied RNG, so a seeded RNG
//! gives a reproducible ensemble.

use rand::seq::index::sample;
use rand::Rng;

use crate::hypergraph::sorted_intersection_len;
use crate::Hypergraph;

/// Structural family drawn by [`random_hypergraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Arbitrary depths, overlaps unconstrained.
    General,
    /// Fixed depth, overlaps unconstrained.
    Uniform,
    /// Arbitrary depths, pairwise overlap at most one node.
    Linear,
    /// Fixed depth and pairwise overlap at most one node.
    LinearUniform,
}

fn random_link<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Vec<u32> {
    let mut link: Vec<u32> = sample(rng, n, depth).into_iter().map(|x| x as u32).collect();
    link.sort_unstable();
    link
}

/// Draws hyperlinks one at a time, keeping those that pass `accept`, until
/// `target` links are kept or `attempts` draws are spent.
fn fill<R: Rng>(
    rng: &mut R,
    n: usize,
    target: usize,
    attempts: usize,
    mut depth: impl FnMut(&mut R) -> usize,
    linear: bool,
) -> Vec<Vec<u32>> {
    let mut links: Vec<Vec<u32>> = Vec::with_capacity(target);
    for _ in 0..attempts {
        if links.len() == target {
            break;
        }
        let d = depth(rng);
        let link = random_link(rng, n, d);
        if linear && links.iter().any(|l| sorted_intersection_len(l, &link) > 1) {
            continue;
        }
        links.push(link);
    }
    links
}

/// A random hypergraph of the given family with at most `max_nodes` nodes
/// (at least 3) and at most `max_links` hyperlinks (at least 3). Linear
/// families may come out with fewer hyperlinks than requested when the
/// constraint saturates. Isolated nodes are kept.
pub fn random_hypergraph<R: Rng>(rng: &mut R, family: Family, max_nodes: usize, max_links: usize) -> Hypergraph {
    let n = rng.random_range(3..=max_nodes.max(3));
    let target = rng.random_range(3..=max_links.max(3));
    let max_depth = n.min(6);
    let links = match family {
        Family::General => fill(rng, n, target, target, |r| r.random_range(1..=max_depth), false),
        Family::Uniform => {
            let k = rng.random_range(1..=max_depth);
            fill(rng, n, target, target, move |_| k, false)
        }
        Family::Linear => fill(rng, n, target, 20 * target, |r| r.random_range(1..=max_depth), true),
        Family::LinearUniform => {
            let k = rng.random_range(2..=max_depth.min(4));
            fill(rng, n, target, 20 * target, move |_| k, true)
        }
    };
    Hypergraph::from_sorted_links(n, links)
}

/// One of the four families chosen uniformly, then [`random_hypergraph`].
pub fn random_mixed<R: Rng>(rng: &mut R, max_nodes: usize, max_links: usize) -> Hypergraph {
    let family = match rng.random_range(0..4) {
        0 => Family::General,
        1 => Family::Uniform,
        2 => Family::Linear,
        _ => Family::LinearUniform,
    };
    random_hypergraph(rng, family, max_nodes, max_links)
}

/// A random linear `k`-uniform hypergraph with more hyperlinks than nodes
/// and at most `max_links` hyperlinks. `k` is drawn from {2, 3, 4}.
pub fn random_linear_uniform_dense<R: Rng>(rng: &mut R, max_links: usize) -> Hypergraph {
    loop {
        let k = rng.random_range(2..=4usize);
        let n = match k {
            2 => rng.random_range(4..=15),
            3 => rng.random_range(9..=25),
            _ => rng.random_range(25..=40),
        };
        let target = max_links.min(n * (n - 1) / (k * (k - 1)));
        let links = fill(rng, n, target, 50 * target, move |_| k, true);
        if links.len() > n {
            return Hypergraph::from_sorted_links(n, links);
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn families_have_their_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let h = random_hypergraph(&mut rng, Family::LinearUniform, 30, 60);
            assert!(h.is_linear());
            assert!(h.uniform_depth().is_some());
            let h = random_hypergraph(&mut rng, Family::Uniform, 30, 60);
            assert!(h.uniform_depth().is_some());
            let h = random_hypergraph(&mut rng, Family::Linear, 30, 60);
            assert!(h.is_linear());
            assert!(h.node_count() <= 30 && h.link_count() <= 60);
        }
    }

    #[test]
    fn dense_linear_uniform_exceeds_node_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let h = random_linear_uniform_dense(&mut rng, 120);
            assert!(h.is_linear());
            assert!(h.uniform_depth().is_some());
            assert!(h.link_count() > h.node_count());
            assert!(h.link_count() <= 120);
        }
    }
}
