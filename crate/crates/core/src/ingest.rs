//! Loading of bipartite user–community membership data (HGM-CSV).
//!
//! Each non-comment line is `individual_id,community_id`. Ids are
//! arbitrary non-empty strings without commas and are interned in order
//! of first appearance: the first individual seen becomes hyperlink 0,
//! the first community seen becomes node 0. Lines that do not have
//! exactly two non-empty fields are skipped and counted.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use crate::error::{Error, Result};
use crate::linegraph::{line_graph, LineGraph};
use crate::Hypergraph;

/// Result of parsing a membership file.
#[derive(Debug, Clone)]
pub struct ParsedMemberships {
    pub hypergraph: Hypergraph,
    /// Number of membership lines accepted (duplicates included).
    pub valid_lines: usize,
    /// Number of malformed lines skipped.
    pub skipped: usize,
    /// 1-based line numbers of the first few skipped lines.
    pub skipped_examples: Vec<usize>,
}

const MAX_SKIP_EXAMPLES: usize = 10;

enum Line<'a> {
    Blank,
    Pair(&'a str, &'a str),
    Malformed,
}

fn classify(line: &str) -> Line<'_> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Line::Blank;
    }
    let mut fields = line.split(',');
    match (fields.next(), fields.next(), fields.next()) {
        (Some(a), Some(b), None) => {
            let (a, b) = (a.trim(), b.trim());
            if a.is_empty() || b.is_empty() {
                Line::Malformed
            } else {
                Line::Pair(a, b)
            }
        }
        _ => Line::Malformed,
    }
}

#[derive(Default)]
struct Interner {
    ids: HashMap<String, u32>,
    labels: Vec<String>,
}

impl Interner {
    fn intern(&mut self, label: &str) -> u32 {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len() as u32;
        self.ids.insert(label.to_owned(), id);
        self.labels.push(label.to_owned());
        id
    }

    fn get(&self, label: &str) -> Option<u32> {
        self.ids.get(label).copied()
    }
}

#[derive(Default)]
struct SkipLog {
    valid: usize,
    skipped: usize,
    examples: Vec<usize>,
}

impl SkipLog {
    fn skip(&mut self, line_no: usize) {
        self.skipped += 1;
        if self.examples.len() < MAX_SKIP_EXAMPLES {
            self.examples.push(line_no);
        }
    }
}

fn finish(
    links: Vec<Vec<u32>>,
    people: Interner,
    communities: Interner,
    log: SkipLog,
) -> Result<ParsedMemberships> {
    if log.valid == 0 {
        return Err(Error::NoValidLines {
            skipped: log.skipped,
        });
    }
    let mut links = links;
    for link in &mut links {
        link.sort_unstable();
        link.dedup();
    }
    let hypergraph = Hypergraph::from_sorted_links(communities.labels.len(), links)
        .with_labels(communities.labels, people.labels)?;
    Ok(ParsedMemberships {
        hypergraph,
        valid_lines: log.valid,
        skipped: log.skipped,
        skipped_examples: log.examples,
    })
}

/// Parses HGM-CSV from a reader in a single pass.
pub fn parse_memberships<R: BufRead>(reader: R) -> Result<ParsedMemberships> {
    let mut people = Interner::default();
    let mut communities = Interner::default();
    let mut links: Vec<Vec<u32>> = Vec::new();
    let mut log = SkipLog::default();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        match classify(&line) {
            Line::Blank => {}
            Line::Malformed => log.skip(idx + 1),
            Line::Pair(person, community) => {
                let i = people.intern(person) as usize;
                let j = communities.intern(community);
                if i == links.len() {
                    links.push(Vec::new());
                }
                links[i].push(j);
                log.valid += 1;
            }
        }
    }
    finish(links, people, communities, log)
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    let file = File::open(path)?;
    let gz = path.extension().is_some_and(|e| e == "gz");
    let inner: Box<dyn Read> = if gz {
        Box::new(MultiGzDecoder::new(file))
    } else {
        Box::new(file)
    };
    Ok(Box::new(BufReader::new(inner)))
}

/// Loads an HGM-CSV file (gzip-compressed when the name ends in `.gz`).
///
/// The file is read twice: the first pass discovers ids and per-individual
/// membership counts, the second fills preallocated membership lists.
pub fn load_memberships(path: impl AsRef<Path>) -> Result<ParsedMemberships> {
    let path = path.as_ref();

    let mut people = Interner::default();
    let mut communities = Interner::default();
    let mut sizes: Vec<usize> = Vec::new();
    for line in open(path)?.lines() {
        if let Line::Pair(person, community) = classify(&line?) {
            let i = people.intern(person) as usize;
            communities.intern(community);
            if i == sizes.len() {
                sizes.push(0);
            }
            sizes[i] += 1;
        }
    }

    let mut links: Vec<Vec<u32>> = sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
    let mut log = SkipLog::default();
    for (idx, line) in open(path)?.lines().enumerate() {
        match classify(&line?) {
            Line::Blank => {}
            Line::Malformed => log.skip(idx + 1),
            Line::Pair(person, community) => {
                let (Some(i), Some(j)) = (people.get(person), communities.get(community)) else {
                    return Err(Error::Parse {
                        line: idx + 1,
                        msg: "file changed between passes".into(),
                    });
                };
                links[i as usize].push(j);
                log.valid += 1;
            }
        }
    }
    finish(links, people, communities, log)
}

/// One-mode projection onto individuals: two individuals are linked when
/// they share a community, with weight equal to the number of shared
/// communities. Identical to [`line_graph`].
pub fn project_social_graph(h: &Hypergraph) -> LineGraph {
    line_graph(h)
}

#[cfg(test)]
mod tests {
    use std::io::Write;

    use super::*;
    use crate::fixtures;

    #[test]
    fn small_file() {
        let p = parse_memberships("u1,c1\nu1,c2\nu2,c1".as_bytes()).unwrap();
        let h = &p.hypergraph;
        assert_eq!((h.node_count(), h.link_count()), (2, 2));
        assert_eq!(h.overlapping_depth(h.link_by_label("u1").unwrap()).unwrap(), 2);
        assert_eq!(p.skipped, 0);
    }

    #[test]
    fn comments_and_bad_lines() {
        let text = "# header\nu1,c1\nthis line is bad\nu2,c1\n\n";
        let p = parse_memberships(text.as_bytes()).unwrap();
        assert_eq!(p.skipped, 1);
        assert_eq!(p.skipped_examples, vec![3]);
        assert_eq!(p.valid_lines, 2);
        assert_eq!(p.hypergraph.link_count(), 2);
    }

    #[test]
    fn malformed_variants() {
        let text = "a,b,c\n,x\ny,\nok,fine\n";
        let p = parse_memberships(text.as_bytes()).unwrap();
        assert_eq!(p.skipped, 3);
        assert_eq!(p.hypergraph.link_count(), 1);
    }

    #[test]
    fn no_valid_lines() {
        let err = parse_memberships("# only\nbad\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::NoValidLines { skipped: 1 }));
    }

    #[test]
    fn duplicate_pairs_tolerated() {
        let p = parse_memberships("u,c\nu,c\nu,d\n".as_bytes()).unwrap();
        assert_eq!(p.hypergraph.link(0), &[0, 1]);
        assert_eq!(p.valid_lines, 3);
    }

    #[test]
    fn single_community_users_are_depth_one() {
        let p = parse_memberships("u,c\nv,d\n".as_bytes()).unwrap();
        assert_eq!(p.hypergraph.k_max().unwrap(), 1);
    }

    #[test]
    fn nas_fixture_matches_table() {
        let h = fixtures::nas();
        assert_eq!((h.node_count(), h.link_count()), (12, 54));
        assert_eq!(h.incidence_count(), 66);
        let n10 = h.node_by_label("n10").unwrap();
        let members: Vec<String> = h.node_links(n10).iter().map(|&i| h.link_label(i as usize)).collect();
        assert_eq!(members, ["l4", "l7", "l44", "l45", "l46"]);
        for (j, label) in (1..=12).map(|j| format!("n{j}")).enumerate() {
            assert_eq!(h.node_label(j), label);
        }
    }

    #[test]
    fn two_pass_file_load_matches_stream() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nas.csv");
        std::fs::write(&path, fixtures::NAS_CSV).unwrap();
        let from_file = load_memberships(&path).unwrap();
        assert_eq!(from_file.hypergraph, fixtures::nas());
    }

    #[test]
    fn gzip_input() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nas.csv.gz");
        let mut enc = flate2::write::GzEncoder::new(
            File::create(&path).unwrap(),
            flate2::Compression::default(),
        );
        enc.write_all(b"u1,c1\nbroken\nu2,c1\n").unwrap();
        enc.finish().unwrap();
        let p = load_memberships(&path).unwrap();
        assert_eq!(p.hypergraph.link_count(), 2);
        assert_eq!(p.skipped, 1);
    }

    #[test]
    fn projection_weights_shared_communities() {
        let p = parse_memberships("a,x\na,y\nb,x\nb,y\nc,z\n".as_bytes()).unwrap();
        let g = project_social_graph(&p.hypergraph);
        assert_eq!(g.edges(), &[(0, 1, 2)]);
        assert!(g.is_weighted());
    }

    #[test]
    fn disjoint_communities_give_disjoint_cliques() {
        let p = parse_memberships("a,x\nb,x\nc,x\nd,y\ne,y\n".as_bytes()).unwrap();
        let g = project_social_graph(&p.hypergraph);
        assert_eq!(g.edges(), &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1)]);
    }
}
