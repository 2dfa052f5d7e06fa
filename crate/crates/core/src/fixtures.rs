//! Bundled example data.

use crate::ingest::parse_memberships;
use crate::Hypergraph;

/// HGM-CSV text of the NAS research-group network (12 communities,
/// 54 individuals).
pub const NAS_CSV: &str = include_str!("../fixtures/nas.csv");

/// Display names of the NAS communities `n1..n12`.
pub const NAS_COMMUNITIES: [&str; 12] = [
    "TU Delft research group-NAS",
    "MIT research group",
    "Cornell Univ. research group",
    "IEEE/ACM ToN editorial board",
    "Kansas State Univ. research group",
    "Ericsson",
    "KPN (Dutch Telecom)",
    "Piano club",
    "TNO (A Dutch consulting company)",
    "A rock band",
    "A soccer team",
    "TU Delft research group-Bioinformatics",
];

/// The NAS network as a hypergraph. Nodes are labeled `n1..n12` and
/// hyperlinks `l1..l54`, both in numeric order.
pub fn nas() -> Hypergraph {
    parse_memberships(NAS_CSV.as_bytes())
        .expect("bundled fixture parses")
        .hypergraph
}
