//! Hypergraph models of social networks with overlapping communities.
//!
//! Communities are hypergraph nodes and individuals are hyperlinks joining
//! every community they belong to. The line graph of such a hypergraph is
//! the one-mode social network: individuals linked by shared communities.
//!
//! - [`hypergraph`]: the model, overlap statistics, linearity and uniformity.
//! - [`linegraph`]: combinatorial and Gram-matrix line-graph construction.
//! - [`spectral`]: numerical checks of `λ_min ≥ -k_max` and related spectra.
//! - [`generator`]: preferential-attachment growth of linear hypergraphs.
//! - [`metrics`]: clustering, assortativity, path length, power-law fits.
//! - [`ingest`]: HGM-CSV membership files.

pub mod ensembles;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod histogram;
pub mod hypergraph;
pub mod incidence;
pub mod ingest;
pub mod linegraph;
pub mod metrics;
pub mod spectral;

pub use error::{Error, Result};
pub use generator::{degree_histogram, grow, GrowingElement, GrowthConfig, Side};
pub use histogram::Histogram;
pub use hypergraph::{build_hypergraph, Hypergraph};
pub use incidence::IncidenceMatrix;
pub use ingest::{load_memberships, parse_memberships, project_social_graph, ParsedMemberships};
pub use linegraph::{adjacency_via_gram, community_cliques, line_graph, CorrectionDiagonal, LineGraph};
pub use metrics::{full_report, fit_power_law, MetricsReport, PathMode, PowerLawFit};
pub use spectral::{gram_psd_check, verify_bound, SpectralOptions, SpectralReport};
