//! Combinatorial tools for planar Cayley graphs: presentations and coset
//! enumeration, Cayley multigraphs and balls, rotation systems and planarity,
//! covariance and orientation, group actions and contraction, ladder
//! augmentation, GF(2) separation checks and ends.

pub mod graph;
pub mod group;
pub mod presentation;
pub mod cayley;
pub mod embedding;
pub mod augment;
pub mod covariance;
pub mod actions;
pub mod cyclecut;
pub mod ends;
pub mod corpus;
pub mod export;
pub mod suites;
