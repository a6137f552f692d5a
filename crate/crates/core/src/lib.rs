//! # alphabound
//!
//! Spectral upper bounds for the independence number of graphs and for the
//! t-independence number of even uniform hypergraphs, together with the
//! machinery needed to trust them: equality certificates, a group-inverse
//! functional that sandwiches the Lovász theta number, and exact brute-force
//! solvers for desk-scale cross-checks.
//!
//! The library is organized bottom-up:
//!
//! - [`graph`] / [`matrix`] — graph model, parsing, dense symmetric matrices
//! - [`linalg`] — self-contained symmetric eigensolver and group inverse
//! - [`graph_bounds`] — ratio-type bounds (Hoffman, Haemers, Laplacian, and a
//!   degree-weighted ratio bound that also caps the theta number) plus
//!   certificates for when they are tight
//! - [`hypergraph`] — k-uniform hypergraph model and edge-sum tensor contractions
//! - [`tensor_eigen`] — minimum H-eigenvalue of (signed) adjacency tensors by
//!   projected gradient descent, with a grid-search oracle for tiny instances
//! - [`hypergraph_bounds`] — Hoffman-style bounds on t-independence numbers
//! - [`exact`] — exact independence numbers by branch and bound, power graphs,
//!   Shannon capacity lower bounds
//! - [`constructions`] — instance families where the bounds are provably tight
//!
//! Everything is deterministic: randomized routines take explicit seeds and
//! repeated runs produce identical results.

pub mod constructions;
pub mod error;
pub mod exact;
pub mod graph;
pub mod graph_bounds;
pub mod hypergraph;
pub mod hypergraph_bounds;
pub mod linalg;
pub mod matrix;
pub mod tensor_eigen;

pub use error::Error;
pub use graph::Graph;
pub use hypergraph::Hypergraph;
pub use matrix::SymMatrix;

/// Library result type.
pub type Result<T> = std::result::Result<T, Error>;
