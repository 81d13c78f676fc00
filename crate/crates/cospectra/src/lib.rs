//! Exact-integer arithmetic invariants for cospectral graphs.
//!
//! Everything here is exact: graphs are bit-packed adjacency relations,
//! matrices and polynomials live over arbitrary-precision integers, and
//! every congruence check computes both sides in full before reducing.
//!
//! The main pipelines:
//! - [`invariants`]: walk counts, walk matrix, eta, discriminants, and the
//!   complement characteristic polynomial (two independent routes).
//! - [`congruence`]: the mod-4 walk-count invariant, eta parity, the
//!   complement-polynomial congruence, and the matrix-lemma verifiers.
//! - [`walks`]: brute-force closed-walk enumeration with the
//!   translation/converse structure, the oracle behind the congruences.
//! - [`miner`]: corpus grouping into cospectral classes, class-level
//!   congruence suites, DGS certification, and corollary witnesses.

pub mod congruence;
pub mod error;
pub mod gen;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod miner;
pub mod numtheory;
pub mod par;
pub mod poly;
pub mod walks;

pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::IntMatrix;
pub use poly::IntPoly;
