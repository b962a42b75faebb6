//! Exact certificates for state-independent quantum contextuality of
//! orthogonality graphs, plus a relative-entropy contextuality measure for
//! fixed projector realizations.
//!
//! * [`graph`]: orthogonality graphs, enumeration, file format, catalog.
//! * [`lp`] and [`rational`]: exact simplex over arbitrary-precision fractions.
//! * [`coloring`]: clique number and chromatic number.
//! * [`polytope`]: STAB/QSTAB membership, fractional colourings, the S-IC test.
//! * [`quantum`]: projector realizations, expectation vectors, the measure.
//! * [`cli`]: the `ksgraph` command-line front end.

pub mod cli;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod lp;
pub mod polytope;
pub mod quantum;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use rational::Rational;
