//! Quantum side: projector realizations of orthogonality graphs, density
//! matrices, expectation vectors, and the relative-entropy contextuality
//! measure.
//!
//! Conjugation by a unitary `U` always means `X ↦ U†XU`, for projectors and
//! states alike, so `tr(Π ρ)` is preserved when both are conjugated.

pub mod io;
mod linalg;
mod measure;
mod projectors;
pub mod realizations;
mod search;
mod state;

pub use linalg::{haar_unitary, ComplexMatrix};
pub use measure::{
    contextuality_measure_fixed, relative_entropy_distance, Convergence, MeasureOptions, MeasureResult,
    WeightedAssignment, WeightedContext,
};
pub use projectors::{expectation_vector, validate_realization, ProjectorSet, Tolerances, ValidationReport};
pub use search::{contextuality_measure_search, SearchOptions, SearchResult};
pub use state::{majorizes, spectrum, DensityMatrix, Spectrum};
