//! Fidelity and diversity metrics for generative models over embedded samples.
//!
//! Given real samples `X` and generated samples `Y` (rows of an
//! [`EmbeddingSet`]), the crate computes
//!
//! * **precision**: fraction of `Y` inside the k-NN ball manifold of `X`,
//! * **recall**: fraction of `X` inside the manifold of `Y`,
//! * **density**: average number of real balls containing each `Y_j`, over `k`,
//! * **coverage**: fraction of real balls containing at least one `Y_j`.
//!
//! The [`analytic`] module has the closed-form expectations for identical
//! real/fake distributions and a k selector, and [`simulation`] reproduces
//! the toy sanity checks (identical distributions, translation with
//! outliers, mode dropping).
//!
//! ```
//! use prdc::{compute_prdc, EmbeddingSet};
//!
//! let real = EmbeddingSet::from_scalars(&[0.0, 1.0, 3.0]).unwrap();
//! let fake = EmbeddingSet::from_scalars(&[0.5, 10.0]).unwrap();
//! let s = compute_prdc(&real, &fake, 1, 1).unwrap();
//! assert_eq!((s.precision, s.recall, s.density), (0.5, 1.0, 1.0));
//! ```

pub mod analytic;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod io;
pub mod knn;
pub mod metrics;
pub mod simulation;

pub use analytic::{expected_coverage, expected_coverage_limit, expected_density, select_k, HyperparameterChoice};
pub use embedding::EmbeddingSet;
pub use error::{Error, ErrorClass, Result};
pub use io::{load_embeddings, write_embeddings, EmbeddingFormat, Precision};
pub use knn::{kth_nn_radii, pairwise_distances, DistanceMatrix, KnnConfig, NeighborRadii};
pub use metrics::{
    compute_coverage, compute_density, compute_prdc, compute_precision, compute_recall, Evaluator, MetricConfig,
    PrdcScores,
};

/// Crate version, shared with the C bindings.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
