//! Extractive summarization of legal case files.
//!
//! The pipeline turns a plain-text case file into a fixed-length extract:
//! sentence preprocessing, tf-idf weighting with sentences as the idf units,
//! k-means clustering of the sentence vectors, dual-score ranking (tf-idf
//! mass plus title similarity), and equal-quota selection from each cluster.
//! The [`rouge`] module scores candidate summaries against references with
//! ROUGE-1/2/L/W.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the crate-root
//! aliases pin the default `f64` pipeline.

pub mod cluster;
pub mod error;
pub mod preprocess;
pub mod rouge;
pub mod scalar;
pub mod summarize;
pub mod vectorize;

pub use cluster::KMeansConfig;
pub use error::{Error, Result};
pub use preprocess::{Document, RawInput, Sentence};
pub use scalar::Scalar;
pub use summarize::Summary;

/// Default-precision aliases for the generic numeric types.
pub type SparseVector = vectorize::SparseVector<f64>;
pub type TfIdfModel = vectorize::TfIdfModel<f64>;
pub type Clustering = cluster::Clustering<f64>;
pub type RankedSentence = summarize::RankedSentence<f64>;
pub type PipelineRun = summarize::PipelineRun<f64>;
pub type RougeScore = rouge::RougeScore<f64>;
pub type RougeReport = rouge::RougeReport<f64>;
